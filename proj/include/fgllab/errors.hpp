#pragma once

#include <stdexcept>
#include <string>

namespace fgllab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// operands live in different coefficient rings
struct RingMismatchError : Error {
    using Error::Error;
};

// operands declare different variable universes
struct VariableMismatchError : Error {
    using Error::Error;
};

struct NotAUnitError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

// a result left the coefficient ring (e.g. denominator divisible by p)
struct NonIntegralError : Error {
    NonIntegralError(std::string msg, std::string monomial)
        : Error(std::move(msg)), offending_monomial(std::move(monomial)) {}
    std::string offending_monomial;
};

// the requested computation needs more p-adic digits than carried
struct PrecisionError : Error {
    PrecisionError(std::string msg, int needed_digits)
        : Error(std::move(msg)), needed_digits(needed_digits) {}
    int needed_digits;
};

// p-series has no unit coefficient within the truncation order
struct UnsupportedHeightError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

} // namespace fgllab
