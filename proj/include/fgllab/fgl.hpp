#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fgllab/series.hpp"

namespace fgllab {

bool is_prime(long n);

enum class FglKind { Additive, Multiplicative, FromLog, Custom };

struct AxiomIssue {
    std::string axiom; // "unit", "commutativity", "associativity"
    std::vector<std::string> vars;
    Exponents monomial; // first failing monomial, graded-lex
    std::string lhs, rhs;
};

struct AxiomReport {
    bool unit_ok = false;
    bool commutative_ok = false;
    bool associative_ok = false;
    std::vector<AxiomIssue> issues;
    bool all_ok() const { return unit_ok && commutative_ok && associative_ok; }
};

// pass/fail per axiom for a candidate law F(x, y), checked to F's truncation
// order
AxiomReport check_axioms(const TruncatedSeries& F);

// A one-dimensional formal group law F(x, y) truncated at a fixed order.
// Construction verifies the axioms, so instances always hold a law (to the
// declared truncation).
class FormalGroupLaw {
public:
    static FormalGroupLaw additive(int order, RingTag tag = RingTag::exact_int());
    static FormalGroupLaw multiplicative(int order, RingTag tag = RingTag::exact_int());
    // log = x + c2 x^2 + ... over an exact ring; F = exp(log x + log y)
    static FormalGroupLaw from_log(const TruncatedSeries& log, std::string name = "from-log");
    static FormalGroupLaw custom(const TruncatedSeries& F, std::string name = "custom");

    const TruncatedSeries& series() const { return F_; }
    FglKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const std::optional<TruncatedSeries>& log() const { return log_; }
    int order() const { return F_.order(); }
    const RingTag& tag() const { return F_.tag(); }

    // coefficient conversions; FromLog provenance travels along untouched
    FormalGroupLaw retagged(const RingTag& to) const;
    FormalGroupLaw to_p_adic(long p, int digits) const;
    FormalGroupLaw p_localized(long p) const;

    // F(a, b) for series in a common universe
    TruncatedSeries sum_of(const TruncatedSeries& a, const TruncatedSeries& b) const;

private:
    FormalGroupLaw(TruncatedSeries F, FglKind kind, std::string name,
                   std::optional<TruncatedSeries> log)
        : F_(std::move(F)), kind_(kind), name_(std::move(name)), log_(std::move(log)) {}

    TruncatedSeries F_;
    FglKind kind_;
    std::string name_;
    std::optional<TruncatedSeries> log_;
};

struct NSeries {
    long n;
    TruncatedSeries series; // univariate in x, zero constant term, linear coefficient n
};

// [n](x): n-fold formal sum; negative n via the formal inverse; |n| > 8 uses
// a square-and-add chain
NSeries n_series(const FormalGroupLaw& G, long n);

// iota(x) with F(x, iota(x)) = 0
TruncatedSeries formal_inverse(const FormalGroupLaw& G);

// fold F over the list; the empty sum is 0
TruncatedSeries formal_sum(const FormalGroupLaw& G, const std::vector<TruncatedSeries>& terms);

// [p](x) / x, exact since [p](0) = 0
TruncatedSeries divided_p_series(const FormalGroupLaw& G, long p);

// x + x^(p^h)/p + x^(p^2h)/p^2 + ... over Rational, truncated at order
TruncatedSeries honda_log(long p, int height, int order);

} // namespace fgllab
