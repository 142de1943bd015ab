#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "fgllab/errors.hpp"

namespace fgllab {

enum class RingKind {
    ExactInt,       // Z
    Rational,       // Q
    PLocalRational, // Z localized at p: denominators coprime to p
    PAdicTruncated, // Z/p^M, canonical representatives in [0, p^M)
};

struct RingTag {
    RingKind kind = RingKind::ExactInt;
    long p = 0;          // PLocalRational, PAdicTruncated
    int digits = 0;      // M, PAdicTruncated only

    static RingTag exact_int() { return {RingKind::ExactInt, 0, 0}; }
    static RingTag rational() { return {RingKind::Rational, 0, 0}; }
    static RingTag p_local(long p) { return {RingKind::PLocalRational, p, 0}; }
    static RingTag p_adic(long p, int digits) { return {RingKind::PAdicTruncated, p, digits}; }

    bool operator==(const RingTag&) const = default;

    bool is_exact() const { return kind != RingKind::PAdicTruncated; }
    mpz_class modulus() const; // p^digits, PAdicTruncated only
    std::string name() const;
};

// One coefficient together with the ring it lives in.  All arithmetic is
// exact; PAdicTruncated values are kept canonical in [0, p^M).
class Coefficient {
public:
    Coefficient() : tag_(RingTag::exact_int()), v_(0) {}
    Coefficient(RingTag tag, mpq_class v);

    static Coefficient zero(const RingTag& t) { return {t, mpq_class(0)}; }
    static Coefficient one(const RingTag& t) { return {t, mpq_class(1)}; }
    static Coefficient from_int(const RingTag& t, long n) { return {t, mpq_class(n)}; }

    const RingTag& tag() const { return tag_; }
    const mpq_class& value() const { return v_; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_unit() const;

    Coefficient operator-() const;
    Coefficient operator+(const Coefficient& o) const;
    Coefficient operator-(const Coefficient& o) const;
    Coefficient operator*(const Coefficient& o) const;

    Coefficient inverse() const; // throws NotAUnitError

    // quotient staying inside the ring, or nullopt.  For PAdicTruncated a
    // division by p^v is exact only mod p^(M-v); the caller receives the
    // canonical representative and the digit loss.
    std::optional<Coefficient> divide_exact(const Coefficient& den, int* digits_lost = nullptr) const;

    // p-adic valuation; INT_MAX for zero
    int valuation(long p) const;

    Coefficient retag(const RingTag& to) const; // throws on invalid conversion

    bool operator==(const Coefficient& o) const { return tag_ == o.tag_ && v_ == o.v_; }

    std::string str() const; // "7", "-3/4"

private:
    RingTag tag_;
    mpq_class v_;

    void normalize();
};

mpz_class pow_z(const mpz_class& base, unsigned long e);
int valuation_z(const mpz_class& n, long p); // INT_MAX for 0

} // namespace fgllab
