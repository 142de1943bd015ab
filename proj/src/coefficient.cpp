#include "fgllab/coefficient.hpp"

#include <climits>

namespace fgllab {

mpz_class pow_z(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

int valuation_z(const mpz_class& n, long p) {
    if (n == 0) return INT_MAX;
    mpz_class rest;
    return static_cast<int>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), mpz_class(p).get_mpz_t()));
}

mpz_class RingTag::modulus() const {
    if (kind != RingKind::PAdicTruncated)
        throw DomainError("modulus() only defined for PAdicTruncated");
    return pow_z(mpz_class(p), static_cast<unsigned long>(digits));
}

std::string RingTag::name() const {
    switch (kind) {
        case RingKind::ExactInt: return "ExactInt";
        case RingKind::Rational: return "Rational";
        case RingKind::PLocalRational: return "PLocalRational(" + std::to_string(p) + ")";
        case RingKind::PAdicTruncated:
            return "PAdicTruncated(" + std::to_string(p) + "," + std::to_string(digits) + ")";
    }
    return "?";
}

Coefficient::Coefficient(RingTag tag, mpq_class v) : tag_(tag), v_(std::move(v)) {
    v_.canonicalize();
    normalize();
}

void Coefficient::normalize() {
    switch (tag_.kind) {
        case RingKind::ExactInt:
            if (v_.get_den() != 1)
                throw DomainError("non-integer value in ExactInt ring: " + v_.get_str());
            break;
        case RingKind::Rational:
            break;
        case RingKind::PLocalRational:
            if (tag_.p < 2) throw DomainError("PLocalRational needs a prime p");
            if (mpz_divisible_p(v_.get_den().get_mpz_t(), mpz_class(tag_.p).get_mpz_t()))
                throw DomainError("denominator divisible by p=" + std::to_string(tag_.p) +
                                  " in PLocalRational: " + v_.get_str());
            break;
        case RingKind::PAdicTruncated: {
            if (tag_.p < 2 || tag_.digits < 1)
                throw DomainError("PAdicTruncated needs a prime p and digits >= 1");
            mpz_class m = tag_.modulus();
            mpz_class num = v_.get_num();
            if (v_.get_den() != 1) {
                // fold a p-coprime denominator into the representative
                mpz_class den = v_.get_den();
                mpz_class inv;
                if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()))
                    throw DomainError("denominator not invertible mod " + m.get_str() +
                                      ": " + v_.get_str());
                num *= inv;
            }
            mpz_class r;
            mpz_mod(r.get_mpz_t(), num.get_mpz_t(), m.get_mpz_t());
            v_ = mpq_class(r);
            break;
        }
    }
}

bool Coefficient::is_unit() const {
    switch (tag_.kind) {
        case RingKind::ExactInt: return v_ == 1 || v_ == -1;
        case RingKind::Rational: return v_ != 0;
        case RingKind::PLocalRational:
            return v_ != 0 &&
                   !mpz_divisible_p(v_.get_num().get_mpz_t(), mpz_class(tag_.p).get_mpz_t());
        case RingKind::PAdicTruncated: {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), v_.get_num().get_mpz_t(), mpz_class(tag_.p).get_mpz_t());
            return g == 1;
        }
    }
    return false;
}

Coefficient Coefficient::operator-() const { return {tag_, -v_}; }

static void require_same_ring(const RingTag& a, const RingTag& b) {
    if (!(a == b))
        throw RingMismatchError("ring mismatch: " + a.name() + " vs " + b.name());
}

Coefficient Coefficient::operator+(const Coefficient& o) const {
    require_same_ring(tag_, o.tag_);
    return {tag_, v_ + o.v_};
}

Coefficient Coefficient::operator-(const Coefficient& o) const {
    require_same_ring(tag_, o.tag_);
    return {tag_, v_ - o.v_};
}

Coefficient Coefficient::operator*(const Coefficient& o) const {
    require_same_ring(tag_, o.tag_);
    return {tag_, v_ * o.v_};
}

Coefficient Coefficient::inverse() const {
    if (!is_unit())
        throw NotAUnitError("not a unit in " + tag_.name() + ": " + str());
    if (tag_.kind == RingKind::PAdicTruncated) {
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), v_.get_num().get_mpz_t(), tag_.modulus().get_mpz_t());
        return {tag_, mpq_class(inv)};
    }
    return {tag_, 1 / v_};
}

std::optional<Coefficient> Coefficient::divide_exact(const Coefficient& den, int* digits_lost) const {
    require_same_ring(tag_, den.tag_);
    if (digits_lost) *digits_lost = 0;
    if (den.is_zero()) return std::nullopt;
    switch (tag_.kind) {
        case RingKind::ExactInt: {
            mpq_class q = v_ / den.v_;
            if (q.get_den() != 1) return std::nullopt;
            return Coefficient(tag_, q);
        }
        case RingKind::Rational:
            return Coefficient(tag_, v_ / den.v_);
        case RingKind::PLocalRational: {
            mpq_class q = v_ / den.v_;
            if (mpz_divisible_p(q.get_den().get_mpz_t(), mpz_class(tag_.p).get_mpz_t()))
                return std::nullopt;
            return Coefficient(tag_, q);
        }
        case RingKind::PAdicTruncated: {
            int vd = den.valuation(tag_.p);
            int vn = valuation(tag_.p);
            if (vn < vd) return std::nullopt;
            if (vd == 0) return Coefficient(tag_, v_ * den.inverse().v_);
            // strip p^vd from both sides; the quotient is only determined
            // mod p^(M - vd)
            mpz_class pv = pow_z(mpz_class(tag_.p), static_cast<unsigned long>(vd));
            mpz_class n = v_.get_num() / pv;
            mpz_class d = den.v_.get_num() / pv;
            RingTag lower = RingTag::p_adic(tag_.p, tag_.digits - vd);
            if (lower.digits < 1) return std::nullopt;
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), lower.modulus().get_mpz_t());
            mpz_class q;
            mpz_mod(q.get_mpz_t(), mpz_class(n * inv).get_mpz_t(), lower.modulus().get_mpz_t());
            if (digits_lost) *digits_lost = vd;
            return Coefficient(tag_, mpq_class(q));
        }
    }
    return std::nullopt;
}

int Coefficient::valuation(long p) const {
    if (v_ == 0) return INT_MAX;
    int vn = valuation_z(v_.get_num(), p);
    int vd = valuation_z(v_.get_den(), p);
    return vn - vd;
}

Coefficient Coefficient::retag(const RingTag& to) const {
    if (to == tag_) return *this;
    switch (to.kind) {
        case RingKind::ExactInt:
            if (v_.get_den() != 1)
                throw DomainError("cannot retag non-integer " + str() + " to ExactInt");
            if (tag_.kind == RingKind::PAdicTruncated)
                throw DomainError("cannot lift PAdicTruncated back to ExactInt");
            return {to, v_};
        case RingKind::Rational:
            if (tag_.kind == RingKind::PAdicTruncated)
                throw DomainError("cannot lift PAdicTruncated to Rational");
            return {to, v_};
        case RingKind::PLocalRational: {
            if (tag_.kind == RingKind::PAdicTruncated)
                throw DomainError("cannot lift PAdicTruncated to PLocalRational");
            if (mpz_divisible_p(v_.get_den().get_mpz_t(), mpz_class(to.p).get_mpz_t()))
                throw NonIntegralError("denominator divisible by p=" + std::to_string(to.p) +
                                           ": " + str(),
                                       "");
            return {to, v_};
        }
        case RingKind::PAdicTruncated: {
            if (tag_.kind == RingKind::PAdicTruncated) {
                if (tag_.p != to.p)
                    throw DomainError("cannot move between PAdicTruncated primes");
                if (to.digits > tag_.digits)
                    throw PrecisionError("cannot raise p-adic precision from " +
                                             std::to_string(tag_.digits) + " to " +
                                             std::to_string(to.digits),
                                         to.digits);
                return {to, v_};
            }
            if (mpz_divisible_p(v_.get_den().get_mpz_t(), mpz_class(to.p).get_mpz_t()))
                throw NonIntegralError("denominator divisible by p=" + std::to_string(to.p) +
                                           ": " + str(),
                                       "");
            return {to, v_};
        }
    }
    throw DomainError("bad retag target");
}

std::string Coefficient::str() const { return v_.get_str(); }

} // namespace fgllab
