#pragma once

// test support: deterministic random inputs and tiny dense-polynomial
// oracles that deliberately avoid the library's series machinery

#include <gmpxx.h>

#include <random>
#include <vector>

#include "fgllab/series.hpp"

namespace testsup {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(unsigned long seed) : eng(seed) {}
    long pick(long lo, long hi) { // inclusive
        return std::uniform_int_distribution<long>(lo, hi)(eng);
    }
};

inline fgllab::Coefficient rand_coeff(Rng& r, const fgllab::RingTag& tag) {
    using fgllab::Coefficient;
    using fgllab::RingKind;
    switch (tag.kind) {
        case RingKind::ExactInt:
            return Coefficient(tag, mpq_class(r.pick(-9, 9)));
        case RingKind::Rational:
            return Coefficient(tag, mpq_class(r.pick(-9, 9), r.pick(1, 9)));
        case RingKind::PLocalRational: {
            long den = r.pick(1, 9);
            while (den % tag.p == 0) den = r.pick(1, 9);
            return Coefficient(tag, mpq_class(r.pick(-9, 9), den));
        }
        case RingKind::PAdicTruncated: {
            mpz_class m = tag.modulus();
            mpz_class v = r.pick(0, 1 << 20);
            v %= m;
            return Coefficient(tag, mpq_class(v));
        }
    }
    return fgllab::Coefficient::zero(tag);
}

inline fgllab::TruncatedSeries rand_series(Rng& r, std::vector<std::string> vars, int order,
                                           const fgllab::RingTag& tag, int max_terms,
                                           bool zero_constant = false) {
    std::vector<std::pair<fgllab::Exponents, fgllab::Coefficient>> terms;
    int n = static_cast<int>(r.pick(1, max_terms));
    for (int t = 0; t < n; ++t) {
        fgllab::Exponents e(vars.size(), 0);
        int budget = static_cast<int>(r.pick(zero_constant ? 1 : 0, order - 1));
        for (std::size_t i = 0; i + 1 < vars.size(); ++i) {
            e[i] = static_cast<int>(r.pick(0, budget));
            budget -= e[i];
        }
        e.back() = budget;
        if (zero_constant && fgllab::total_degree(e) == 0) e.back() = 1;
        terms.push_back({e, rand_coeff(r, tag)});
    }
    return fgllab::TruncatedSeries::from_terms(std::move(vars), order, tag, terms);
}

// ---- dense univariate polynomials over Z or Z/mod (mod = 0 means Z) ----

using Poly = std::vector<mpz_class>;

inline mpz_class mod_of(const mpz_class& v, const mpz_class& mod) {
    if (mod == 0) return v;
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
    return r;
}

inline Poly poly_trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

inline Poly poly_add(const Poly& a, const Poly& b, const mpz_class& mod) {
    Poly r(std::max(a.size(), b.size()), mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    for (auto& c : r) c = mod_of(c, mod);
    return poly_trim(r);
}

inline Poly poly_mul(const Poly& a, const Poly& b, const mpz_class& mod, int trunc = -1) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    if (trunc >= 0 && r.size() > static_cast<std::size_t>(trunc))
        r.resize(static_cast<std::size_t>(trunc));
    for (auto& c : r) c = mod_of(c, mod);
    return poly_trim(r);
}

// reduce by a monic relation z^d = rhs (rhs has degree < d)
inline Poly poly_reduce(Poly a, const Poly& rhs, std::size_t d, const mpz_class& mod) {
    while (a.size() > d) {
        mpz_class top = a.back();
        std::size_t k = a.size() - 1 - d;
        a.pop_back();
        for (std::size_t i = 0; i < rhs.size(); ++i) a[k + i] = mod_of(a[k + i] + top * rhs[i], mod);
        a = poly_trim(a);
    }
    return poly_trim(a);
}

inline mpz_class binom(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

} // namespace testsup
