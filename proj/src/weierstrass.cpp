#include "fgllab/weierstrass.hpp"

#include <vector>

namespace fgllab {

static void require_univariate_padic(const TruncatedSeries& f, const char* who) {
    if (f.vars().size() != 1)
        throw DomainError(std::string(who) + " needs a univariate series");
    if (f.tag().kind != RingKind::PAdicTruncated)
        throw DomainError(std::string(who) + " needs a PAdicTruncated coefficient ring, got " +
                          f.tag().name());
}

std::optional<int> weierstrass_degree(const TruncatedSeries& f) {
    require_univariate_padic(f, "weierstrass_degree");
    for (const auto& [e, c] : f.terms())
        if (c.is_unit()) return e[0];
    return std::nullopt;
}

static std::vector<Coefficient> to_dense(const TruncatedSeries& f) {
    std::vector<Coefficient> v(static_cast<std::size_t>(f.order()),
                               Coefficient::zero(f.tag()));
    for (const auto& [e, c] : f.terms()) v[static_cast<std::size_t>(e[0])] = c;
    return v;
}

static TruncatedSeries from_dense(const std::vector<Coefficient>& v,
                                  const TruncatedSeries& like, int order) {
    std::vector<std::pair<Exponents, Coefficient>> terms;
    for (std::size_t i = 0; i < v.size() && static_cast<int>(i) < order; ++i)
        if (!v[i].is_zero()) terms.push_back({{static_cast<int>(i)}, v[i]});
    return TruncatedSeries::from_terms(like.vars(), order, like.tag(), terms);
}

// split f = low + z^d * high with deg(low) < d
static void split_at(const TruncatedSeries& f, int d, TruncatedSeries& low,
                     TruncatedSeries& high) {
    std::vector<std::pair<Exponents, Coefficient>> lo, hi;
    for (const auto& [e, c] : f.terms()) {
        if (e[0] < d)
            lo.push_back({e, c});
        else
            hi.push_back({{e[0] - d}, c});
    }
    low = TruncatedSeries::from_terms(f.vars(), f.order(), f.tag(), lo);
    high = TruncatedSeries::from_terms(f.vars(), f.order(), f.tag(), hi);
}

WeierstrassFactorization weierstrass_prepare(const TruncatedSeries& f) {
    require_univariate_padic(f, "weierstrass_prepare");
    auto deg = weierstrass_degree(f);
    if (!deg)
        throw UnsupportedHeightError(
            "no unit coefficient below order " + std::to_string(f.order()) +
            ": the series is 0 mod p to the working truncation");
    const int d = *deg;
    const int M = f.tag().digits;
    const long p = f.tag().p;

    TruncatedSeries low = f, high = f;
    split_at(f, d, low, high);
    TruncatedSeries high_inv = high.invert_unit();

    // solve z^d = q*f + r by iteration; the shifted residue gains one factor
    // of p per round, so at most M rounds are needed
    TruncatedSeries h =
        d == 0 ? TruncatedSeries::constant(f.vars(), f.order(), Coefficient::one(f.tag()))
               : TruncatedSeries::from_terms(f.vars(), f.order(), f.tag(),
                                             {{{d}, Coefficient::one(f.tag())}});
    TruncatedSeries q = TruncatedSeries::zero(f.vars(), f.order(), f.tag());
    for (int round = 0; round <= M; ++round) {
        TruncatedSeries r_part = h, s_part = h;
        split_at(h, d, r_part, s_part);
        if (s_part.is_zero()) break;
        TruncatedSeries qk = s_part * high_inv;
        q = q + qk;
        h = h - qk * f;
    }
    {
        TruncatedSeries r_check = h, s_check = h;
        split_at(h, d, r_check, s_check);
        if (!s_check.is_zero())
            throw DomainError("weierstrass_prepare failed to converge"); // unreachable
    }

    TruncatedSeries zd = d == 0
        ? TruncatedSeries::constant(f.vars(), f.order(), Coefficient::one(f.tag()))
        : TruncatedSeries::from_terms(f.vars(), f.order(), f.tag(),
                                      {{{d}, Coefficient::one(f.tag())}});
    TruncatedSeries distinguished = zd - h;
    for (const auto& [e, c] : distinguished.terms())
        if (e[0] < d && c.valuation(p) < 1)
            throw DomainError("weierstrass_prepare: lower coefficient not in (p)"); // unreachable

    WeierstrassFactorization out{q.invert_unit(), distinguished, d,
                                 M - f.coefficient_at({d}).valuation(p)};
    return out;
}

WeierstrassDivision weierstrass_divide(const TruncatedSeries& h,
                                       const TruncatedSeries& distinguished) {
    require_univariate_padic(h, "weierstrass_divide");
    if (!(h.tag() == distinguished.tag()))
        throw RingMismatchError("weierstrass_divide: ring mismatch");
    if (h.vars() != distinguished.vars())
        throw VariableMismatchError("weierstrass_divide: variable mismatch");

    int d = -1;
    for (const auto& [e, c] : distinguished.terms()) d = std::max(d, e[0]);
    if (d < 0) throw DomainError("weierstrass_divide: zero divisor polynomial");
    if (!distinguished.coefficient_at({d}).is_one())
        throw DomainError("weierstrass_divide: divisor is not monic");
    const long p = h.tag().p;
    for (const auto& [e, c] : distinguished.terms())
        if (e[0] < d && c.valuation(p) < 1)
            throw DomainError("weierstrass_divide: divisor is not distinguished");

    const int N = h.order();
    std::vector<Coefficient> rem = to_dense(h);
    std::vector<Coefficient> quo(static_cast<std::size_t>(N), Coefficient::zero(h.tag()));
    for (int j = N - 1; j >= d; --j) {
        Coefficient c = rem[static_cast<std::size_t>(j)];
        if (c.is_zero()) continue;
        quo[static_cast<std::size_t>(j - d)] = c;
        for (const auto& [e, pc] : distinguished.terms())
            rem[static_cast<std::size_t>(j - d + e[0])] =
                rem[static_cast<std::size_t>(j - d + e[0])] - c * pc;
    }
    return {from_dense(quo, h, N), from_dense(rem, h, N)};
}

} // namespace fgllab
