#include "fgllab/power_operation.hpp"

#include <algorithm>
#include <random>

namespace fgllab {

namespace {

const std::vector<std::string> kZX = {"z", "x"};

// [i]_G(z) inside the (z, x) universe
TruncatedSeries n_series_in_zx(const FormalGroupLaw& G, long i, int order) {
    TruncatedSeries univ = n_series(G, i).series.truncated(order);
    TruncatedSeries z = TruncatedSeries::variable(kZX, order, G.tag(), "z");
    return compose(univ, {{univ.vars()[0], z}});
}

// digits to which the x^j row of an order-N comparison is pinned down: a
// dropped term z^k x^j has k >= N - j, and z^k reduces with valuation at
// least floor(k / d).  The constant-relation backend reduces term by term,
// so nothing moves between rows and every row keeps the full k digits.
int row_digits(const PreparedQuotientRing& ring, int order, int xdeg) {
    if (ring.backend() == PreparedQuotientRing::Backend::ConstantQuotient)
        return ring.constant_valuation();
    int slack = std::max(0, order - xdeg);
    return std::min(ring.tag().digits, slack / ring.degree());
}

int max_x_degree(const TruncatedSeries& f) {
    int j = 0;
    for (const auto& [e, c] : f.terms()) j = std::max(j, e[1]);
    return j;
}

} // namespace

TruncatedSeries lubin_product(const FormalGroupLaw& G, long p, Precision prec) {
    if (!is_prime(p))
        throw DomainError("lubin_product: p must be prime, got " + std::to_string(p));
    const int N = prec.order;
    if (G.order() < N)
        throw DomainError("law is truncated at order " + std::to_string(G.order()) +
                          ", below the requested order " + std::to_string(N));
    TruncatedSeries x = TruncatedSeries::variable(kZX, N, G.tag(), "x");
    TruncatedSeries prod = x; // the i = 0 factor: x +_G [0](z) = x
    for (long i = 1; i < p; ++i) prod = prod * G.sum_of(x, n_series_in_zx(G, i, N));
    return prod;
}

TotalPowerOperation make_power_operation(long p, const FormalGroupLaw& G,
                                         const TruncatedSeries& image_of_x,
                                         CoefficientAction action, Precision prec,
                                         std::string name) {
    if (!is_prime(p))
        throw DomainError("make_power_operation: p must be prime, got " + std::to_string(p));
    if (!image_of_x.constant_term().is_zero())
        throw DomainError("image of x must have zero constant term");
    for (const auto& v : image_of_x.vars())
        if (v != "z" && v != "x")
            throw DomainError("image of x must live in (z, x), found variable " + v);

    const int M = prec.digits.value_or(8);
    const int ord = std::min(prec.order, image_of_x.order());
    TruncatedSeries img =
        image_of_x.truncated(ord).extended(kZX).retagged(RingTag::p_adic(p, M));

    // the candidate must land in the transfer quotient without complaint
    PreparedQuotientRing tq = build_transfer_quotient(G, p, {ord, M});
    (void)tq.reduce(img);

    return {p, G, action, std::move(img), {ord, M}, std::move(name)};
}

TruncatedSeries apply_power_operation(const TotalPowerOperation& psi, const TruncatedSeries& f) {
    if (f.vars() != std::vector<std::string>{"x"})
        throw DomainError("apply_power_operation expects a univariate series in x");

    const int Mpsi = psi.prec.digits.value_or(8);
    int M = Mpsi;
    if (f.tag().kind == RingKind::PAdicTruncated) {
        if (f.tag().p != psi.p)
            throw DomainError("series is p-adic at a different prime than the operation");
        M = std::min(M, f.tag().digits);
    }
    const RingTag t = RingTag::p_adic(psi.p, M);
    const int ord = std::min(psi.image_of_x.order(), f.order());

    // identity coefficient action, then x -> image, then reduce
    TruncatedSeries sub =
        compose(f.truncated(ord).retagged(t), {{"x", psi.image_of_x.truncated(ord).retagged(t)}});
    return build_transfer_quotient(psi.law, psi.p, {ord, M}).reduce(sub);
}

AndoVerdict ando_check(const FormalGroupLaw& G, long p, const TotalPowerOperation& psi,
                       Precision prec) {
    if (psi.p != p)
        throw DomainError("candidate was built for p = " + std::to_string(psi.p));
    const int M = std::min(prec.digits.value_or(8), psi.prec.digits.value_or(8));
    const int N = std::min(prec.order, psi.image_of_x.order());
    const RingTag t = RingTag::p_adic(p, M);

    PreparedQuotientRing tq = build_transfer_quotient(G, p, {N, M});
    TruncatedSeries lhs = tq.reduce(lubin_product(G.to_p_adic(p, M), p, {N, M}));
    TruncatedSeries rhs = tq.reduce(psi.image_of_x.truncated(N).retagged(t));

    AndoVerdict v;
    v.order = N;
    v.digits = row_digits(tq, N, std::max(max_x_degree(lhs), max_x_degree(rhs)));

    TruncatedSeries diff = lhs - rhs;
    for (const auto& [e, c] : diff.terms()) {
        // a difference below the row's certified digits is a real mismatch;
        // anything at or above them could be truncation noise
        if (c.valuation(p) < row_digits(tq, N, e[1])) {
            v.status = AndoVerdict::Status::Violated;
            v.witness = AndoWitness{monomial_str(diff.vars(), e), lhs.coefficient_at(e),
                                    rhs.coefficient_at(e)};
            return v;
        }
    }
    v.status = diff.is_zero() && v.digits >= 1 ? AndoVerdict::Status::Satisfied
                                               : AndoVerdict::Status::Inconclusive;
    return v;
}

TotalPowerOperation adams_candidate(const FormalGroupLaw& G, long p, Precision prec) {
    const int ord = std::min(prec.order, G.order());
    TruncatedSeries img = n_series(G, p).series.truncated(ord);
    return make_power_operation(p, G, img, CoefficientAction::Identity,
                                {ord, prec.digits.value_or(8)}, "adams");
}

TotalPowerOperation frobenius_candidate(const FormalGroupLaw& G, long p, Precision prec) {
    const RingTag zz = RingTag::exact_int();
    TruncatedSeries img = TruncatedSeries::from_terms(
        kZX, prec.order, zz,
        {{{0, static_cast<int>(p)}, Coefficient::one(zz)},
         {{static_cast<int>(p) - 1, 1}, Coefficient(zz, mpq_class(-1))}});
    return make_power_operation(p, G, img, CoefficientAction::Identity, prec, "frobenius");
}

TotalPowerOperation identity_candidate(const FormalGroupLaw& G, long p, Precision prec) {
    TruncatedSeries img =
        TruncatedSeries::variable({"x"}, prec.order, RingTag::exact_int(), "x");
    return make_power_operation(p, G, img, CoefficientAction::Identity, prec,
                                "identity-control");
}

RingMapReport check_multiplicativity_mod_transfer(const TotalPowerOperation& psi, int samples,
                                                  unsigned long seed) {
    RingMapReport rep;
    rep.samples = samples;
    const int M = psi.prec.digits.value_or(8);
    const int N = psi.prec.order;
    const RingTag t = RingTag::p_adic(psi.p, M);
    PreparedQuotientRing tq = build_transfer_quotient(psi.law, psi.p, {N, M});

    std::mt19937_64 eng(seed);
    mpz_class mod = t.modulus();
    auto random_poly = [&]() {
        std::vector<std::pair<Exponents, Coefficient>> terms;
        int deg = static_cast<int>(eng() % 4);
        for (int k = 0; k <= deg; ++k) {
            mpz_class c = static_cast<unsigned long>(eng());
            terms.push_back({{k}, Coefficient(t, mpq_class(c % mod))});
        }
        return TruncatedSeries::from_terms({"x"}, N, t, terms);
    };

    for (int s = 0; s < samples; ++s) {
        TruncatedSeries f = random_poly(), g = random_poly();
        bool ok = apply_power_operation(psi, f * g) ==
                  tq.reduce(apply_power_operation(psi, f) * apply_power_operation(psi, g));
        ok = ok && apply_power_operation(psi, f + g) ==
                       apply_power_operation(psi, f) + apply_power_operation(psi, g);
        if (!ok) ++rep.failures;
    }
    return rep;
}

InvarianceReport fpx_invariance_check(const FormalGroupLaw& G, long p, Precision prec) {
    if (!is_prime(p))
        throw DomainError("fpx_invariance_check: p must be prime, got " + std::to_string(p));
    const int M = prec.digits.value_or(8);
    const int N = prec.order;

    InvarianceReport rep;
    rep.p = p;
    if (p == 2) { // the unit group is trivial
        rep.digits = M;
        return rep;
    }

    PreparedQuotientRing ring = [&] {
        try {
            return build_bcp_ring(G, p, {N, M});
        } catch (const UnsupportedHeightError&) {
            return build_transfer_quotient(G, p, {N, M});
        }
    }();
    rep.constant_fallback = ring.backend() == PreparedQuotientRing::Backend::ConstantQuotient;

    FormalGroupLaw Gp = G.to_p_adic(p, M);
    TruncatedSeries prod = lubin_product(Gp, p, {N, M});
    TruncatedSeries base = ring.reduce(prod);
    int jmax = max_x_degree(base);

    for (long j = 2; j < p; ++j) {
        rep.checked.push_back(j);
        TruncatedSeries moved = ring.reduce(compose(prod, {{"z", n_series_in_zx(Gp, j, N)}}));
        jmax = std::max(jmax, max_x_degree(moved));
        TruncatedSeries diff = moved - base;
        for (const auto& [e, c] : diff.terms()) {
            if (c.valuation(p) < row_digits(ring, N, e[1])) {
                rep.failures.push_back(j);
                break;
            }
        }
    }
    rep.digits = row_digits(ring, N, jmax);
    return rep;
}

TwoGapReport multiplicative_two_gap(Precision prec) {
    const int M = prec.digits.value_or(8);
    const int N = std::max(prec.order, 4); // room for the degree-3 product
    const RingTag t = RingTag::p_adic(2, M);
    const RingTag zz = RingTag::exact_int();

    FormalGroupLaw mult = FormalGroupLaw::multiplicative(N);
    FormalGroupLaw m2 = mult.to_p_adic(2, M);
    PreparedQuotientRing tq = build_transfer_quotient(mult, 2, {N, M});

    TwoGapReport g{TruncatedSeries::zero(kZX, N, t), TruncatedSeries::zero(kZX, N, t),
                   Coefficient(t, mpq_class(-1)),
                   TruncatedSeries::from_terms({"z"}, N, zz,
                                               {{{0}, Coefficient::one(zz)},
                                                {{1}, Coefficient::one(zz)}}),
                   false};
    g.product_reduced = tq.reduce(lubin_product(m2, 2, {N, M}));
    TruncatedSeries x2 = TruncatedSeries::variable(kZX, N, t, "x");
    g.adams_reduced = tq.reduce(compose(n_series(m2, 2).series, {{"x", x2}}));

    // x*(x +_G z) = (1+z)*((1+x)^2 - 1) - x*<2>(z), an identity over Z
    TruncatedSeries xz = TruncatedSeries::variable(kZX, N, zz, "x");
    TruncatedSeries zzv = TruncatedSeries::variable(kZX, N, zz, "z");
    TruncatedSeries one = TruncatedSeries::constant(kZX, N, Coefficient::one(zz));
    TruncatedSeries adamsz = compose(n_series(mult, 2).series, {{"x", xz}});
    TruncatedSeries dividedz = compose(divided_p_series(mult, 2), {{"x", zzv}});
    TruncatedSeries residual =
        lubin_product(mult, 2, {N, {}}) - ((one + zzv) * adamsz - xz * dividedz);
    g.exact_identity_holds = residual.is_zero();
    return g;
}

} // namespace fgllab
