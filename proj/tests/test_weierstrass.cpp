#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fgllab/weierstrass.hpp"
#include "support/gen.hpp"

using namespace fgllab;
using testsup::Rng;

namespace {

TruncatedSeries zser(int order, const RingTag& tag, std::vector<std::pair<int, long>> coeffs) {
    std::vector<std::pair<Exponents, Coefficient>> terms;
    for (auto& [d, c] : coeffs) terms.push_back({{d}, Coefficient(tag, mpq_class(c))});
    return TruncatedSeries::from_terms({"z"}, order, tag, terms);
}

} // namespace

TEST_CASE("weierstrass degree finds the first unit coefficient") {
    RingTag t = RingTag::p_adic(3, 5);
    CHECK(*weierstrass_degree(zser(6, t, {{1, 3}, {2, 3}, {3, 1}})) == 3);
    CHECK(*weierstrass_degree(zser(6, t, {{0, 2}})) == 0);
    CHECK(!weierstrass_degree(zser(6, t, {{1, 3}, {2, 9}})).has_value());
}

TEST_CASE("preparation of (1+z)^3 - 1 over Z/3^5") {
    RingTag t = RingTag::p_adic(3, 5);
    TruncatedSeries f = zser(8, t, {{1, 3}, {2, 3}, {3, 1}});
    WeierstrassFactorization w = weierstrass_prepare(f);
    CHECK(w.degree == 3);
    CHECK(w.distinguished == zser(8, t, {{1, 3}, {2, 3}, {3, 1}}));
    CHECK(w.unit == zser(8, t, {{0, 1}}));
    CHECK(w.guaranteed_digits == 5);
    CHECK(w.unit * w.distinguished == f);
}

TEST_CASE("division by z + 2 over Z/2^5") {
    RingTag t = RingTag::p_adic(2, 5);
    TruncatedSeries h = zser(6, t, {{2, 1}});
    TruncatedSeries d = zser(6, t, {{0, 2}, {1, 1}});
    WeierstrassDivision div = weierstrass_divide(h, d);
    // z^2 = (z - 2)(z + 2) + 4
    CHECK(div.quotient == zser(6, t, {{0, 30}, {1, 1}}));
    CHECK(div.remainder == zser(6, t, {{0, 4}}));
    CHECK(div.quotient * d + div.remainder == h);
}

TEST_CASE("preparation refuses a series that is 0 mod p") {
    RingTag t = RingTag::p_adic(3, 4);
    CHECK_THROWS_AS(weierstrass_prepare(zser(6, t, {{1, 3}})), UnsupportedHeightError);
}

TEST_CASE("preparation on random inputs: multiply-back and shape") {
    Rng rng(421);
    for (long p : {2L, 3L, 5L}) {
        RingTag t = RingTag::p_adic(p, 6);
        for (int it = 0; it < 20; ++it) {
            int N = static_cast<int>(rng.pick(6, 12));
            int d = static_cast<int>(rng.pick(0, 4));
            // build p*(junk) + unit*z^d + higher junk
            std::vector<std::pair<Exponents, Coefficient>> terms;
            for (int j = 0; j < d; ++j)
                terms.push_back({{j}, Coefficient(t, mpq_class(p * rng.pick(0, 20)))});
            terms.push_back({{d}, Coefficient(t, mpq_class(1 + p * rng.pick(0, 10)))});
            for (int j = d + 1; j < N; ++j)
                terms.push_back({{j}, Coefficient(t, mpq_class(rng.pick(0, 40)))});
            TruncatedSeries f = TruncatedSeries::from_terms({"z"}, N, t, terms);

            WeierstrassFactorization w = weierstrass_prepare(f);
            CHECK(w.degree == d);
            CHECK(w.unit * w.distinguished == f);
            CHECK(w.unit.constant_term().is_unit());
            // distinguished: monic of degree d, lower coefficients in (p),
            // nothing above degree d
            CHECK(w.distinguished.coefficient_at({d}).is_one());
            for (const auto& [e, c] : w.distinguished.terms()) {
                CHECK(e[0] <= d);
                if (e[0] < d) CHECK(c.valuation(p) >= 1);
            }
        }
    }
}

TEST_CASE("division on random inputs: identity and remainder degree") {
    Rng rng(99);
    for (long p : {2L, 5L}) {
        RingTag t = RingTag::p_adic(p, 6);
        for (int it = 0; it < 20; ++it) {
            int N = static_cast<int>(rng.pick(5, 12));
            int d = static_cast<int>(rng.pick(1, 4));
            std::vector<std::pair<Exponents, Coefficient>> dterms;
            for (int j = 0; j < d; ++j)
                dterms.push_back({{j}, Coefficient(t, mpq_class(p * rng.pick(0, 8)))});
            dterms.push_back({{d}, Coefficient::one(t)});
            TruncatedSeries dist = TruncatedSeries::from_terms({"z"}, N, t, dterms);
            TruncatedSeries h = testsup::rand_series(rng, {"z"}, N, t, 8);

            WeierstrassDivision div = weierstrass_divide(h, dist);
            CHECK(div.quotient * dist + div.remainder == h);
            for (const auto& [e, c] : div.remainder.terms()) CHECK(e[0] < d);
        }
    }
}

TEST_CASE("dividing the distinguished factor by itself") {
    RingTag t = RingTag::p_adic(2, 5);
    TruncatedSeries f = zser(8, t, {{1, 2}, {2, 1}}); // [2] for the multiplicative law
    WeierstrassFactorization w = weierstrass_prepare(f);
    WeierstrassDivision div = weierstrass_divide(w.distinguished, w.distinguished);
    CHECK(div.remainder.is_zero());
    CHECK(div.quotient == zser(8, t, {{0, 1}}));
}
