#pragma once

#include <optional>

#include "fgllab/series.hpp"

namespace fgllab {

// least degree whose coefficient is a unit mod p; nullopt when every stored
// coefficient is divisible by p.  Univariate, PAdicTruncated only.
std::optional<int> weierstrass_degree(const TruncatedSeries& f);

struct WeierstrassFactorization {
    TruncatedSeries unit;          // invertible series
    TruncatedSeries distinguished; // monic degree-d polynomial, lower coefficients in (p)
    int degree = 0;
    int guaranteed_digits = 0; // digits to which unit*distinguished == f is certified
};

// f = unit * distinguished over Z/p^M, truncated in z at f.order().
WeierstrassFactorization weierstrass_prepare(const TruncatedSeries& f);

struct WeierstrassDivision {
    TruncatedSeries quotient;
    TruncatedSeries remainder; // polynomial of degree < deg(distinguished)
};

// h = quotient * distinguished + remainder; distinguished must be a monic
// polynomial whose lower coefficients are divisible by p.  Exact in
// Z/p^M[z]/(z^N): plain long division, no digit loss.
WeierstrassDivision weierstrass_divide(const TruncatedSeries& h,
                                       const TruncatedSeries& distinguished);

} // namespace fgllab
