#pragma once

#include <optional>
#include <vector>

#include "fgllab/fgl.hpp"
#include "fgllab/weierstrass.hpp"

namespace fgllab {

// Normal-form model of Z/p^M [[z]] / (g) for a defining relation g that is
// either the p-series [p](z) (the cyclic-group model) or the divided
// p-series <p>(z) (the transfer quotient).
//
// Two backends:
//   WeierstrassPoly   g has a unit coefficient at some degree d; (g) = (P)
//                     for the distinguished polynomial P of the preparation,
//                     and the quotient is the free module on 1, z, ..., z^(d-1).
//   ConstantQuotient  g is the constant p^k * unit (additive law: <p> = p);
//                     reduction drops coefficients to Z/p^k.
//
// Precision has two distinct layers, kept separate on purpose:
//   * arithmetic on normal forms (polynomials of degree < d) is exact mod p^M;
//   * mapping an order-N series into the quotient is faithful only to
//     ideal_digits() = min(M, N/d) p-adic digits, because a dropped tail term
//     z^k reduces to something divisible by p^floor(k/d).
class PreparedQuotientRing {
public:
    enum class Backend { WeierstrassPoly, ConstantQuotient };
    enum class Model { PSeries, DividedPSeries };

    long p() const { return p_; }
    int order() const { return order_; }
    const RingTag& tag() const { return tag_; }
    Backend backend() const { return backend_; }
    Model model() const { return model_; }
    const TruncatedSeries& relation() const { return relation_; }
    const std::string& var() const { return var_; }

    // WeierstrassPoly only
    int degree() const;
    const TruncatedSeries& distinguished() const;
    // h with d = p^h (PSeries model) or d = p^h - 1 (DividedPSeries); nullopt
    // when the detected degree is not of that shape
    std::optional<int> detected_height() const;

    // ConstantQuotient only: the relation constant is unit * p^k
    int constant_valuation() const;

    // digits to which statements about order-N series hold in the quotient
    int ideal_digits() const { return ideal_digits_; }

    // canonical representative.  Input shares the ring tag and contains the
    // ring variable; reduction is applied per term to the z-exponent.  The
    // ConstantQuotient backend instead retags coefficients to Z/p^k.
    TruncatedSeries reduce(const TruncatedSeries& f) const;

    friend PreparedQuotientRing build_bcp_ring(const FormalGroupLaw& G, long p, Precision prec);
    friend PreparedQuotientRing build_transfer_quotient(const FormalGroupLaw& G, long p,
                                                        Precision prec);

private:
    PreparedQuotientRing() = default;

    long p_ = 0;
    int order_ = 0;
    RingTag tag_;
    Backend backend_ = Backend::WeierstrassPoly;
    Model model_ = Model::PSeries;
    std::string var_ = "z";
    TruncatedSeries relation_ = TruncatedSeries::zero({"z"}, 1, RingTag::exact_int());
    int ideal_digits_ = 0;

    // WeierstrassPoly
    int degree_ = 0;
    TruncatedSeries distinguished_ = TruncatedSeries::zero({"z"}, 1, RingTag::exact_int());
    // rows_[k] = the normal form of z^k, as d coefficients
    std::vector<std::vector<Coefficient>> rows_;

    // ConstantQuotient
    int constant_valuation_ = 0;

    std::vector<Coefficient> row_for(int k) const;
};

// quotient by [p](z); requires a unit coefficient within the truncation order
// (finite height).  The additive law has [p](z) = p*z with no unit
// coefficient anywhere, so it is rejected: work in the transfer quotient
// instead.
PreparedQuotientRing build_bcp_ring(const FormalGroupLaw& G, long p, Precision prec);

// quotient by <p>(z) = [p](z)/z; constant <p> (additive law) gets the
// ConstantQuotient backend.
PreparedQuotientRing build_transfer_quotient(const FormalGroupLaw& G, long p, Precision prec);

// the ideal generated by <p>(z) inside the cyclic-group model
struct TransferIdeal {
    TruncatedSeries generator; // constant term p
    PreparedQuotientRing ambient;
};

TransferIdeal transfer_ideal(const FormalGroupLaw& G, long p, Precision prec);

// Module basis of the fixed points of z |-> [i](z), i running over the units
// mod p, acting on the cyclic-group model.  Solved as exact linear algebra
// over Z/p^M against a generator of the (cyclic) unit group.
struct FpxInvariants {
    std::vector<TruncatedSeries> basis; // normal forms, graded-lex sorted
    long generator = 1;                 // primitive root used (1 when p = 2)
    int certified_digits = 0;           // see PreparedQuotientRing precision note
    std::vector<int> pivot_valuations;  // nonzero diagonal valuations hit
};

FpxInvariants fpx_invariants(const PreparedQuotientRing& ring, const FormalGroupLaw& G);

// Membership of f in (z), in (<p>(z)) and in ([p](z)) over a torsion-free
// coefficient ring, all to the truncation order of f.  Membership in the
// first two forces membership in the third with an explicit witness:
// f = <p>*b and b(0)*p = f(0) = 0 give b = z*q, so f = q*[p].
struct IntersectionWitness {
    bool in_z = false;
    bool in_divided = false;
    bool in_p_series = false;
    std::optional<int> failing_degree;  // first degree where division left the ring
    std::optional<TruncatedSeries> q;   // f = q * [p](z) on stored data
    int order = 0;
};

IntersectionWitness ideal_intersection_witness(const FormalGroupLaw& G, long p,
                                               const TruncatedSeries& f);

// Kernel test for the pair (augmentation z -> 0, reduction in the transfer
// quotient) on a normal-form element of the cyclic-group model.  When both
// images vanish mod p^M the element is provably 0 mod p^(M-1): writing
// f = q*P_tr + p^M*s and using P_tr(0) = p*unit, the augmentation forces
// q(0) = 0 mod p^(M-1), and f = q(0)*P_tr mod (z*P_tr, p^M) is already a
// normal form.  The bound is sharp: f = p^(M-1)*P_tr has both images zero.
struct InjectivityVerdict {
    enum class Conclusion { NonzeroImage, ZeroToPrecision, ExactZero, Inconclusive };

    TruncatedSeries normal_form;
    Coefficient augmentation;
    TruncatedSeries transfer_image;
    bool augmentation_zero = false;
    bool transfer_zero = false;
    Conclusion conclusion = Conclusion::Inconclusive;
    int certified_digits = 0;
};

InjectivityVerdict injectivity_check(const FormalGroupLaw& G, long p, const TruncatedSeries& f,
                                     Precision prec);

// draw random nonzero normal forms and count kernel hits (expected: none)
struct InjectivitySample {
    int samples = 0;
    int kernel_hits = 0;
    bool passed() const { return kernel_hits == 0; }
};

InjectivitySample injectivity_fuzz(const FormalGroupLaw& G, long p, Precision prec, int samples,
                                   unsigned long seed);

} // namespace fgllab
