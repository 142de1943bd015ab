#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fgllab/quotient_ring.hpp"

namespace fgllab {

// prod_{i=0}^{p-1} (x +_G [i]_G(z)) in the variables (z, x), truncated at
// prec.order, over G's own coefficient ring.  Not reduced by any relation;
// the i = 0 factor is x itself, so every term carries a positive power of x.
TruncatedSeries lubin_product(const FormalGroupLaw& G, long p, Precision prec);

enum class CoefficientAction { Identity };

// A candidate total power operation on G-coordinate power series: a ring map
// determined by an action on coefficients together with the image of the
// coordinate x, a series in (z, x) read in the transfer quotient for (G, p).
// Built through make_power_operation, which checks the invariants.
struct TotalPowerOperation {
    long p = 0;
    FormalGroupLaw law;
    CoefficientAction coefficient_action = CoefficientAction::Identity;
    TruncatedSeries image_of_x; // vars (z, x), zero constant term
    Precision prec;             // order/digits the candidate was validated at
    std::string name;           // "adams", "frobenius", ... or "custom"
};

// Validates: p prime, zero constant term, and a clean reduction of the image
// in the transfer quotient at prec.  The image may be handed in over an exact
// ring and in any subset of the variables (z, x); it is stored p-adically in
// the full (z, x) universe.
TotalPowerOperation make_power_operation(long p, const FormalGroupLaw& G,
                                         const TruncatedSeries& image_of_x,
                                         CoefficientAction action, Precision prec,
                                         std::string name = "custom");

// coefficient action, then x -> image_of_x, then reduction in the transfer
// quotient.  f must be univariate in x.
TruncatedSeries apply_power_operation(const TotalPowerOperation& psi, const TruncatedSeries& f);

struct AndoWitness {
    std::string monomial; // first mismatch in graded-lex order on (z, x)
    Coefficient lhs;      // coefficient in the reduced product
    Coefficient rhs;      // coefficient in the applied candidate
};

// Satisfied verdicts record the order and the p-adic digits to which equality
// was certified; Violated verdicts carry the first provably differing
// monomial (graded-lex).  Inconclusive means every difference sits at or
// above the digits its row is pinned down to, so the data cannot distinguish
// a true mismatch from truncation noise.
//
// The digit bookkeeping is per x-degree: comparing order-N data in a quotient
// with distinguished degree d, the x^j row is certified to
// min(M, (N - j)/d) digits, because a dropped tail term z^k x^j has
// k >= N - j and z^k reduces with valuation >= floor(k/d).  The verdict's
// digits field is the bound at the largest x-degree present on either side;
// a mismatch only counts as a violation below its own row's bound.
struct AndoVerdict {
    enum class Status { Satisfied, Violated, Inconclusive };

    Status status = Status::Inconclusive;
    std::optional<AndoWitness> witness;
    int order = 0;
    int digits = 0;
};

// Decides whether psi agrees with the reduced Lubin product on x, in the
// transfer quotient for (G, p), through total degree prec.order.  Monotone in
// precision: a Satisfied or Violated verdict reproduces at every weaker
// precision that still certifies at least one digit on the rows involved
// (Violated: whose witness row still certifies past the witness valuation);
// below that the verdict degrades to Inconclusive, never flips.
AndoVerdict ando_check(const FormalGroupLaw& G, long p, const TotalPowerOperation& psi,
                       Precision prec);

// x -> [p](x) with identity coefficients; on the multiplicative law this is
// the classical (1+x)^p - 1
TotalPowerOperation adams_candidate(const FormalGroupLaw& G, long p, Precision prec);

// x -> x^p - z^(p-1)*x with identity coefficients, the additive-law answer
// modulo p: prod_{i in F_p} (x + i*z) = x^p - z^(p-1)*x
TotalPowerOperation frobenius_candidate(const FormalGroupLaw& G, long p, Precision prec);

// x -> x, a negative control that no law at any prime satisfies
TotalPowerOperation identity_candidate(const FormalGroupLaw& G, long p, Precision prec);

struct RingMapReport {
    int samples = 0;
    int failures = 0;
    bool passed() const { return failures == 0; }
};

// psi is a ring map by construction; this locks the property down on random
// data: psi(f*g) = psi(f)*psi(g), psi(f+g) = psi(f)+psi(g) and
// psi(c*f) = action(c)*psi(f), all compared in the transfer quotient
RingMapReport check_multiplicativity_mod_transfer(const TotalPowerOperation& psi, int samples,
                                                  unsigned long seed = 2024);

// Invariance of the Lubin product under z -> [j]_G(z) for every unit j mod p,
// compared inside the quotient by [p]_G(z) when that quotient exists and
// otherwise (additive-type laws) inside the transfer quotient, where the
// relation is the constant p.  Vacuous at p = 2.
struct InvarianceReport {
    long p = 0;
    std::vector<long> checked;  // the residues j tested (1 < j < p)
    std::vector<long> failures; // residues where the comparison failed
    int digits = 0;             // digits the comparison certifies
    bool constant_fallback = false;
    bool passed() const { return failures.empty(); }
};

InvarianceReport fpx_invariance_check(const FormalGroupLaw& G, long p, Precision prec);

// The multiplicative law at p = 2 is the one builtin where the Adams
// candidate fails the comparison: with <2>(z) = z + 2,
//
//     x*(x +_G z) = (1+z)*((1+x)^2 - 1) - x*<2>(z)
//
// holds exactly, so the reduced product is -(x^2 + 2x): the unit -1 away from
// the candidate, and 1+z is a lift of that unit along z = -2.  The pieces are
// returned for regression locking.
struct TwoGapReport {
    TruncatedSeries product_reduced; // -(x^2 + 2x), canonically mod 2^M
    TruncatedSeries adams_reduced;   // x^2 + 2x
    Coefficient unit;                // -1: product = unit * adams in the quotient
    TruncatedSeries unit_lift;       // 1 + z
    bool exact_identity_holds = false; // the displayed identity, over the integers
};

TwoGapReport multiplicative_two_gap(Precision prec);

} // namespace fgllab
