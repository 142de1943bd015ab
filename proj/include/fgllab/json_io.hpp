#pragma once

#include <json.hpp>

#include "fgllab/fgl.hpp"
#include "fgllab/power_operation.hpp"
#include "fgllab/quotient_ring.hpp"
#include "fgllab/tower.hpp"

namespace fgllab {

// Insertion-ordered documents so identical inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

// { "tag": "ExactInt" | "Rational" | "PLocalRational" | "PAdicTruncated",
//   "p": ..., "M": ... }   with p and M present only where meaningful
Json ring_to_json(const RingTag& t);
RingTag ring_from_json(const Json& j);

// { "vars": [...], "order": N, "ring": {...},
//   "terms": [ { "exp": [e1, ..., ek], "coeff": "decimal or num/den" } ] }
// Terms appear in graded-lex order. Coefficients are decimal strings, with
// "num/den" for the rational tags.
Json series_to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const Json& j);

// series fields of F plus "kind" and an optional "log" series. Parsing
// reconstructs the law from its strongest datum (builtin kind or log) and
// insists the embedded series matches; bare custom series re-run the axiom
// checks.
Json fgl_to_json(const FormalGroupLaw& G);
FormalGroupLaw fgl_from_json(const Json& j);

// { "p": ..., "image_of_x": series, "coefficient_action": "identity" }
struct PsiCandidateSpec {
    long p = 0;
    TruncatedSeries image_of_x = TruncatedSeries::zero({"x"}, 1, RingTag::exact_int());
    CoefficientAction action = CoefficientAction::Identity;
};
Json psi_to_json(const TotalPowerOperation& psi);
PsiCandidateSpec psi_candidate_from_json(const Json& j);

// relation series, backend, model, precision, and the backend certificates
// (distinguished polynomial and detected height, or the constant valuation)
Json quotient_to_json(const PreparedQuotientRing& ring);

// { "status": ..., "witness": {...} | null, "order": N, "precision": digits }
Json verdict_to_json(const AndoVerdict& v);

Json invariants_to_json(const FpxInvariants& inv);

// [ { "m": ..., "status": ..., "rule": ... }, ... ]
Json stage_reports_to_json(const std::vector<StageReport>& rows);

} // namespace fgllab
