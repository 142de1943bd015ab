#pragma once

#include <string>
#include <vector>

#include "fgllab/errors.hpp"

namespace fgllab {

// Which localization of the base ring spectrum the tower is measured against.
enum class LocalizationKind { Rational, PLocal, KnLocal, EnLocal };

struct LocalizationSpec {
    LocalizationKind kind = LocalizationKind::Rational;
    long p = 0; // prime; unused for Rational
    int n = 0;  // chromatic height; used by KnLocal and EnLocal only

    static LocalizationSpec rational();
    static LocalizationSpec p_local(long p);
    static LocalizationSpec k_local(long p, int n);
    static LocalizationSpec e_local(long p, int n);

    // Grammar: "rational" | "p-local@<p>" | "K(<n>)@<p>" | "E(<n>)@<p>".
    // Unrecognized text raises ParseError, a composite p raises DomainError.
    static LocalizationSpec parse(const std::string& text);
    std::string str() const;

    friend bool operator==(const LocalizationSpec&, const LocalizationSpec&) = default;
};

enum class StageStatus { Equivalence, PotentialObstruction };

struct StageReport {
    long m = 0;
    StageStatus status = StageStatus::PotentialObstruction;
    std::string rule; // the predicate that decided the status, as text
};

// Stage m of the orientation tower, for m >= 1.
//
// Stage 1 always carries the complex orientation datum itself, so it is
// flagged for every localization. Past stage 1:
//   Rational        every stage is an equivalence
//   PLocal(p)       equivalence iff m is not a power of p
//   KnLocal(p, n)   equivalence iff m is not a power of p or m > p^n
//   EnLocal(p, n)   same predicate as KnLocal(p, n): an E(n)-local
//                   equivalence follows from the K(i)-local ones for i <= n
//                   together with the rational one, and for m > 1 that
//                   conjunction collapses to the K(n) rule
StageReport stage_status(long m, const LocalizationSpec& spec);

// Ascending list of stages <= max_m where an obstruction can live.
std::vector<long> obstruction_stages(const LocalizationSpec& spec, long max_m);

// stage_status for every m in 1..max_m.
std::vector<StageReport> tower_stages(const LocalizationSpec& spec, long max_m);

// Human-readable rendering: one line per stage plus a closing paragraph
// describing what the flagged stages mean. Deterministic.
std::string tower_report(const LocalizationSpec& spec, long max_m);

} // namespace fgllab
