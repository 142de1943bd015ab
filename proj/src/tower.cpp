#include "fgllab/tower.hpp"

#include <iomanip>
#include <regex>
#include <sstream>

#include "fgllab/fgl.hpp"

namespace fgllab {

namespace {

void require_prime(long p) {
    if (!is_prime(p)) throw DomainError("p must be prime, got " + std::to_string(p));
}

void require_height(int n) {
    if (n < 0) throw DomainError("height must be nonnegative, got " + std::to_string(n));
}

bool power_of(long m, long p) {
    while (m % p == 0) m /= p;
    return m == 1;
}

// p^n, saturating well above any admissible stage index
long pow_saturated(long p, int n) {
    const long cap = 1L << 62;
    long r = 1;
    for (int i = 0; i < n; ++i) {
        if (r > cap / p) return cap;
        r *= p;
    }
    return r;
}

} // namespace

LocalizationSpec LocalizationSpec::rational() { return {LocalizationKind::Rational, 0, 0}; }

LocalizationSpec LocalizationSpec::p_local(long p) {
    require_prime(p);
    return {LocalizationKind::PLocal, p, 0};
}

LocalizationSpec LocalizationSpec::k_local(long p, int n) {
    require_prime(p);
    require_height(n);
    return {LocalizationKind::KnLocal, p, n};
}

LocalizationSpec LocalizationSpec::e_local(long p, int n) {
    require_prime(p);
    require_height(n);
    return {LocalizationKind::EnLocal, p, n};
}

LocalizationSpec LocalizationSpec::parse(const std::string& text) {
    static const std::regex p_local_re(R"(p-local@(\d+))");
    static const std::regex chromatic_re(R"(([KE])\((\d+)\)@(\d+))");
    std::smatch m;
    try {
        if (text == "rational") return rational();
        if (std::regex_match(text, m, p_local_re)) return p_local(std::stol(m[1].str()));
        if (std::regex_match(text, m, chromatic_re)) {
            long p = std::stol(m[3].str());
            int n = std::stoi(m[2].str());
            return m[1].str() == "K" ? k_local(p, n) : e_local(p, n);
        }
    } catch (const std::out_of_range&) {
        throw ParseError("localization parameter out of range in \"" + text + "\"");
    }
    throw ParseError("unrecognized localization \"" + text +
                     "\" (expected rational, p-local@<p>, K(<n>)@<p>, or E(<n>)@<p>)");
}

std::string LocalizationSpec::str() const {
    switch (kind) {
    case LocalizationKind::Rational: return "rational";
    case LocalizationKind::PLocal: return "p-local@" + std::to_string(p);
    case LocalizationKind::KnLocal:
        return "K(" + std::to_string(n) + ")@" + std::to_string(p);
    case LocalizationKind::EnLocal:
        return "E(" + std::to_string(n) + ")@" + std::to_string(p);
    }
    throw Error("corrupt LocalizationSpec");
}

StageReport stage_status(long m, const LocalizationSpec& spec) {
    if (m < 1) throw DomainError("stage index must be >= 1, got " + std::to_string(m));
    if (m == 1)
        return {m, StageStatus::PotentialObstruction,
                "stage 1 carries the complex orientation datum"};

    switch (spec.kind) {
    case LocalizationKind::Rational:
        return {m, StageStatus::Equivalence, "rational equivalence for m > 1"};
    case LocalizationKind::PLocal:
        if (!power_of(m, spec.p))
            return {m, StageStatus::Equivalence, "not a power of p: p-local equivalence"};
        return {m, StageStatus::PotentialObstruction,
                "a power of p: potential p-local obstruction"};
    case LocalizationKind::KnLocal:
        if (!power_of(m, spec.p))
            return {m, StageStatus::Equivalence, "not a power of p: p-local equivalence"};
        if (m > pow_saturated(spec.p, spec.n))
            return {m, StageStatus::Equivalence, "m > p^n: K(n)-local equivalence"};
        return {m, StageStatus::PotentialObstruction,
                "m = p^k with k <= n: potential K(n)-local obstruction"};
    case LocalizationKind::EnLocal:
        if (!power_of(m, spec.p))
            return {m, StageStatus::Equivalence, "not a power of p: p-local equivalence"};
        if (m > pow_saturated(spec.p, spec.n))
            return {m, StageStatus::Equivalence, "m > p^n: E(n)-local equivalence"};
        return {m, StageStatus::PotentialObstruction,
                "m = p^k with k <= n: potential E(n)-local obstruction"};
    }
    throw Error("corrupt LocalizationSpec");
}

std::vector<long> obstruction_stages(const LocalizationSpec& spec, long max_m) {
    if (max_m < 1) throw DomainError("max stage must be >= 1, got " + std::to_string(max_m));
    std::vector<long> out;
    for (long m = 1; m <= max_m; ++m)
        if (stage_status(m, spec).status == StageStatus::PotentialObstruction) out.push_back(m);
    return out;
}

std::vector<StageReport> tower_stages(const LocalizationSpec& spec, long max_m) {
    if (max_m < 1) throw DomainError("max stage must be >= 1, got " + std::to_string(max_m));
    std::vector<StageReport> out;
    out.reserve(static_cast<size_t>(max_m));
    for (long m = 1; m <= max_m; ++m) out.push_back(stage_status(m, spec));
    return out;
}

std::string tower_report(const LocalizationSpec& spec, long max_m) {
    if (max_m < 0) max_m = 0;
    std::ostringstream os;
    os << "orientation tower, localization " << spec.str() << ", stages 1.." << max_m << "\n\n";
    std::vector<long> flagged;
    for (long m = 1; m <= max_m; ++m) {
        StageReport r = stage_status(m, spec);
        bool obstructed = r.status == StageStatus::PotentialObstruction;
        if (obstructed) flagged.push_back(m);
        os << "  stage " << std::setw(4) << std::left << m << "  "
           << std::setw(22) << (obstructed ? "potential obstruction" : "equivalence")
           << "  " << r.rule << "\n";
    }
    os << "\nflagged stages:";
    if (flagged.empty()) os << " none";
    for (long m : flagged) os << " " << m;
    os << "\n";
    if (!flagged.empty()) {
        os << "\n"
              "At a flagged stage m the tower map from the previous stage can fail to\n"
              "be an equivalence. The failure is carried by a derived orbit spectrum\n"
              "F_m built from the m-th smash power of the universal Thom object with\n"
              "its symmetric group action, and an orientation of the base refines\n"
              "through stage m exactly when the corresponding point of the orientation\n"
              "space Or(xi) lifts. Unflagged stages collapse: the tower map there is an\n"
              "equivalence after the stated localization.\n";
    }
    return os.str();
}

} // namespace fgllab
