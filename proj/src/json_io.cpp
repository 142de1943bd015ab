#include "fgllab/json_io.hpp"

namespace fgllab {

namespace {

mpq_class rational_from_string(const std::string& text) {
    mpq_class q;
    if (text.empty() || q.set_str(text, 10) != 0)
        throw ParseError("unparsable coefficient \"" + text + "\"");
    if (q.get_den() == 0) throw ParseError("zero denominator in \"" + text + "\"");
    q.canonicalize();
    return q;
}

std::string kind_name(FglKind k) {
    switch (k) {
    case FglKind::Additive: return "additive";
    case FglKind::Multiplicative: return "multiplicative";
    case FglKind::FromLog: return "from-log";
    case FglKind::Custom: return "custom";
    }
    throw Error("corrupt FglKind");
}

// json structural errors and construction failures both mean the document
// is unusable; fold them into ParseError with some context
template <typename F>
auto reparse(const char* what, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const ParseError&) {
        throw;
    } catch (const Json::exception& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    } catch (const Error& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

} // namespace

Json ring_to_json(const RingTag& t) {
    Json j;
    switch (t.kind) {
    case RingKind::ExactInt: j["tag"] = "ExactInt"; break;
    case RingKind::Rational: j["tag"] = "Rational"; break;
    case RingKind::PLocalRational:
        j["tag"] = "PLocalRational";
        j["p"] = t.p;
        break;
    case RingKind::PAdicTruncated:
        j["tag"] = "PAdicTruncated";
        j["p"] = t.p;
        j["M"] = t.digits;
        break;
    }
    return j;
}

RingTag ring_from_json(const Json& j) {
    return reparse("ring", [&]() -> RingTag {
        std::string tag = j.at("tag").get<std::string>();
        if (tag == "ExactInt") return RingTag::exact_int();
        if (tag == "Rational") return RingTag::rational();
        if (tag == "PLocalRational" || tag == "PAdicTruncated") {
            long p = j.at("p").get<long>();
            if (!is_prime(p)) throw ParseError("ring: p must be prime, got " + std::to_string(p));
            if (tag == "PLocalRational") return RingTag::p_local(p);
            int digits = j.at("M").get<int>();
            if (digits < 1) throw ParseError("ring: M must be >= 1");
            return RingTag::p_adic(p, digits);
        }
        throw ParseError("ring: unknown tag \"" + tag + "\"");
    });
}

Json series_to_json(const TruncatedSeries& s) {
    Json j;
    j["vars"] = s.vars();
    j["order"] = s.order();
    j["ring"] = ring_to_json(s.tag());
    Json terms = Json::array();
    for (const auto& [e, c] : s.terms()) {
        Json t;
        t["exp"] = e;
        t["coeff"] = c.str();
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

TruncatedSeries series_from_json(const Json& j) {
    return reparse("series", [&]() -> TruncatedSeries {
        auto vars = j.at("vars").get<std::vector<std::string>>();
        int order = j.at("order").get<int>();
        RingTag tag = ring_from_json(j.at("ring"));
        std::vector<std::pair<Exponents, Coefficient>> terms;
        for (const auto& t : j.at("terms")) {
            auto e = t.at("exp").get<Exponents>();
            auto cs = t.at("coeff").get<std::string>();
            terms.emplace_back(std::move(e), Coefficient(tag, rational_from_string(cs)));
        }
        return TruncatedSeries::from_terms(std::move(vars), order, tag, terms);
    });
}

Json fgl_to_json(const FormalGroupLaw& G) {
    Json j = series_to_json(G.series());
    j["kind"] = kind_name(G.kind());
    if (G.log()) j["log"] = series_to_json(*G.log());
    return j;
}

FormalGroupLaw fgl_from_json(const Json& j) {
    TruncatedSeries F = series_from_json(j);
    return reparse("law", [&]() -> FormalGroupLaw {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "additive" || kind == "multiplicative") {
            FormalGroupLaw G = kind == "additive"
                                   ? FormalGroupLaw::additive(F.order(), F.tag())
                                   : FormalGroupLaw::multiplicative(F.order(), F.tag());
            if (!(G.series() == F))
                throw ParseError("law: kind says " + kind +
                                 " but the embedded series is a different law");
            return G;
        }
        if (kind == "from-log") {
            if (!j.contains("log")) throw ParseError("law: from-log law without a log series");
            FormalGroupLaw G = FormalGroupLaw::from_log(series_from_json(j.at("log")));
            if (!(G.tag() == F.tag())) G = G.retagged(F.tag());
            if (!(G.series() == F))
                throw ParseError("law: the log does not expand to the embedded series");
            return G;
        }
        if (kind == "custom") return FormalGroupLaw::custom(F);
        throw ParseError("law: unknown kind \"" + kind + "\"");
    });
}

Json psi_to_json(const TotalPowerOperation& psi) {
    Json j;
    j["p"] = psi.p;
    j["image_of_x"] = series_to_json(psi.image_of_x);
    j["coefficient_action"] = "identity";
    return j;
}

PsiCandidateSpec psi_candidate_from_json(const Json& j) {
    return reparse("psi candidate", [&]() -> PsiCandidateSpec {
        PsiCandidateSpec spec;
        spec.p = j.at("p").get<long>();
        spec.image_of_x = series_from_json(j.at("image_of_x"));
        auto action = j.at("coefficient_action").get<std::string>();
        if (action != "identity")
            throw ParseError("psi candidate: unsupported coefficient_action \"" + action + "\"");
        spec.action = CoefficientAction::Identity;
        return spec;
    });
}

Json quotient_to_json(const PreparedQuotientRing& ring) {
    Json j;
    j["model"] =
        ring.model() == PreparedQuotientRing::Model::PSeries ? "p-series" : "divided-p-series";
    bool weier = ring.backend() == PreparedQuotientRing::Backend::WeierstrassPoly;
    j["backend"] = weier ? "weierstrass" : "constant";
    j["p"] = ring.p();
    j["variable"] = ring.var();
    j["order"] = ring.order();
    j["precision"] = ring.tag().digits;
    j["ideal_digits"] = ring.ideal_digits();
    j["relation"] = series_to_json(ring.relation());
    if (weier) {
        j["degree"] = ring.degree();
        j["distinguished"] = series_to_json(ring.distinguished());
        auto h = ring.detected_height();
        j["detected_height"] = h ? Json(*h) : Json(nullptr);
    } else {
        j["constant_valuation"] = ring.constant_valuation();
    }
    return j;
}

Json verdict_to_json(const AndoVerdict& v) {
    Json j;
    switch (v.status) {
    case AndoVerdict::Status::Satisfied: j["status"] = "Satisfied"; break;
    case AndoVerdict::Status::Violated: j["status"] = "Violated"; break;
    case AndoVerdict::Status::Inconclusive: j["status"] = "Inconclusive"; break;
    }
    if (v.witness) {
        Json w;
        w["monomial"] = v.witness->monomial;
        w["lhs"] = v.witness->lhs.str();
        w["rhs"] = v.witness->rhs.str();
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    j["order"] = v.order;
    j["precision"] = v.digits;
    return j;
}

Json invariants_to_json(const FpxInvariants& inv) {
    Json j;
    j["generator"] = inv.generator;
    j["certified_digits"] = inv.certified_digits;
    j["pivot_valuations"] = inv.pivot_valuations;
    Json basis = Json::array();
    for (const auto& b : inv.basis) basis.push_back(series_to_json(b));
    j["basis"] = std::move(basis);
    return j;
}

Json stage_reports_to_json(const std::vector<StageReport>& rows) {
    Json arr = Json::array();
    for (const auto& r : rows) {
        Json j;
        j["m"] = r.m;
        j["status"] = r.status == StageStatus::Equivalence ? "Equivalence" : "PotentialObstruction";
        j["rule"] = r.rule;
        arr.push_back(std::move(j));
    }
    return arr;
}

} // namespace fgllab
