#include "fgllab/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fgllab/json_io.hpp"

namespace fgllab {
namespace {

// internal control flow for the documented exit codes
struct CliExit {
    int code;
    std::string message;
};

struct RunConfig {
    std::string command;
    std::string fgl;
    std::string psi;
    std::string model = "transfer";
    std::string localization;
    std::string format = "json";
    std::string out;
    std::string config_path;
    long p = 0;
    bool p_given = false;
    int order = 16;
    int precision = 8;
    long max_m = 100;
};

int env_default_precision() {
    const char* e = std::getenv("FGL_LAB_DEFAULT_PRECISION");
    if (!e) return 8;
    char* end = nullptr;
    long v = std::strtol(e, &end, 10);
    if (end == e || *end != '\0')
        throw CliExit{10, "FGL_LAB_DEFAULT_PRECISION must be an integer, got \"" +
                              std::string(e) + "\""};
    if (v < 1 || v > 64)
        throw CliExit{13, "FGL_LAB_DEFAULT_PRECISION out of bounds [1, 64]: " + std::string(e)};
    return static_cast<int>(v);
}

std::string trimmed(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

long parse_config_integer(const std::string& path, const std::string& key,
                          const std::string& value) {
    char* end = nullptr;
    long v = std::strtol(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        throw CliExit{11, path + ": bad integer for " + key + ": \"" + value + "\""};
    return v;
}

// Flat key=value defaults for the active subcommand's long options.  Values
// given on the command line win; everything else about the file is strict.
// Returns whether the file supplied p.
bool apply_config_file(RunConfig& cfg, const CLI::App* sub) {
    const std::string& path = cfg.config_path;
    std::ifstream in(path);
    if (!in) throw CliExit{11, "cannot read " + path};
    bool p_seen = false;
    std::string line;
    while (std::getline(in, line)) {
        line = trimmed(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line[0] == '[')
            throw CliExit{11, path + ": sections are not supported, use flat key=value lines"};
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw CliExit{11, path + ": expected key=value, got \"" + line + "\""};
        std::string key = trimmed(line.substr(0, eq));
        std::string value = trimmed(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key == "config") throw CliExit{11, path + ": config files do not nest"};
        const CLI::Option* op = sub->get_option_no_throw("--" + key);
        if (op == nullptr)
            throw CliExit{11, path + ": no option --" + key + " for " + sub->get_name()};
        if (op->count() > 0) continue;
        if (key == "fgl") cfg.fgl = value;
        else if (key == "psi") cfg.psi = value;
        else if (key == "model") cfg.model = value;
        else if (key == "localization") cfg.localization = value;
        else if (key == "format") cfg.format = value;
        else if (key == "out") cfg.out = value;
        else if (key == "p") { cfg.p = parse_config_integer(path, key, value); p_seen = true; }
        else if (key == "order") cfg.order = static_cast<int>(parse_config_integer(path, key, value));
        else if (key == "precision") cfg.precision = static_cast<int>(parse_config_integer(path, key, value));
        else if (key == "max") cfg.max_m = parse_config_integer(path, key, value);
        else throw CliExit{11, path + ": no option --" + key + " for " + sub->get_name()};
    }
    if (cfg.format != "json" && cfg.format != "text")
        throw CliExit{11, path + ": format must be json or text"};
    if (cfg.model != "transfer" && cfg.model != "bcp")
        throw CliExit{11, path + ": model must be transfer or bcp"};
    return p_seen;
}

std::string now_utc() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliExit{11, "cannot read " + path};
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw CliExit{11, path + ": " + e.what()};
    }
}

struct LawChoice {
    FormalGroupLaw law;
    Json provenance; // the builtin spec string, or the file content verbatim
};

LawChoice resolve_law(const RunConfig& cfg) {
    const std::string& spec = cfg.fgl;
    if (spec == "additive") return {FormalGroupLaw::additive(cfg.order), Json(spec)};
    if (spec == "multiplicative") return {FormalGroupLaw::multiplicative(cfg.order), Json(spec)};
    if (spec.rfind("honda:", 0) == 0) {
        int h = 0;
        try {
            std::size_t used = 0;
            h = std::stoi(spec.substr(6), &used);
            if (used != spec.size() - 6) h = 0;
        } catch (...) {
            h = 0;
        }
        if (h < 1)
            throw CliExit{10, "bad height in \"" + spec + "\" (expected honda:<h>, h >= 1)"};
        if (!cfg.p_given) throw CliExit{10, "--fgl " + spec + " needs --p"};
        return {FormalGroupLaw::from_log(honda_log(cfg.p, h, cfg.order)), Json(spec)};
    }
    Json j = read_json_file(spec);
    try {
        if (j.is_object() && j.contains("kind")) return {fgl_from_json(j), j};
        // a bare series is taken as a logarithm
        return {FormalGroupLaw::from_log(series_from_json(j)), j};
    } catch (const Error& e) {
        throw CliExit{11, spec + ": " + e.what()};
    }
}

struct PsiChoice {
    TotalPowerOperation psi;
    Json provenance;
};

PsiChoice resolve_psi(const RunConfig& cfg, const FormalGroupLaw& G) {
    Precision prec{cfg.order, cfg.precision};
    if (cfg.psi == "adams") return {adams_candidate(G, cfg.p, prec), Json(cfg.psi)};
    if (cfg.psi == "frobenius") return {frobenius_candidate(G, cfg.p, prec), Json(cfg.psi)};
    if (cfg.psi == "identity-control")
        return {identity_candidate(G, cfg.p, prec), Json(cfg.psi)};
    Json j = read_json_file(cfg.psi);
    try {
        PsiCandidateSpec spec = psi_candidate_from_json(j);
        return {make_power_operation(spec.p, G, spec.image_of_x, spec.action, prec), j};
    } catch (const Error& e) {
        throw CliExit{11, cfg.psi + ": " + e.what()};
    }
}

void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw CliExit{11, "cannot write " + tmp};
        f << content;
        f.flush();
        if (!f) throw CliExit{11, "short write to " + tmp};
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw CliExit{11, "cannot move " + tmp + " into place"};
}

// timestamps stay out of the "report" object so identical runs compare equal
void emit(const RunConfig& cfg, const Json& report, const std::string& text_body) {
    std::string payload;
    if (cfg.format == "json") {
        Json doc;
        doc["report"] = report;
        doc["meta"] = Json{{"generated_at", now_utc()}, {"tool", "fgl-lab"}};
        payload = doc.dump(2) + "\n";
    } else {
        payload = text_body + "generated at: " + now_utc() + "\n";
    }
    if (cfg.out.empty())
        std::cout << payload;
    else
        write_atomic(cfg.out, payload);
}

Json make_report(const std::string& command, Json inputs, Json result) {
    Json r;
    r["command"] = command;
    r["inputs"] = std::move(inputs);
    r["result"] = std::move(result);
    return r;
}

std::string render_inputs(const std::string& command, const Json& inputs) {
    std::ostringstream os;
    os << "fgl-lab " << command << "\ninputs:\n";
    for (auto it = inputs.begin(); it != inputs.end(); ++it) {
        os << "  " << it.key() << ": ";
        if (it->is_string())
            os << it->get<std::string>();
        else
            os << it->dump();
        os << "\n";
    }
    os << "result:\n";
    return os.str();
}

// representative of smallest absolute value, for readable p-adic units
std::string signed_rep(const Coefficient& c) {
    if (c.tag().kind != RingKind::PAdicTruncated) return c.str();
    mpz_class num = c.value().get_num();
    mpz_class mod = c.tag().modulus();
    if (num * 2 > mod) num -= mod;
    return num.get_str();
}

int run_fgl_info(const RunConfig& cfg) {
    LawChoice lc = resolve_law(cfg);
    const FormalGroupLaw& G = lc.law;

    Json inputs;
    inputs["fgl"] = lc.provenance;
    if (cfg.p_given) inputs["p"] = cfg.p;
    inputs["order"] = cfg.order;

    AxiomReport ax = check_axioms(G.series());
    Json result;
    result["name"] = G.name();
    result["law"] = fgl_to_json(G);
    result["axioms"] = Json{{"unit", ax.unit_ok},
                            {"commutative", ax.commutative_ok},
                            {"associative", ax.associative_ok}};

    std::ostringstream os;
    os << render_inputs(cfg.command, inputs);
    os << "  name: " << G.name() << "\n";
    os << "  kind: " << result["law"]["kind"].get<std::string>() << "\n";
    os << "  ring: " << G.tag().name() << "\n";
    os << "  F(x, y) = " << G.series().str() << "\n";
    if (G.log()) os << "  log(x) = " << G.log()->str() << "\n";
    os << "  axioms: unit " << (ax.unit_ok ? "ok" : "FAILED") << ", commutative "
       << (ax.commutative_ok ? "ok" : "FAILED") << ", associative "
       << (ax.associative_ok ? "ok" : "FAILED") << "\n";

    emit(cfg, make_report(cfg.command, inputs, result), os.str());
    return ax.all_ok() ? 0 : 14;
}

int run_pseries(const RunConfig& cfg) {
    LawChoice lc = resolve_law(cfg);
    TruncatedSeries ps = n_series(lc.law, cfg.p).series;
    TruncatedSeries ds = divided_p_series(lc.law, cfg.p);

    Json inputs;
    inputs["fgl"] = lc.provenance;
    inputs["p"] = cfg.p;
    inputs["order"] = cfg.order;

    Json result;
    result["p_series"] = series_to_json(ps);
    result["divided_p_series"] = series_to_json(ds);

    std::ostringstream os;
    os << render_inputs(cfg.command, inputs);
    os << "  [p](x) = " << ps.str() << "\n";
    os << "  <p>(x) = " << ds.str() << "\n";

    emit(cfg, make_report(cfg.command, inputs, result), os.str());
    return 0;
}

int run_quotient(const RunConfig& cfg) {
    LawChoice lc = resolve_law(cfg);
    Precision prec{cfg.order, cfg.precision};
    PreparedQuotientRing ring = cfg.model == "bcp"
                                    ? build_bcp_ring(lc.law, cfg.p, prec)
                                    : build_transfer_quotient(lc.law, cfg.p, prec);

    Json inputs;
    inputs["fgl"] = lc.provenance;
    inputs["p"] = cfg.p;
    inputs["order"] = cfg.order;
    inputs["precision"] = cfg.precision;
    inputs["model"] = cfg.model;

    Json result = quotient_to_json(ring);

    std::ostringstream os;
    os << render_inputs(cfg.command, inputs);
    os << "  model: " << result["model"].get<std::string>() << "\n";
    os << "  backend: " << result["backend"].get<std::string>() << "\n";
    if (ring.backend() == PreparedQuotientRing::Backend::WeierstrassPoly) {
        os << "  degree: " << ring.degree() << "\n";
        os << "  distinguished: " << ring.distinguished().str() << "\n";
        auto h = ring.detected_height();
        os << "  detected height: " << (h ? std::to_string(*h) : std::string("none")) << "\n";
    } else {
        os << "  constant valuation: " << ring.constant_valuation() << "\n";
    }
    os << "  ideal digits: " << ring.ideal_digits() << "\n";
    os << "  relation: " << ring.relation().str() << "\n";

    emit(cfg, make_report(cfg.command, inputs, result), os.str());
    return 0;
}

int run_invariants(const RunConfig& cfg) {
    LawChoice lc = resolve_law(cfg);
    Precision prec{cfg.order, cfg.precision};
    PreparedQuotientRing ring = build_bcp_ring(lc.law, cfg.p, prec);
    FpxInvariants inv = fpx_invariants(ring, lc.law);

    Json inputs;
    inputs["fgl"] = lc.provenance;
    inputs["p"] = cfg.p;
    inputs["order"] = cfg.order;
    inputs["precision"] = cfg.precision;

    Json result;
    result["ring"] = quotient_to_json(ring);
    result.update(invariants_to_json(inv));

    std::ostringstream os;
    os << render_inputs(cfg.command, inputs);
    os << "  generator: " << inv.generator << "\n";
    os << "  certified digits: " << inv.certified_digits << "\n";
    os << "  basis:\n";
    for (const auto& b : inv.basis) os << "    " << b.str() << "\n";

    emit(cfg, make_report(cfg.command, inputs, result), os.str());
    return 0;
}

int run_ando(const RunConfig& cfg) {
    LawChoice lc = resolve_law(cfg);
    PsiChoice pc = resolve_psi(cfg, lc.law);
    Precision prec{cfg.order, cfg.precision};
    AndoVerdict v = ando_check(lc.law, cfg.p, pc.psi, prec);

    Json inputs;
    inputs["fgl"] = lc.provenance;
    inputs["p"] = cfg.p;
    inputs["psi"] = pc.provenance;
    inputs["order"] = cfg.order;
    inputs["precision"] = cfg.precision;

    Json result = verdict_to_json(v);

    bool two_gap = lc.law.kind() == FglKind::Multiplicative && cfg.p == 2 &&
                   pc.psi.name == "adams";
    if (two_gap) {
        TwoGapReport gap = multiplicative_two_gap(prec);
        Json g;
        g["product_reduced"] = series_to_json(gap.product_reduced);
        g["adams_candidate_reduced"] = series_to_json(gap.adams_reduced);
        g["unit"] = signed_rep(gap.unit);
        g["unit_lift"] = series_to_json(gap.unit_lift);
        g["exact_identity_holds"] = gap.exact_identity_holds;
        g["note"] =
            "the reduced symmetric product is the unit -1 times the reduced candidate "
            "image; 1 + z lifts that unit along z = -2, and both statements follow from "
            "the exact identity x*(x + z + x*z) = (1 + z)*((1 + x)^2 - 1) - x*(2 + z) "
            "over the integers";
        result["two_gap"] = std::move(g);
    }

    std::ostringstream os;
    os << render_inputs(cfg.command, inputs);
    os << "  status: " << result["status"].get<std::string>() << "\n";
    os << "  order: " << v.order << "\n";
    os << "  certified digits: " << v.digits << "\n";
    if (v.witness) {
        os << "  first differing monomial: " << v.witness->monomial << "\n";
        os << "    symmetric product side: " << v.witness->lhs.str() << "\n";
        os << "    candidate side:         " << v.witness->rhs.str() << "\n";
    }
    if (two_gap) {
        const Json& g = result["two_gap"];
        os << "  two-gap: product reduces to the unit " << g["unit"].get<std::string>()
           << " times the candidate image (lift of the unit: 1 + z)\n";
        os << "    exact identity holds: "
           << (g["exact_identity_holds"].get<bool>() ? "yes" : "no") << "\n";
    }

    emit(cfg, make_report(cfg.command, inputs, result), os.str());
    switch (v.status) {
    case AndoVerdict::Status::Satisfied: return 0;
    case AndoVerdict::Status::Violated: return 1;
    case AndoVerdict::Status::Inconclusive: return 2;
    }
    return 14;
}

int run_tower(const RunConfig& cfg) {
    LocalizationSpec spec;
    try {
        spec = LocalizationSpec::parse(cfg.localization);
    } catch (const ParseError& e) {
        throw CliExit{10, e.what()};
    } catch (const DomainError& e) {
        throw CliExit{12, e.what()};
    }

    Json inputs;
    inputs["localization"] = cfg.localization;
    inputs["max"] = cfg.max_m;

    Json result = stage_reports_to_json(tower_stages(spec, cfg.max_m));

    emit(cfg, make_report(cfg.command, inputs, result), tower_report(spec, cfg.max_m));
    return 0;
}

int run_cli(int argc, char** argv) {
    RunConfig cfg;
    cfg.precision = env_default_precision();

    CLI::App app{"exact formal group law laboratory"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* s) {
        s->add_option("--format", cfg.format, "json or text")
            ->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
        s->add_option("--out", cfg.out, "write the report to this path (atomically)");
        s->add_option("--config", cfg.config_path,
                      "flat key=value file with defaults for this command's options");
    };
    auto fgl_opt = [&](CLI::App* s) {
        s->add_option("--fgl", cfg.fgl,
                      "additive | multiplicative | honda:<h> | law or log-series json file");
    };
    auto p_opt = [&](CLI::App* s) { s->add_option("--p", cfg.p, "the prime"); };
    auto order_opt = [&](CLI::App* s) {
        s->add_option("--order", cfg.order, "truncation order N, 1..64")->capture_default_str();
    };
    auto prec_opt = [&](CLI::App* s) {
        s->add_option("--precision", cfg.precision, "p-adic digits M, 1..64")
            ->capture_default_str();
    };

    CLI::App* info = app.add_subcommand("fgl-info", "expand a law and re-check the axioms");
    fgl_opt(info);
    p_opt(info);
    order_opt(info);
    common(info);

    CLI::App* pser = app.add_subcommand("pseries", "p-series and divided p-series of a law");
    fgl_opt(pser);
    p_opt(pser);
    order_opt(pser);
    common(pser);

    CLI::App* quot = app.add_subcommand("quotient", "prepared quotient-ring descriptor");
    fgl_opt(quot);
    p_opt(quot);
    order_opt(quot);
    prec_opt(quot);
    quot->add_option("--model", cfg.model, "transfer (divided p-series) or bcp (p-series)")
        ->check(CLI::IsMember({"transfer", "bcp"}))
        ->capture_default_str();
    common(quot);

    CLI::App* inva =
        app.add_subcommand("invariants", "unit-group fixed points of the cyclic-group model");
    fgl_opt(inva);
    p_opt(inva);
    order_opt(inva);
    prec_opt(inva);
    common(inva);

    CLI::App* ando =
        app.add_subcommand("ando-check", "compare the symmetric product with a candidate image");
    fgl_opt(ando);
    p_opt(ando);
    ando->add_option("--psi", cfg.psi, "adams | frobenius | identity-control | candidate json file");
    order_opt(ando);
    prec_opt(ando);
    common(ando);

    CLI::App* tow = app.add_subcommand("tower", "orientation tower stage statuses");
    tow->add_option("--localization", cfg.localization,
                    "rational | p-local@<p> | K(<n>)@<p> | E(<n>)@<p>");
    tow->add_option("--max", cfg.max_m, "largest stage, 1..100000")->capture_default_str();
    common(tow);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "fgl-lab: " << e.what() << "\n";
        return 10;
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    const CLI::Option* pop = sub->get_option_no_throw("--p");
    cfg.p_given = pop != nullptr && pop->count() > 0;
    if (!cfg.config_path.empty()) cfg.p_given |= apply_config_file(cfg, sub);

    bool needs_fgl = cfg.command != "tower";
    bool needs_p = cfg.command == "pseries" || cfg.command == "quotient" ||
                   cfg.command == "invariants" || cfg.command == "ando-check";
    if (needs_fgl && cfg.fgl.empty()) throw CliExit{10, "--fgl is required for " + cfg.command};
    if (needs_p && !cfg.p_given) throw CliExit{10, "--p is required for " + cfg.command};
    if (cfg.command == "ando-check" && cfg.psi.empty())
        throw CliExit{10, "--psi is required for ando-check"};
    if (cfg.command == "tower" && cfg.localization.empty())
        throw CliExit{10, "--localization is required for tower"};

    if (cfg.p_given && !is_prime(cfg.p))
        throw CliExit{12, "p must be prime, got " + std::to_string(cfg.p)};
    if (cfg.order < 1 || cfg.order > 64)
        throw CliExit{13, "--order out of bounds [1, 64]: " + std::to_string(cfg.order)};
    if (cfg.precision < 1 || cfg.precision > 64)
        throw CliExit{13, "--precision out of bounds [1, 64]: " + std::to_string(cfg.precision)};
    if (cfg.command == "tower" && (cfg.max_m < 1 || cfg.max_m > 100000))
        throw CliExit{13, "--max out of bounds [1, 100000]: " + std::to_string(cfg.max_m)};

    if (cfg.command == "fgl-info") return run_fgl_info(cfg);
    if (cfg.command == "pseries") return run_pseries(cfg);
    if (cfg.command == "quotient") return run_quotient(cfg);
    if (cfg.command == "invariants") return run_invariants(cfg);
    if (cfg.command == "ando-check") return run_ando(cfg);
    if (cfg.command == "tower") return run_tower(cfg);
    throw CliExit{10, "unknown command " + cfg.command};
}

} // namespace

int cli_main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const CliExit& e) {
        std::cerr << "fgl-lab: " << e.message << "\n";
        return e.code;
    } catch (const Error& e) {
        std::cerr << "fgl-lab: " << e.what() << "\n";
        return 14;
    } catch (const std::exception& e) {
        std::cerr << "fgl-lab: " << e.what() << "\n";
        return 14;
    }
}

} // namespace fgllab
