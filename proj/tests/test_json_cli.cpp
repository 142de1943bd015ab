#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

#include "fgllab/json_io.hpp"

using namespace fgllab;

namespace {

const RingTag ZZ = RingTag::exact_int();

TruncatedSeries xpoly(int order, const RingTag& tag,
                      std::vector<std::pair<int, long>> coeffs) {
    std::vector<std::pair<Exponents, Coefficient>> terms;
    for (auto& [d, c] : coeffs) terms.push_back({{d}, Coefficient::from_int(tag, c)});
    return TruncatedSeries::from_terms({"x"}, order, tag, terms);
}

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const char* bin = std::getenv("FGL_LAB_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "FGL_LAB_BIN must point at the fgl-lab binary");
    std::string cmd = env_prefix.empty() ? "" : "env " + env_prefix + " ";
    cmd += std::string(bin) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

Json report_of(const RunResult& r) {
    Json doc = Json::parse(r.out);
    REQUIRE(doc.contains("report"));
    REQUIRE(doc.contains("meta"));
    return doc["report"];
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/fgllab_cli_" + name;
    std::ofstream f(path, std::ios::trunc);
    f << content;
    return path;
}

} // namespace

TEST_CASE("ring tags round-trip and reject junk") {
    for (auto tag : {RingTag::exact_int(), RingTag::rational(), RingTag::p_local(3),
                     RingTag::p_adic(2, 8)})
        CHECK(ring_from_json(ring_to_json(tag)) == tag);
    CHECK(ring_to_json(ZZ).dump() == R"({"tag":"ExactInt"})");
    CHECK(ring_to_json(RingTag::p_adic(2, 8)).dump() == R"({"tag":"PAdicTruncated","p":2,"M":8})");

    CHECK_THROWS_AS(ring_from_json(Json::parse(R"({"tag":"Ring"})")), ParseError);
    CHECK_THROWS_AS(ring_from_json(Json::parse(R"({"tag":"PLocalRational","p":4})")), ParseError);
    CHECK_THROWS_AS(ring_from_json(Json::parse(R"({"tag":"PAdicTruncated","p":2,"M":0})")),
                    ParseError);
    CHECK_THROWS_AS(ring_from_json(Json::parse(R"({})")), ParseError);
}

TEST_CASE("series serialization is canonical and round-trips") {
    TruncatedSeries s = xpoly(4, ZZ, {{1, 1}, {3, -2}});
    CHECK(series_to_json(s).dump() ==
          R"({"vars":["x"],"order":4,"ring":{"tag":"ExactInt"},"terms":)"
          R"([{"exp":[1],"coeff":"1"},{"exp":[3],"coeff":"-2"}]})");
    CHECK(series_from_json(series_to_json(s)) == s);

    auto q = RingTag::rational();
    TruncatedSeries r = TruncatedSeries::from_terms(
        {"z", "x"}, 6, q,
        {{{0, 1}, Coefficient(q, mpq_class(1, 3))}, {{2, 1}, Coefficient(q, mpq_class(-7, 2))}});
    Json j = series_to_json(r);
    CHECK(j["terms"][0]["coeff"] == "1/3");
    CHECK(j["terms"][1]["coeff"] == "-7/2");
    CHECK(series_from_json(j) == r);

    // p-adic coefficients come back canonical
    auto t = RingTag::p_adic(3, 4);
    TruncatedSeries pa = xpoly(5, t, {{1, -1}, {2, 82}});
    Json pj = series_to_json(pa);
    CHECK(pj["terms"][0]["coeff"] == "80");
    CHECK(pj["terms"][1]["coeff"] == "1");
    CHECK(series_from_json(pj) == pa);
    // serialize(parse(j)) is byte-stable
    CHECK(series_to_json(series_from_json(pj)).dump() == pj.dump());
}

TEST_CASE("series parsing rejects malformed documents") {
    auto parse = [](const char* text) { return series_from_json(Json::parse(text)); };
    CHECK_THROWS_AS(parse(R"({"order":4})"), ParseError);
    CHECK_THROWS_AS(parse(R"({"vars":["x"],"order":4,"ring":{"tag":"ExactInt"}})"), ParseError);
    CHECK_THROWS_AS(
        parse(R"({"vars":["x"],"order":4,"ring":{"tag":"ExactInt"},"terms":[{"exp":[1]}]})"),
        ParseError);
    CHECK_THROWS_AS(parse(R"({"vars":["x"],"order":4,"ring":{"tag":"ExactInt"},)"
                          R"("terms":[{"exp":[1],"coeff":"banana"}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse(R"({"vars":["x"],"order":4,"ring":{"tag":"ExactInt"},)"
                          R"("terms":[{"exp":[1],"coeff":"1/0"}]})"),
                    ParseError);
    // exponent width must match the variable list
    CHECK_THROWS_AS(parse(R"({"vars":["x"],"order":4,"ring":{"tag":"ExactInt"},)"
                          R"("terms":[{"exp":[1,2],"coeff":"1"}]})"),
                    ParseError);
    // rational coefficient in an integral ring
    CHECK_THROWS_AS(parse(R"({"vars":["x"],"order":4,"ring":{"tag":"ExactInt"},)"
                          R"("terms":[{"exp":[1],"coeff":"1/2"}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse(R"({"vars":["x"],"order":4,"ring":{"tag":"PAdicTruncated","p":3,"M":2},)"
                          R"("terms":[{"exp":[1],"coeff":"1/3"}]})"),
                    ParseError);
}

TEST_CASE("laws round-trip through json by kind") {
    FormalGroupLaw add = FormalGroupLaw::additive(8);
    FormalGroupLaw mul = FormalGroupLaw::multiplicative(8);
    FormalGroupLaw hon = FormalGroupLaw::from_log(honda_log(3, 1, 10));

    for (const auto* G : {&add, &mul, &hon}) {
        FormalGroupLaw back = fgl_from_json(fgl_to_json(*G));
        CHECK(back.kind() == G->kind());
        CHECK(back.series() == G->series());
    }
    CHECK(fgl_to_json(mul)["kind"] == "multiplicative");
    CHECK(!fgl_to_json(mul).contains("log"));
    CHECK(fgl_to_json(hon).contains("log"));
    CHECK(fgl_from_json(fgl_to_json(hon)).log().has_value());

    // a custom law re-runs the axiom checks on parse
    FormalGroupLaw cus = FormalGroupLaw::custom(mul.series());
    CHECK(fgl_from_json(fgl_to_json(cus)).series() == mul.series());

    Json forged = fgl_to_json(mul);
    forged["kind"] = "additive";
    CHECK_THROWS_AS(fgl_from_json(forged), ParseError);

    Json broken = fgl_to_json(hon);
    broken.erase("log");
    CHECK_THROWS_AS(fgl_from_json(broken), ParseError);

    Json notalaw = fgl_to_json(mul);
    notalaw["kind"] = "custom";
    notalaw["terms"][0]["coeff"] = "2"; // x-coefficient 2 breaks the unit axiom
    CHECK_THROWS_AS(fgl_from_json(notalaw), ParseError);

    Json unknown = fgl_to_json(mul);
    unknown["kind"] = "elliptic";
    CHECK_THROWS_AS(fgl_from_json(unknown), ParseError);
}

TEST_CASE("psi candidates round-trip through json") {
    FormalGroupLaw mul = FormalGroupLaw::multiplicative(16);
    TotalPowerOperation adams = adams_candidate(mul, 3, {16, 8});
    Json j = psi_to_json(adams);
    CHECK(j["p"] == 3);
    CHECK(j["coefficient_action"] == "identity");

    PsiCandidateSpec spec = psi_candidate_from_json(j);
    CHECK(spec.p == 3);
    TotalPowerOperation rebuilt =
        make_power_operation(spec.p, mul, spec.image_of_x, spec.action, {16, 8});
    CHECK(rebuilt.image_of_x == adams.image_of_x);

    Json bad = j;
    bad["coefficient_action"] = "frobenius-twist";
    CHECK_THROWS_AS(psi_candidate_from_json(bad), ParseError);
    CHECK_THROWS_AS(psi_candidate_from_json(Json::parse(R"({"p":3})")), ParseError);
}

TEST_CASE("verdict, quotient, invariants, and stage serializers keep their shapes") {
    FormalGroupLaw mul = FormalGroupLaw::multiplicative(16);
    auto tq = build_transfer_quotient(mul, 3, {16, 8});
    Json qj = quotient_to_json(tq);
    CHECK(qj["model"] == "divided-p-series");
    CHECK(qj["backend"] == "weierstrass");
    CHECK(qj["degree"] == 2);
    CHECK(qj["detected_height"] == 1);
    CHECK(qj["ideal_digits"] == 8);
    CHECK(series_from_json(qj["relation"]) == tq.relation());

    auto flat = build_transfer_quotient(FormalGroupLaw::additive(16), 3, {16, 2});
    Json fj = quotient_to_json(flat);
    CHECK(fj["backend"] == "constant");
    CHECK(fj["constant_valuation"] == 1);
    CHECK(!fj.contains("degree"));

    AndoVerdict v = ando_check(mul, 3, adams_candidate(mul, 3, {16, 8}), {16, 8});
    Json vj = verdict_to_json(v);
    CHECK(vj["status"] == "Satisfied");
    CHECK(vj["witness"].is_null());
    CHECK(vj["order"] == 16);
    CHECK(vj["precision"] == 6);

    AndoVerdict bad = ando_check(mul, 3, identity_candidate(mul, 3, {16, 8}), {16, 8});
    Json bj = verdict_to_json(bad);
    CHECK(bj["status"] == "Violated");
    CHECK(bj["witness"]["monomial"] == "x");

    auto ring = build_bcp_ring(mul, 3, {16, 6});
    Json ij = invariants_to_json(fpx_invariants(ring, mul));
    CHECK(ij["generator"] == 2);
    CHECK(ij["certified_digits"] == 5);
    CHECK(ij["basis"].size() == 2);

    Json sj = stage_reports_to_json(tower_stages(LocalizationSpec::p_local(2), 3));
    CHECK(sj.dump() ==
          R"([{"m":1,"status":"PotentialObstruction","rule":"stage 1 carries the complex orientation datum"},)"
          R"({"m":2,"status":"PotentialObstruction","rule":"a power of p: potential p-local obstruction"},)"
          R"({"m":3,"status":"Equivalence","rule":"not a power of p: p-local equivalence"}])");
}

TEST_CASE("cli: verdict exit codes and report shapes") {
    RunResult ok = run_cli("ando-check --fgl multiplicative --p 3 --psi adams");
    CHECK(ok.code == 0);
    Json rep = report_of(ok);
    CHECK(rep["command"] == "ando-check");
    CHECK(rep["inputs"]["fgl"] == "multiplicative");
    CHECK(rep["inputs"]["order"] == 16);
    CHECK(rep["inputs"]["precision"] == 8);
    CHECK(rep["result"]["status"] == "Satisfied");
    CHECK(rep["result"]["precision"] == 6);

    RunResult bad = run_cli("ando-check --fgl multiplicative --p 3 --psi identity-control");
    CHECK(bad.code == 1);
    CHECK(report_of(bad)["result"]["witness"]["monomial"] == "x");

    RunResult frob = run_cli("ando-check --fgl additive --p 5 --psi frobenius");
    CHECK(frob.code == 0);
    CHECK(report_of(frob)["result"]["status"] == "Satisfied");
}

TEST_CASE("cli: the p = 2 multiplicative discrepancy is reported verbatim") {
    RunResult r = run_cli("ando-check --fgl multiplicative --p 2 --psi adams");
    CHECK(r.code == 1);
    Json res = report_of(r)["result"];
    CHECK(res["status"] == "Violated");
    CHECK(res["witness"]["monomial"] == "x");
    CHECK(res["witness"]["lhs"] == "254");
    CHECK(res["witness"]["rhs"] == "2");
    REQUIRE(res.contains("two_gap"));
    const Json& g = res["two_gap"];
    CHECK(g["unit"] == "-1");
    CHECK(g["exact_identity_holds"] == true);
    TruncatedSeries prod = series_from_json(g["product_reduced"]);
    TruncatedSeries cand = series_from_json(g["adams_candidate_reduced"]);
    CHECK(prod == cand.scaled(Coefficient::from_int(prod.tag(), -1)));
    TruncatedSeries lift = series_from_json(g["unit_lift"]);
    CHECK(lift == TruncatedSeries::from_terms({"z"}, 16, ZZ,
                                              {{{0}, Coefficient(ZZ, 1)},
                                               {{1}, Coefficient(ZZ, 1)}}));
}

TEST_CASE("cli: inconclusive mismatches exit 2, decidable ones exit 1") {
    FormalGroupLaw G = FormalGroupLaw::from_log(honda_log(3, 1, 16));
    auto tq = build_transfer_quotient(G, 3, {16, 8});
    TruncatedSeries base = tq.reduce(lubin_product(G.to_p_adic(3, 8), 3, {16, 8}));
    TruncatedSeries noise = TruncatedSeries::from_terms(
        {"z", "x"}, 16, base.tag(), {{{1, 1}, Coefficient::from_int(base.tag(), 243)}});
    Json pj;
    pj["p"] = 3;
    pj["image_of_x"] = series_to_json(base + noise);
    pj["coefficient_action"] = "identity";
    std::string path = write_temp("far_noise_psi.json", pj.dump());

    RunResult low = run_cli("ando-check --fgl honda:1 --p 3 --psi " + path +
                            " --order 8 --precision 8");
    CHECK(low.code == 2);
    Json lowrep = report_of(low);
    CHECK(lowrep["result"]["status"] == "Inconclusive");
    CHECK(lowrep["result"]["witness"].is_null());
    // the embedded candidate is the full input, so the run is reproducible
    CHECK(lowrep["inputs"]["psi"]["image_of_x"] == pj["image_of_x"]);

    RunResult high = run_cli("ando-check --fgl honda:1 --p 3 --psi " + path +
                             " --order 16 --precision 8");
    CHECK(high.code == 1);
    CHECK(report_of(high)["result"]["witness"]["monomial"] == "z*x");
}

TEST_CASE("cli: tower reports match the library") {
    RunResult r = run_cli("tower --localization 'E(1)@3' --max 100");
    CHECK(r.code == 0);
    Json rows = report_of(r)["result"];
    std::vector<long> flagged;
    for (const auto& row : rows)
        if (row["status"] == "PotentialObstruction") flagged.push_back(row["m"].get<long>());
    CHECK(flagged == std::vector<long>{1, 3});
    CHECK(rows.size() == 100);

    RunResult text = run_cli("tower --localization p-local@2 --max 5 --format text");
    CHECK(text.code == 0);
    CHECK(text.out.find("flagged stages: 1 2 4") != std::string::npos);
}

TEST_CASE("cli: usage, file, prime, and bounds failures use distinct exit codes") {
    CHECK(run_cli("ando-check --fgl multiplicative --p 3 --psi adams --bogus 1").code == 10);
    CHECK(run_cli("no-such-command").code == 10);
    CHECK(run_cli("").code == 10);
    CHECK(run_cli("pseries --fgl multiplicative").code == 10);     // missing --p
    CHECK(run_cli("ando-check --fgl multiplicative --p 3").code == 10); // missing --psi
    CHECK(run_cli("fgl-info --fgl honda:2").code == 10);           // honda needs --p
    CHECK(run_cli("fgl-info --fgl honda:zero --p 3").code == 10);
    CHECK(run_cli("tower --localization nonsense").code == 10);

    CHECK(run_cli("pseries --fgl /no/such/file.json --p 3").code == 11);
    std::string junk = write_temp("junk.json", "{ not json");
    CHECK(run_cli("pseries --fgl " + junk + " --p 3").code == 11);
    std::string notalog = write_temp("notalog.json",
        R"({"vars":["x"],"order":4,"ring":{"tag":"ExactInt"},"terms":[{"exp":[2],"coeff":"1"}]})");
    CHECK(run_cli("pseries --fgl " + notalog + " --p 3").code == 11);

    CHECK(run_cli("pseries --fgl multiplicative --p 4").code == 12);
    CHECK(run_cli("tower --localization 'K(1)@6'").code == 12);

    CHECK(run_cli("pseries --fgl multiplicative --p 3 --order 0").code == 13);
    CHECK(run_cli("pseries --fgl multiplicative --p 3 --order 65").code == 13);
    CHECK(run_cli("quotient --fgl multiplicative --p 3 --precision 65").code == 13);
    CHECK(run_cli("tower --localization rational --max 0").code == 13);

    CHECK(run_cli("invariants --fgl additive --p 3").code == 14);
    CHECK(run_cli("quotient --fgl additive --p 3 --model bcp").code == 14);
}

TEST_CASE("cli: config file fills gaps, flags win, env sits under both") {
    std::string cfg = write_temp("prec.ini", "order=24\nprecision=4\n");
    RunResult flag = run_cli("ando-check --fgl multiplicative --p 3 --psi adams --config " + cfg +
                             " --order 12");
    CHECK(flag.code == 0);
    CHECK(report_of(flag)["inputs"]["order"] == 12);
    CHECK(report_of(flag)["inputs"]["precision"] == 4);

    RunResult nofl = run_cli("ando-check --fgl multiplicative --p 3 --psi adams --config " + cfg);
    CHECK(report_of(nofl)["inputs"]["order"] == 24);
    CHECK(report_of(nofl)["inputs"]["precision"] == 4);

    std::string full = write_temp("full.ini", "fgl=multiplicative\np=3\npsi=adams\n");
    CHECK(run_cli("ando-check --config " + full).code == 0);

    RunResult env = run_cli("ando-check --fgl multiplicative --p 3 --psi adams",
                            "FGL_LAB_DEFAULT_PRECISION=5");
    CHECK(report_of(env)["inputs"]["precision"] == 5);
    RunResult envcfg = run_cli("ando-check --fgl multiplicative --p 3 --psi adams --config " + cfg,
                               "FGL_LAB_DEFAULT_PRECISION=5");
    CHECK(report_of(envcfg)["inputs"]["precision"] == 4);
    CHECK(run_cli("tower --localization rational", "FGL_LAB_DEFAULT_PRECISION=banana").code == 10);

    std::string badkey = write_temp("badkey.ini", "order=24\nwhat=9\n");
    CHECK(run_cli("pseries --fgl multiplicative --p 3 --config " + badkey).code == 11);
    std::string badint = write_temp("badint.ini", "order=twelve\n");
    CHECK(run_cli("pseries --fgl multiplicative --p 3 --config " + badint).code == 11);
}

TEST_CASE("cli: identical runs produce identical report bodies") {
    const char* cmds[] = {
        "fgl-info --fgl multiplicative",
        "pseries --fgl honda:1 --p 3",
        "quotient --fgl multiplicative --p 5",
        "invariants --fgl multiplicative --p 3",
        "ando-check --fgl multiplicative --p 2 --psi adams",
        "tower --localization 'K(2)@2' --max 20",
    };
    for (const char* cmd : cmds) {
        RunResult a = run_cli(cmd);
        RunResult b = run_cli(cmd);
        CHECK(report_of(a).dump() == report_of(b).dump());
    }
}

TEST_CASE("cli: --out writes the same report atomically") {
    std::string path = "/tmp/fgllab_cli_out_report.json";
    std::remove(path.c_str());
    RunResult direct = run_cli("quotient --fgl multiplicative --p 3");
    RunResult filed = run_cli("quotient --fgl multiplicative --p 3 --out " + path);
    CHECK(filed.code == 0);
    CHECK(filed.out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    Json doc = Json::parse(in);
    CHECK(doc["report"].dump() == report_of(direct).dump());
    std::ifstream tmp(path + ".tmp");
    CHECK(!tmp.good());
}

TEST_CASE("cli: embedded inputs re-run to the same verdict") {
    FormalGroupLaw mul = FormalGroupLaw::multiplicative(16);
    Json pj = psi_to_json(adams_candidate(mul, 3, {16, 8}));
    std::string path = write_temp("roundtrip_psi.json", pj.dump());
    RunResult first = run_cli("ando-check --fgl multiplicative --p 3 --psi " + path);
    CHECK(first.code == 0);

    Json embedded = report_of(first)["inputs"]["psi"];
    std::string again = write_temp("roundtrip_psi2.json", embedded.dump());
    RunResult second = run_cli("ando-check --fgl multiplicative --p 3 --psi " + again);
    CHECK(second.code == 0);
    CHECK(report_of(second)["result"].dump() == report_of(first)["result"].dump());

    // a law file exported by fgl-info is accepted back as --fgl
    RunResult info = run_cli("fgl-info --fgl honda:1 --p 3 --order 12");
    std::string law = write_temp("law.json", report_of(info)["result"]["law"].dump());
    RunResult ps = run_cli("pseries --fgl " + law + " --p 3 --order 12");
    CHECK(ps.code == 0);
    RunResult ps2 = run_cli("pseries --fgl honda:1 --p 3 --order 12");
    CHECK(report_of(ps)["result"].dump() == report_of(ps2)["result"].dump());
}
