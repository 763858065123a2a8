#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "filtered_oracle.hpp"
#include "specseq/bicomplex_ops.hpp"
#include "specseq/errors.hpp"
#include "specseq/filtered_ops.hpp"
#include "specseq/random.hpp"
#include "specseq_app/commands.hpp"
#include "specseq_app/io.hpp"
#include "specseq_app/verify.hpp"

using namespace specseq;
using namespace specseq::app;

namespace {

const Field Q = Field::rationals();

std::string data(const std::string& name) { return std::string(SPECSEQ_DATA_DIR) + "/" + name; }

struct Run {
    int code = -1;
    std::string out, err;
    Json json() const { return Json::parse(out); }
    Json diagnostic() const { return Json::parse(err); }
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string temp_file(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / ("specseq_test_" + name);
    std::ofstream(path, std::ios::binary) << text;
    return path.string();
}

template <class T, class Parse>
void round_trip(const T& x, Parse parse) {
    const std::string text = dump(to_json(x));
    const T back = parse(parse_json(text));
    CHECK(back == x);
    CHECK(dump(to_json(back)) == text);
}

}  // namespace

TEST_CASE("json round trip of complexes and maps") {
    for (Field f : {Q, Field::prime(5)}) {
        for (int k = 0; k < 20; ++k) {
            Rng rng(Rng::derive(1, "json", k));
            const FilteredComplex a = random_filtered(rng, f), b = random_filtered(rng, f);
            round_trip(a, [&](const Json& j) { return filtered_from_json(j, Q); });
            round_trip(random_chain_map(rng, a, b), [&](const Json& j) { return chain_map_from_json(j, Q); });
            const Bicomplex x = random_bicomplex(rng, f), y = random_bicomplex(rng, f);
            round_trip(x, [&](const Json& j) { return bicomplex_from_json(j, Q); });
            round_trip(random_bimap(rng, x, y), [&](const Json& j) { return bimap_from_json(j, Q); });
        }
    }
    round_trip(FilteredComplex(Q), [&](const Json& j) { return filtered_from_json(j, Q); });
}

TEST_CASE("json grammar details") {
    const Json j = parse_json(R"({"degrees":[{"n":0,"weights":[0,1]},{"n":1,"dim":1,"weights":[0]}],
                                 "differentials":{"0":[[2,"-2/4"]]}})");
    const FilteredComplex a = filtered_from_json(j, Q);
    CHECK(a.d(0) == Matrix(Q, 1, 2) + Q.from_int(2) * Matrix::unit(Q, 2, 0).transpose() +
                        Q.from_ratio(-1, 2) * Matrix::unit(Q, 2, 1).transpose());
    CHECK(to_json(a)["differentials"]["0"] == Json::parse(R"([["2","-1/2"]])"));
    CHECK(to_json(a)["field"] == "Q");
    CHECK(filtered_from_json(parse_json(R"({"field":{"Fp":3}})"), Q).field() == Field::prime(3));
    CHECK(to_json(Field::prime(7)) == Json::parse(R"({"Fp":7})"));
    CHECK(filtered_from_json(parse_json("{}"), Q).is_zero());
    CHECK(detect_kind(parse_json("{}")) == InputKind::filtered);
    CHECK(detect_kind(parse_json(R"({"cells":[]})")) == InputKind::bicomplex);
    CHECK(detect_kind(parse_json(R"({"source":{"cells":[]},"target":{"cells":[]}})")) == InputKind::bimap);
    CHECK(lower_set_from_text("[[1],[0,1]]") == LowerSet{{1, false}, {1, true}});
    CHECK(element_from_text("[0, 2]") == LatticeElement{0, 2});
    CHECK(element_from_text("1,3") == LatticeElement{1, 3});
}

TEST_CASE("json diagnostics") {
    try {
        parse_json(R"({"degrees": [})");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 13);
    }
    try {
        parse_json("");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 0);
    }
    auto bad = [](const char* text) { return filtered_from_json(parse_json(text), Q); };
    CHECK_THROWS_AS(bad(R"({"degrees":[{"n":0,"dim":2,"weights":[0]}]})"), ParseError);
    CHECK_THROWS_AS(bad(R"({"degrees":[{"n":0,"weights":[0]},{"n":0,"weights":[1]}]})"), ParseError);
    CHECK_THROWS_AS(bad(R"({"degrees":[{"n":0,"weights":[0]}],"differentials":{"0":[["1"]]}})"), ParseError);
    CHECK_THROWS_AS(bad(R"({"degrees":[{"n":0,"weights":[0]},{"n":1,"weights":[0]}],"differentials":{"0":[["x"]]}})"), ParseError);
    CHECK_THROWS_AS(bad(R"({"degrees":[{"n":0,"weights":[0]},{"n":1,"weights":[0]}],"differentials":{"0":[[1.5]]}})"), ParseError);
    CHECK_THROWS_AS(bad(R"({"degrees":[{"n":"0","weights":[0]}]})"), ParseError);
    CHECK_THROWS_AS(bad(R"({"field":"R"})"), ParseError);
    // d^2 != 0.
    CHECK_THROWS_AS(bad(R"({"degrees":[{"n":0,"weights":[0]},{"n":1,"weights":[0]},{"n":2,"weights":[0]}],
                           "differentials":{"0":[["1"]],"1":[["1"]]}})"),
                    ValidationError);
    CHECK_THROWS_AS(bicomplex_from_json(parse_json(R"({"cells":[{"i":0,"j":0,"dim":1}],"d0":{"0":[]}})"), Q), ParseError);
    CHECK_THROWS_AS(lower_set_from_text("[[2]]"), PreconditionError);
    CHECK_THROWS_AS(lower_set_from_text("[[0]]"), ParseError);
}

TEST_CASE("pages command") {
    const Run z = cli({"pages", data("z1_0_0.json"), "--r", "2"});
    CHECK(z.code == exit_pass);
    CHECK(z.json()["zero"] == true);
    CHECK(z.json()["entries"].empty());
    // Counting over F_3 agrees on the same complex.
    Json z1_json = parse_json(read_file(data("z1_0_0.json")));
    z1_json.erase("field");
    const FilteredComplex z1 = filtered_from_json(z1_json, Field::prime(3));
    for (int p = -3; p <= 3; ++p) {
        for (int n = -1; n <= 2; ++n) CHECK(oracle::brute_page_dim(z1, 2, p, n) == 0);
    }
    const Run one = cli({"pages", data("z1_0_0.json"), "--r", "1"});
    CHECK(one.json()["entries"].size() == 2);
    CHECK(one.json()["differentials"].size() == 1);
    CHECK(oracle::brute_page_dim(z1, 1, 0, 0) == 1);
    CHECK(oracle::brute_page_dim(z1, 1, -1, 1) == 1);

    CHECK(cli({"pages", data("empty.json")}).json()["entries"].empty());
    const Run blank = cli({"pages", temp_file("blank.json", "  \n")});
    CHECK(blank.code == exit_pass);
    CHECK(blank.json()["entries"].empty());

    const Run bi = cli({"pages", data("zw_2_0_0.json"), "--r", "2"});
    CHECK(bi.json()["flavor"] == "bicomplex");
    CHECK(bi.json()["entries"].size() == 2);
}

TEST_CASE("parse errors exit with 2 and name the byte offset") {
    const Run r = cli({"pages", temp_file("bad.json", "{\"degrees\": [}")});
    CHECK(r.code == exit_usage);
    CHECK(r.out.empty());
    CHECK(r.diagnostic()["error"] == "parse");
    CHECK(r.diagnostic()["offset"] == 13);
    CHECK(cli({"pages", "/nonexistent/file.json"}).code == exit_usage);
    const Run v = cli({"pages", temp_file("dd.json", R"({"degrees":[{"n":0,"weights":[0]},{"n":1,"weights":[0]},{"n":2,"weights":[0]}],
                                                       "differentials":{"0":[["1"]],"1":[["1"]]}})")});
    CHECK(v.code == exit_usage);
    CHECK(v.diagnostic()["error"] == "validation");
}

TEST_CASE("usage errors exit with 2") {
    CHECK(cli({}).code == exit_usage);
    CHECK(cli({"frobnicate"}).code == exit_usage);
    CHECK(cli({"pages"}).code == exit_usage);
    CHECK(cli({"check", "nonsense", data("gamma_1.json")}).code == exit_usage);
    CHECK(cli({"check", "fib", data("gamma_1.json")}).code == exit_usage);
    CHECK(cli({"check", "fib", data("gamma_1.json"), "--s-set", "1,x"}).code == exit_usage);
    CHECK(cli({"check", "fib", data("psi_1.json"), "--s-set", "1"}).code == exit_usage);
    CHECK(cli({"check", "effective-mono", data("psi_1.json")}).code == exit_usage);
    CHECK(cli({"check", "weq", data("z1_0_0.json")}).code == exit_usage);
    CHECK(cli({"pages", data("gamma_1.json")}).code == exit_usage);
    CHECK(cli({"--field", "Fp:3", "pages", data("z1_0_0.json")}).code == exit_usage);
    CHECK(cli({"--field", "Fp:4", "pages", data("empty.json")}).code == exit_usage);
    CHECK(cli({"ladjoint", data("z1_0_0.json"), "--window", "0:1"}).code == exit_usage);
    CHECK(cli({"lattice", "join", "0,2"}).code == exit_usage);
    CHECK(cli({"lattice", "alpha", "-1"}).code == exit_usage);
    CHECK(cli({"verify", "nothing"}).code == exit_usage);
    CHECK(cli({"verify", "--replay", "no_such_property:1"}).code == exit_usage);
    const Run help = cli({"--help"});
    CHECK(help.code == exit_pass);
    CHECK(help.out.find("verify") != std::string::npos);
}

TEST_CASE("check command") {
    const Run id = cli({"check", "weq", data("identity_z1.json"), "--r", "0"});
    CHECK(id.code == exit_pass);
    CHECK(id.json()["verdict"] == true);
    CHECK(cli({"check", "acyclic-fib", data("identity_z1.json"), "--s-set", "0,1,3"}).code == exit_pass);
    CHECK(cli({"check", "effective-mono", data("identity_z1.json")}).code == exit_pass);

    // gamma_1 fails exactly at s = 1, at the bidegree of its index (1, 0).
    const Run g = cli({"check", "fib", data("gamma_1.json"), "--s-set", "0,1,3"});
    CHECK(g.code == exit_findings);
    const Json w = g.json()["witness"]["fibration"];
    CHECK(w["s"] == 1);
    CHECK(w["bidegree"] == Json{{"p", 1}, {"q", 1}});
    CHECK(w["cycle"].is_array());
    CHECK(cli({"check", "fib", data("gamma_1.json"), "--s-set", "0,2,3"}).code == exit_pass);

    const Run z = cli({"check", "weq", data("zero_map.json"), "--r", "0"});
    CHECK(z.code == exit_findings);
    CHECK(z.json()["witness"]["bidegrees"] ==
          Json::parse(R"([{"p":0,"q":0,"rank":0,"source_dim":1,"target_dim":1}])"));
    CHECK(cli({"check", "fib", data("zero_map.json"), "--s-set", "0"}).code == exit_findings);
    CHECK(cli({"check", "effective-mono", data("zero_map.json")}).json()["witness"]["injective"] == false);

    CHECK(cli({"check", "fib", data("psi_1.json"), "--s-set", "0,1"}).code == exit_pass);
    CHECK(cli({"--field", "Q", "check", "weq", data("psi_1.json"), "--r", "0"}).code == exit_findings);
}

TEST_CASE("cone, tot and ladjoint commands") {
    const Run c = cli({"cone", data("identity_z1.json"), "--r", "1"});
    REQUIRE(c.code == exit_pass);
    const FilteredComplex cc = filtered_from_json(c.json(), Q);
    CHECK(cc == cone(identity_map(rep_cycle(Q, 1, 0, 0)), 1).complex);
    const Run cb = cli({"cone", data("zw_2_0_0.json"), "--r", "1"});
    CHECK(bicomplex_from_json(cb.json(), Q) == cone(rep_witness_cycle(Q, 2, 0, 0), 1));
    CHECK(cli({"cone", data("z1_0_0.json")}).code == exit_usage);

    const Run t = cli({"tot", data("zw_2_0_0.json")});
    CHECK(filtered_from_json(t.json(), Q) == tot_pi(rep_witness_cycle(Q, 2, 0, 0)));
    const Run tm = cli({"tot", data("psi_1.json")});
    CHECK(chain_map_from_json(tm.json(), Q) == tot_pi(psi(single(Q, {0, 0}), 1)));

    const Run l = cli({"ladjoint", data("z1_0_0.json"), "--window", "-4:2:2"});
    REQUIRE(l.code == exit_pass);
    const TruncatedBicomplex expect = l_adjoint(rep_cycle(Q, 1, 0, 0), Window{-4, 2, 2});
    CHECK(bicomplex_from_json(l.json()["body"], Q) == expect.body);
    CHECK(l.json()["window"] == Json{{"col_lo", -4}, {"col_hi", 2}, {"margin", 2}});
    CHECK(l.json()["tail"]["side"] == "left");
}

TEST_CASE("lattice command") {
    CHECK(cli({"lattice", "join", "1", "0,1"}).json()["result"] == Json::parse("[0,1]"));
    CHECK(cli({"lattice", "meet", "[0,2]", "[1,2]"}).json()["result"] == Json::parse("[2]"));
    CHECK(cli({"lattice", "leq", "0,1", "1,2"}).json()["result"] == Json{{"alpha", true}, {"generators", true}});
    CHECK(cli({"lattice", "alpha", "0,2"}).json()["result"] == Json::parse("[[1],[2],[0,2]]"));
    CHECK(cli({"lattice", "beta", "[[1],[0,1]]"}).json()["result"] == Json::parse("[0,1]"));
    CHECK(cli({"lattice", "beta", "[]"}).json()["result"] == Json::parse("[0]"));
}

TEST_CASE("out flag writes the report to a file") {
    const auto path = (std::filesystem::temp_directory_path() / "specseq_test_out.json").string();
    std::filesystem::remove(path);
    const Run r = cli({"--out", path, "lattice", "join", "1", "2"});
    CHECK(r.code == exit_pass);
    CHECK(r.out.empty());
    CHECK(Json::parse(read_file(path))["result"] == Json::parse("[2]"));
}

TEST_CASE("verify command") {
    const Run lat = cli({"verify", "lattice", "--r", "3"});
    CHECK(lat.code == exit_pass);
    const Json info = lat.json()["suites"]["lattice"]["properties"]["lattice_laws"]["cases"][0]["info"];
    CHECK(info["triples"] == 3375);
    CHECK(info["elements"] == 15);

    const Run adj = cli({"verify", "adjunction", "--seed", "7", "--cases", "50"});
    CHECK(adj.code == exit_pass);
    CHECK(adj.json()["suites"]["adjunction"]["summary"]["status"] == "pass");
    CHECK(adj.json()["suites"]["adjunction"]["properties"]["l_tot_adjunction"]["cases"].size() == 50);

    const Run fixtures = cli({"verify", "all", "--cases", "0"});
    CHECK(fixtures.code == exit_pass);
    const Json rep = fixtures.json();
    CHECK(rep["suites"].size() == 5);
    for (const auto& [suite, body] : rep["suites"].items()) {
        for (const auto& [name, prop] : body["properties"].items()) {
            CHECK(prop["random"] == false);
            CHECK(prop["cases"].size() == 1);
        }
    }
    CHECK(rep["summary"]["cases"] == 7);
}

TEST_CASE("verify is deterministic") {
    const std::vector<std::string> args{"verify", "pages", "--seed", "3", "--cases", "4"};
    const Run a = cli(args), b = cli(args);
    CHECK(a.out == b.out);
    std::vector<std::string> parallel = args;
    parallel.insert(parallel.end(), {"--jobs", "4"});
    CHECK(cli(parallel).out == a.out);
    CHECK(cli({"verify", "pages", "--seed", "4", "--cases", "4"}).out != a.out);

    // A case replays from the seed printed next to it.
    const Json cases = a.json()["suites"]["pages"]["properties"]["cone_criterion"]["cases"];
    const std::uint64_t seed = cases[2]["seed"].get<std::uint64_t>();
    CHECK(seed == Rng::derive(3, "cone_criterion", 2));
    const Run replay = cli({"verify", "--replay", "cone_criterion:" + std::to_string(seed)});
    CHECK(replay.code == exit_pass);
    CHECK(replay.json()["suites"]["pages"]["properties"]["cone_criterion"]["cases"][0]["checks"] == cases[2]["checks"]);
}

TEST_CASE("failing and throwing cases carry a witness") {
    const std::vector<Property> props{
        {"demo", "always_fails", true,
         [](Field f, std::uint64_t seed, const VerifyConfig&) {
             Rng rng(seed);
             return Outcome{.checks = {{"impossible", false, "by design"}}, .instance = to_json(random_filtered(rng, f))};
         }},
        {"demo", "throws", false,
         [](Field, std::uint64_t, const VerifyConfig&) -> Outcome { throw InternalError("boom"); }},
        {"demo", "passes", false, [](Field, std::uint64_t, const VerifyConfig&) { return Outcome{.checks = {{"fine", true, ""}}}; }},
    };
    VerifyConfig cfg;
    cfg.cases = 3;
    cfg.jobs = 2;
    const VerifyResult res = run_properties(props, cfg);
    CHECK_FALSE(res.pass());
    CHECK(res.failed_cases == 4);
    const Json& demo = res.report["suites"]["demo"];
    CHECK(demo["summary"]["failed_cases"] == 4);
    CHECK(demo["summary"]["cases"] == 5);
    const Json& fail = demo["properties"]["always_fails"]["cases"][1];
    CHECK(fail["status"] == "fail");
    CHECK(fail["checks"][0]["witness"]["detail"] == "by design");
    CHECK(filtered_from_json(fail["instance"], Q) == [&] {
        Rng rng(Rng::derive(0, "always_fails", 1));
        return random_filtered(rng, Q);
    }());
    CHECK(fail["replay"].get<std::string>().find("always_fails:") != std::string::npos);
    const Json& boom = demo["properties"]["throws"]["cases"][0];
    CHECK(boom["checks"][0]["check"] == "exception");
    CHECK(boom["checks"][0]["witness"]["detail"] == "boom");
    CHECK(demo["properties"]["passes"]["cases"][0]["status"] == "pass");
    cfg.cases = -1;
    CHECK_THROWS_AS(run_properties(props, cfg), PreconditionError);
}
