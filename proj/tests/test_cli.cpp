#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <cli_app.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out, err;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = stabclass::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json out_json(const RunResult& r) { return json::parse(r.out); }
json err_json(const RunResult& r) { return json::parse(r.err); }

} // namespace

TEST_CASE("scalar verbs print bare values in table mode") {
    RunResult r = run_cli({"j-order", "--m", "2"});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "240\n");
    CHECK(r.err.empty());

    CHECK(run_cli({"bernoulli", "--n", "2"}).out == "1/30\n");
    CHECK(run_cli({"bp-order", "--m", "3"}).out == "1448424448\n");
}

TEST_CASE("json envelope carries schema, command echo, result, provenance") {
    RunResult r = run_cli({"--json", "j-order", "--m", "2"});
    REQUIRE(r.exit_code == 0);
    json e = out_json(r);
    CHECK(e["schema_version"] == "1");
    CHECK(e["command"]["verb"] == "j-order");
    CHECK(e["command"]["options"]["m"] == "2");
    CHECK(e["result"]["value"] == "240");
    CHECK(e["provenance"]["m"] == 2);
}

TEST_CASE("wall enumeration over json") {
    RunResult r = run_cli({"wall", "enumerate", "--m", "1", "--alpha", "56", "--beta", "6",
                           "--json"});
    REQUIRE(r.exit_code == 0);
    json e = out_json(r);
    CHECK(e["command"]["verb"] == "wall");
    CHECK(e["command"]["subcommand"] == "enumerate");
    CHECK(e["result"]["d"] == "2");
    CHECK(e["result"]["A"] == "84");
    CHECK(e["result"]["count_stable_mod_spheres"] == "4");
    json members = json::array({json::array({"2", "168"}), json::array({"6", "56"}),
                                json::array({"8", "42"}), json::array({"14", "24"})});
    CHECK(e["result"]["members"] == members);
    json family = json::array({json::array({"2", "168"}), json::array({"8", "42"})});
    CHECK(e["result"]["homotopy_family"] == family);
    CHECK(e["result"]["homotopy_lower"] == "2");
    CHECK(e["result"]["homotopy_upper"] == "43");
    CHECK(e["provenance"]["j"] == "24");
    CHECK(e["provenance"]["c"] == "2");
    CHECK(e["provenance"]["bp"] == "28");
    CHECK(e["provenance"]["bp_source"] == "default");
    CHECK(e["provenance"]["A_prime"] == "12");
    CHECK(e["provenance"]["d_prime"] == "14");
    CHECK(e["provenance"]["jbar"] == "12");
}

TEST_CASE("output is byte-for-byte deterministic") {
    std::vector<std::string> cmd = {"--json", "wall", "enumerate", "--m", "1", "--a", "28",
                                    "--b", "3"};
    RunResult r1 = run_cli(cmd), r2 = run_cli(cmd);
    CHECK(r1.out == r2.out);
    CHECK(r1.exit_code == 0);

    RunResult s1 = run_cli({"--json", "selftest"}), s2 = run_cli({"--json", "selftest"});
    CHECK(s1.out == s2.out);
}

TEST_CASE("comparisons answer in both modes") {
    RunResult t = run_cli({"wall", "compare", "--m", "1", "--alpha", "56", "--beta", "6",
                           "--alpha2", "2", "--beta2", "168", "--relation", "stable"});
    CHECK(t.exit_code == 0);
    CHECK(t.out == "equivalent\n");

    RunResult f = run_cli({"--json", "wall", "compare", "--m", "1", "--alpha", "56", "--beta",
                           "6", "--alpha2", "2", "--beta2", "168", "--relation",
                           "almost-diffeo"});
    CHECK(out_json(f)["result"]["equivalent"] == false);
    CHECK(out_json(f)["result"]["relation"] == "almost-diffeo");

    RunResult h = run_cli({"wall", "compare", "--m", "1", "--alpha", "2", "--beta", "24",
                           "--alpha2", "2", "--beta2", "48", "--relation", "homotopy", "--bp",
                           "1"});
    CHECK(h.out == "equivalent\n");
}

TEST_CASE("n4k and spinc verbs") {
    CHECK(run_cli({"n4k", "enumerate", "--k", "2", "--product", "60"}).out ==
          "(1,60) (3,20) (4,15) (5,12)\n");
    CHECK(run_cli({"n4k", "witness", "--k", "2", "--n", "4"}).out ==
          "product 60: (1,60) (3,20) (4,15) (5,12)\n");
    CHECK(run_cli({"n4k", "compare", "--k", "2", "--pair1", "1,60", "--pair2", "3,20",
                   "--relation", "stable"})
              .out == "equivalent\n");
    CHECK(run_cli({"n4k", "compare", "--k", "2", "--pair1", "1,60", "--pair2", "3,20",
                   "--relation", "homotopy"})
              .out == "not equivalent\n");
    CHECK(run_cli({"spinc", "census", "--c1sq", "48"}).out == "(2,12) (4,6)\n");
    CHECK(run_cli({"spinc", "census", "--c1sq", "-48"}).out == "(2,-12) (4,-6)\n");
    CHECK(run_cli({"spinc", "orbits", "--c1sq", "32"}).out == "(2,8) (4,4)\n");
    CHECK(run_cli({"spinc", "compare", "--s1", "2,12", "--s2", "-2,-12", "--relation",
                   "equiv"})
              .out == "equivalent\n");

    json e = out_json(run_cli({"--json", "spinc", "census", "--c1sq", "48"}));
    CHECK(e["result"]["count"] == "2");
    CHECK(e["provenance"]["Q"] == "6");
}

TEST_CASE("form verb accepts bare sign characters and negative markings") {
    CHECK(run_cli({"form", "equiv", "--sign1", "+", "--f1", "3,2", "--sign2", "+", "--f2",
                   "2,3", "--modulus", "0"})
              .out == "equivalent\n");
    CHECK(run_cli({"form", "equiv", "--sign1", "+", "--f1", "2,-3", "--sign2", "-", "--f2",
                   "2,3", "--modulus", "0", "--reversal"})
              .out == "equivalent\n");
    CHECK(run_cli({"form", "equiv", "--sign1", "+", "--f1", "3,2", "--sign2", "-", "--f2",
                   "3,2", "--modulus", "0", "--reversal"})
              .out == "not equivalent\n");
    CHECK(run_cli({"form", "equiv", "--sign1", "+", "--f1", "22,3", "--sign2", "+", "--f2",
                   "2,21", "--modulus", "24"})
              .out == "equivalent\n");
}

TEST_CASE("oracle verb reports brute force and formula together") {
    json e = out_json(run_cli({"--json", "oracle", "orbit-count", "--modulus", "24"}));
    CHECK(e["result"]["orbits"] == "157");
    CHECK(e["result"]["formula"] == "157");
}

TEST_CASE("usage problems exit 2 with a structured error") {
    RunResult r = run_cli({"no-such-verb"});
    CHECK(r.exit_code == 2);
    CHECK(err_json(r)["error"]["code"] == "usage");
    CHECK(r.out.empty());

    CHECK(run_cli({"j-order"}).exit_code == 2);
    CHECK(run_cli({"wall", "invariants", "--m", "1", "--alpha", "56"}).exit_code == 2);
    CHECK(run_cli({"wall", "invariants", "--m", "1", "--alpha", "56", "--beta", "6", "--a",
                   "28", "--b", "3"})
              .exit_code == 2);
    CHECK(run_cli({"j-order", "--m", "two"}).exit_code == 2);
    CHECK(run_cli({"n4k", "compare", "--k", "2", "--pair1", "1;60", "--pair2", "3,20",
                   "--relation", "stable"})
              .exit_code == 2);
    CHECK(run_cli({"--json", "--table", "j-order", "--m", "2"}).exit_code == 2);
    CHECK(run_cli({"wall", "compare", "--m", "1", "--alpha", "56", "--beta", "6", "--alpha2",
                   "2", "--beta2", "168", "--relation", "smooth"})
              .exit_code == 2);
}

TEST_CASE("domain problems exit 3 with the library's stable code") {
    RunResult r = run_cli({"wall", "invariants", "--m", "1", "--alpha", "3", "--beta", "6"});
    CHECK(r.exit_code == 3);
    CHECK(err_json(r)["error"]["code"] == "parity-violation");

    RunResult s = run_cli({"spinc", "census", "--c1sq", "12"});
    CHECK(s.exit_code == 3);
    CHECK(err_json(s)["error"]["code"] == "not-characteristic-square");

    RunResult b = run_cli({"wall", "invariants", "--m", "1", "--alpha", "2", "--beta", "2"});
    CHECK(b.exit_code == 3);
    CHECK(err_json(b)["error"]["code"] == "boundary-not-standard-sphere");

    RunResult j = run_cli({"j-order", "--m", "0"});
    CHECK(j.exit_code == 3);
    CHECK(err_json(j)["error"]["code"] == "invalid-argument");
}

TEST_CASE("selftest verb names every check and passes") {
    RunResult r = run_cli({"--json", "selftest"});
    REQUIRE(r.exit_code == 0);
    json e = out_json(r);
    CHECK(e["result"]["passed"] == true);
    REQUIRE(e["result"]["checks"].size() == 12);
    for (const auto& c : e["result"]["checks"]) {
        CHECK(c["passed"] == true);
        CHECK(!c["name"].get<std::string>().empty());
    }

    RunResult t = run_cli({"selftest"});
    CHECK(t.exit_code == 0);
    CHECK(t.out.find("PASS") != std::string::npos);
    CHECK(t.out.find("all checks passed") != std::string::npos);
    CHECK(t.out.find("FAIL") == std::string::npos);
}

TEST_CASE("bp override is honored and reported") {
    json e = out_json(run_cli({"--json", "wall", "invariants", "--m", "1", "--alpha", "2",
                               "--beta", "2", "--bp", "1"}));
    CHECK(e["result"]["d"] == "2");
    CHECK(e["provenance"]["bp"] == "1");
    CHECK(e["provenance"]["bp_source"] == "override");
}
