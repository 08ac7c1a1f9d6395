#include "dot_grammar.hpp"

#include "obspart/cli/cli.hpp"
#include "obspart/cli/dot.hpp"
#include "obspart/cli/io.hpp"
#include "obspart/cli/report.hpp"
#include "obspart/errors.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>

using namespace obspart;
using namespace obspart::cli;
using nlohmann::ordered_json;

namespace {

const std::filesystem::path kFixtures = OBSPART_FIXTURE_DIR;

std::string fixture(const char* name) { return (kFixtures / name).string(); }

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "obspart");
  std::ostringstream out, err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

ordered_json json_of(const Result& r) { return ordered_json::parse(r.out); }

std::vector<std::vector<int>> witnesses(const ordered_json& j) {
  return j["placement"]["witnesses"].get<std::vector<std::vector<int>>>();
}

} // namespace

TEST_CASE("system JSON parsing") {
  LoadedSystem chain = load_system(fixture("chain.json"));
  CHECK(chain.sys.n == 3);
  CHECK(chain.sys.p == 1);
  CHECK(chain.sys.a_pattern == std::vector<Entry>{{1, 0}, {2, 1}});
  CHECK(chain.sys.h_pattern == std::vector<Entry>{{0, 2}});
  CHECK(label_of(chain, 2) == "x3");

  LoadedSystem named = parse_system_json(R"({"n": 2, "p": 0, "a": [[2, 1]], "h": [], "names": ["tank", "pump"]})");
  CHECK(label_of(named, 1) == "pump");

  CHECK_THROWS_WITH(load_system(fixture("malformed.json")), Catch::Matchers::ContainsSubstring("line 4, column 20"));
  CHECK_THROWS_WITH(parse_system_json(R"({"n": 1, "p": 0, "a": [], "h": [], "extra": 1})"),
                    Catch::Matchers::ContainsSubstring("unknown key \"extra\""));
  CHECK_THROWS_WITH(parse_system_json(R"({"n": 1, "p": 0, "a": []})"), Catch::Matchers::ContainsSubstring("\"h\""));
  CHECK_THROWS_AS(parse_system_json(R"({"n": -1, "p": 0, "a": [], "h": []})"), InputError);
  CHECK_THROWS_WITH(parse_system_json(R"({"n": 2, "p": 0, "a": [[0, 1]], "h": []})"),
                    Catch::Matchers::ContainsSubstring("1-based"));
  CHECK_THROWS_AS(parse_system_json(R"({"n": 2, "p": 0, "a": [[1, 2], [1, 2]], "h": []})"), InputError);
  CHECK_THROWS_AS(parse_system_json(R"({"n": 2, "p": 0, "a": [[1, 2, 3]], "h": []})"), InputError);
  CHECK_THROWS_AS(parse_system_json(R"({"n": 2, "p": 0, "a": [], "h": [], "names": ["a"]})"), InputError);
  CHECK_THROWS_AS(parse_system_json("[1, 2]"), InputError);
  CHECK_THROWS_AS(load_system(fixture("does_not_exist.json")), InputError);
}

TEST_CASE("Matrix Market import") {
  LoadedSystem mm = load_system(fixture("chain_a.mtx"), fixture("chain_h.mtx"));
  CHECK(canonical(mm.sys) == canonical(load_system(fixture("chain.json")).sys));
  CHECK(load_system(fixture("chain_a.mtx")).sys.p == 0);

  CHECK_THROWS_WITH(parse_matrix_market("%%MatrixMarket matrix coordinate real general\n1 1 0\n"),
                    Catch::Matchers::ContainsSubstring("line 1"));
  CHECK_THROWS_WITH(parse_matrix_market("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n3 1\n"),
                    Catch::Matchers::ContainsSubstring("line 3"));
  CHECK_THROWS_AS(parse_matrix_market("%%MatrixMarket matrix coordinate pattern general\n2 2 2\n1 1\n"), InputError);
  PatternMatrix rect = parse_matrix_market("%%MatrixMarket matrix coordinate pattern general\n2 3 0\n");
  CHECK_THROWS_AS(system_from_matrix_market(rect, nullptr), InputError);
  CHECK_THROWS_AS(load_system(fixture("chain.json"), fixture("chain_h.mtx")), InputError);
}

TEST_CASE("analyze command") {
  SECTION("chain") {
    Result r = invoke({"analyze", fixture("chain.json")});
    REQUIRE(r.code == kOk);
    ordered_json j = json_of(r);
    CHECK(j["version"] == "obspart/1");
    CHECK(j["alpha_classes"].size() == 1);
    CHECK(j["alpha_classes"][0]["states"] == ordered_json::array({3}));
    CHECK(j["placement"]["count"] == 1);
    CHECK(j["labels"] == ordered_json::array({"alpha"}));
    CHECK(j["numeric"].is_null());
  }
  SECTION("twenty-state fixture") {
    Result r = invoke({"analyze", fixture("twenty_state.json")});
    REQUIRE(r.code == kOk);
    ordered_json j = json_of(r);
    CHECK(j["placement"]["count"] == 3);
    CHECK(witnesses(j) == std::vector<std::vector<int>>{{4, 9, 12}});
    CHECK(invoke({"analyze", fixture("twenty_state.json"), "--require-observable"}).code == kUnobservable);
    CHECK(invoke({"analyze", fixture("chain.json"), "--require-observable"}).code == kOk);
  }
  SECTION("text format") {
    Result r = invoke({"analyze", fixture("twenty_state.json"), "--format", "text"});
    CHECK(r.out.find("alpha classes: {x2, x7, x9} {x4, x15} {x10, x12}") != std::string::npos);
    CHECK(r.out.find("minimal sensor count: 3") != std::string::npos);
  }
  SECTION("input errors") {
    Result bad = invoke({"analyze", fixture("malformed.json")});
    CHECK(bad.code == kInputError);
    CHECK(bad.err.find("line 4, column 20") != std::string::npos);
    CHECK(invoke({"analyze"}).code == kInputError);
    CHECK(invoke({"frobnicate", fixture("chain.json")}).code == kInputError);
    CHECK(invoke({"analyze", fixture("chain.json"), "--format", "xml"}).code == kInputError);
  }
  SECTION("help") {
    Result r = invoke({"--help"});
    CHECK(r.code == kOk);
    CHECK(r.out.find("analyze") != std::string::npos);
  }
}

TEST_CASE("place command") {
  Result forbid = invoke({"place", fixture("twenty_state.json"), "--forbid", "12"});
  REQUIRE(forbid.code == kOk);
  ordered_json j = json_of(forbid);
  CHECK(j["placement"]["count"] == 4);
  CHECK(j["placement"]["forbidden"] == ordered_json::array({12}));
  for (const auto& w : witnesses(j)) {
    CHECK(std::find(w.begin(), w.end(), 12) == w.end());
  }

  Result none = invoke({"place", fixture("twenty_state.json"), "--forbid", "none"});
  Result plain = invoke({"analyze", fixture("twenty_state.json")});
  CHECK(json_of(none)["placement"] == json_of(plain)["placement"]);

  Result infeasible = invoke({"place", fixture("chain.json"), "--forbid", "3"});
  CHECK(infeasible.code == kInfeasible);
  CHECK(infeasible.err.find("{x3}") != std::string::npos);

  CHECK(invoke({"place", fixture("chain.json"), "--forbid", "9"}).code == kInputError);
  CHECK(invoke({"place", fixture("chain.json"), "--forbid", "x"}).code == kInputError);

  Result all = invoke({"place", fixture("chain.json"), "--all-witnesses"});
  CHECK(witnesses(json_of(all)) == std::vector<std::vector<int>>{{3}});
  // The guard keeps enumeration to n <= 15.
  CHECK(invoke({"place", fixture("twenty_state.json"), "--all-witnesses"}).code == kInputError);

  Result list = invoke({"place", fixture("twenty_state.json"), "--forbid", "12,4"});
  CHECK(json_of(list)["placement"]["forbidden"] == ordered_json::array({4, 12}));
}

TEST_CASE("verify command") {
  Result ok = invoke({"verify", fixture("chain.json"), "--trials", "100"});
  REQUIRE(ok.code == kOk);
  ordered_json j = json_of(ok);
  CHECK(j["numeric"]["agreement"] == 1.0);
  CHECK(j["numeric"]["trials"] == 100);
  CHECK(j["numeric"]["gramian_rank"] == 3);
  CHECK(j["verdict"]["observable"] == true);

  Result unobs = invoke({"verify", fixture("chain_unobservable.json"), "--format", "text"});
  CHECK(unobs.code == kOk);
  CHECK(unobs.out.find("verdict: unobservable") != std::string::npos);
  CHECK(unobs.out.find("gramian rank 1 of 3") != std::string::npos);

  CHECK(invoke({"verify", fixture("chain.json"), "--tol", "0"}).code == kInputError);
  CHECK(invoke({"verify", fixture("chain.json"), "--tol", "-1e-8"}).code == kInputError);
  CHECK(invoke({"verify", fixture("chain.json"), "--trials", "0"}).code == kInputError);
  // A threshold this coarse discards genuine singular values: the numeric
  // side no longer matches the structure.
  Result coarse = invoke({"verify", fixture("chain.json"), "--tol", "0.999"});
  CHECK(coarse.code == kDisagreement);
}

TEST_CASE("seed selection: flag beats OBSPART_SEED") {
  ::setenv("OBSPART_SEED", "1234", 1);
  CHECK(json_of(invoke({"verify", fixture("chain.json")}))["numeric"]["seed"] == 1234);
  CHECK(json_of(invoke({"verify", fixture("chain.json"), "--seed", "7"}))["numeric"]["seed"] == 7);
  ::setenv("OBSPART_SEED", "banana", 1);
  CHECK(invoke({"verify", fixture("chain.json")}).code == kInputError);
  ::unsetenv("OBSPART_SEED");
  CHECK(json_of(invoke({"verify", fixture("chain.json")}))["numeric"]["seed"] == 0);
}

TEST_CASE("export-dot") {
  SECTION("chain") {
    Result r = invoke({"export-dot", fixture("chain.json")});
    REQUIRE(r.code == kOk);
    testing::DotGraph g = testing::check_dot(r.out);
    CHECK(g.directed);
    std::size_t states = 0, measurements = 0;
    for (const auto& n : g.nodes) {
      (n[0] == 'x' ? states : measurements) += 1;
    }
    CHECK(states == 3);
    CHECK(measurements == 1);
    CHECK(g.edges.size() == 3);
  }
  SECTION("alpha colouring of the twenty-state fixture") {
    Result r = invoke({"export-dot", fixture("twenty_state.json"), "--color-by", "alpha"});
    testing::DotGraph g = testing::check_dot(r.out);
    std::set<std::string> fills;
    for (const auto& [node, attrs] : g.node_attrs) {
      if (attrs.contains("fillcolor")) {
        fills.insert(attrs.at("fillcolor"));
      }
    }
    CHECK(fills.size() == 3);
    CHECK(g.edges.size() == 22);
  }
  SECTION("beta and scc colourings") {
    testing::DotGraph beta = testing::check_dot(invoke({"export-dot", fixture("twenty_state.json"), "--color-by", "beta"}).out);
    std::size_t filled = 0;
    for (const auto& [node, attrs] : beta.node_attrs) {
      filled += attrs.contains("fillcolor") ? 1 : 0;
    }
    CHECK(filled == 5);
    testing::DotGraph scc = testing::check_dot(invoke({"export-dot", fixture("twenty_state.json"), "--color-by", "scc"}).out);
    CHECK(scc.nodes.size() == 20);
  }
  SECTION("edgeless system") {
    Result r = invoke({"export-dot", fixture("edgeless.json")});
    testing::DotGraph g = testing::check_dot(r.out);
    CHECK(g.edges.empty());
    CHECK(g.nodes.size() == 2);
  }
  SECTION("names are quoted") {
    LoadedSystem named = parse_system_json(R"({"n": 1, "p": 0, "a": [], "h": [], "names": ["say \"hi\""]})");
    testing::DotGraph g = testing::check_dot(to_dot(named, ColorBy::none));
    CHECK(g.node_attrs["x1"]["label"] == "say \"hi\"");
  }
  CHECK(invoke({"export-dot", fixture("chain.json"), "--color-by", "rainbow"}).code == kInputError);
}

TEST_CASE("the grammar checker rejects broken DOT") {
  CHECK_THROWS(testing::check_dot("digraph { a -> }"));
  CHECK_THROWS(testing::check_dot("digraph { a -- b }"));
  CHECK_THROWS(testing::check_dot("graph { a [label=] }"));
  CHECK_THROWS(testing::check_dot("digraph { \"open }"));
  CHECK_NOTHROW(testing::check_dot("strict digraph G { node [shape=box]; a -> {b c} [color=red]; rankdir=LR }"));
}

TEST_CASE("reports round-trip and are byte-stable") {
  for (const char* cmd : {"analyze", "verify"}) {
    for (const char* file : {"chain.json", "chain_unobservable.json", "twenty_state.json"}) {
      std::vector<std::string> args = {cmd, fixture(file)};
      if (std::string(cmd) == "verify") {
        args.push_back("--seed=5");
      }
      Result first = invoke(args);
      Result again = invoke(args);
      CHECK(first.out == again.out);
      ordered_json j = json_of(first);
      ReportFile parsed = report_from_json(j);
      CHECK(to_json(parsed) == j);
      CHECK(report_from_json(to_json(parsed)) == parsed);
    }
  }
  ordered_json j = json_of(invoke({"analyze", fixture("chain.json")}));
  j["version"] = "obspart/0";
  CHECK_THROWS_AS(report_from_json(j), InputError);
}

TEST_CASE("golden outputs") {
  struct Golden {
    std::vector<std::string> args;
    const char* file;
  };
  const std::vector<Golden> cases = {
      {{"analyze", fixture("twenty_state.json")}, "golden/twenty_state.analyze.json"},
      {{"place", fixture("twenty_state.json"), "--forbid", "12"}, "golden/twenty_state.forbid12.json"},
      {{"verify", fixture("chain_unobservable.json"), "--seed", "3"}, "golden/chain_unobservable.verify.json"},
      {{"export-dot", fixture("twenty_state.json"), "--color-by", "alpha"}, "golden/twenty_state.alpha.dot"},
  };
  for (const auto& g : cases) {
    INFO(g.file);
    CHECK(invoke(g.args).out == read_file(kFixtures / g.file));
  }
}

TEST_CASE("--out writes the report to a file") {
  auto path = std::filesystem::temp_directory_path() / "obspart_cli_out.json";
  Result r = invoke({"analyze", fixture("chain.json"), "--out", path.string()});
  CHECK(r.code == kOk);
  CHECK(r.out.empty());
  CHECK(read_file(path) == invoke({"analyze", fixture("chain.json")}).out);
  std::filesystem::remove(path);
  CHECK(invoke({"analyze", fixture("chain.json"), "--out", "/nonexistent/dir/x.json"}).code == kInputError);
}
