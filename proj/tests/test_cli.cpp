// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "teamltl/cli.hpp"
#include "teamltl/hyper.hpp"
#include "teamltl/kripke.hpp"
#include "teamltl/reduction.hpp"
#include "teamltl/team_eval.hpp"

using namespace teamltl;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream o, e;
  int code = run_cli(args, o, e);
  return {code, o.str(), e.str()};
}

struct Dir {
  fs::path root;
  Dir() {
    root = fs::temp_directory_path() / ("teamltl_cli_" + std::to_string(::getpid()));
    fs::create_directories(root);
  }
  ~Dir() { fs::remove_all(root); }
  std::string put(const std::string& name, const std::string& text) const {
    std::ofstream(root / name) << text;
    return (root / name).string();
  }
  std::string path(const std::string& name) const { return (root / name).string(); }
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("eval verdicts and exit codes") {
  Dir d;
  std::string empty = d.put("empty.json", R"({"ap":["p"],"traces":[]})");
  std::string two = d.put("two.json", R"({"ap":["p"],"traces":[{"loop":[["p"],[]]},{"loop":[[]]}]})");
  Result r = run({"eval", "--team", empty, "F p & dep(;p)"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "true\n");
  r = run({"eval", "--team", two, "F p"});
  CHECK(r.code == kExitFalse);
  CHECK(r.out == "false\n");
  r = run({"--format", "json", "eval", "--team", two, "p | !p", "--explain"});
  json j = json::parse(r.out);
  CHECK(j["verdict"] == true);
  CHECK(j["explain"].size() > 2);
  r = run({"eval", "--team", two, "--hyper", "exists pi. G !p@pi"});
  CHECK(r.code == kExitOk);
  CHECK(run({"eval", "--team", two, "p &"}).code == kExitError);
  CHECK(run({"eval", "--team", d.path("missing.json"), "p"}).code == kExitError);
  CHECK(run({"eval", "p"}).code == kExitError);
}

TEST_CASE("singleton teams agree with trace evaluation") {
  Dir d;
  const std::vector<std::string> ap = {"p", "q"};
  const LassoTrace t{{1, 0}, {2, 3}};
  std::string team = d.put("one.json", team_to_json(make_team(ap, {t})));
  for (const char* f : {"p U q", "G F q", "X X p", "q W p", "!p | X q"}) {
    const bool expect = eval_ltl(t, 0, parse_team_formula(f), ap);
    CHECK_MESSAGE(run({"eval", "--team", team, f}).code == (expect ? kExitOk : kExitFalse), f);
  }
  CHECK(run({"eval", "--team", team, "--index", "1", "!p & !q"}).code == kExitOk);
}

TEST_CASE("parse and translate output re-parses") {
  Result p = run({"--format", "json", "parse", "A1 F p | (q vv r)"});
  json j = json::parse(p.out);
  CHECK(j["fragment"] == "LeftFlat");
  CHECK(render(parse_team_formula(j["formula"].get<std::string>())) == j["formula"]);
  for (const char* frag : {"kcoherent", "leftflat", "full"}) {
    Result t = run({"translate", "--fragment", frag, "A1 F p & X q"});
    REQUIRE(t.code == kExitOk);
    std::string text = t.out.substr(0, t.out.size() - 1);
    CHECK(render_hyper(parse_hyper(text)) == text);
  }
  CHECK(run({"translate", "--fragment", "kcoherent", "p orl q"}).code == kExitError);
  CHECK(run({"translate", "--fragment", "other", "p"}).code == kExitError);
}

TEST_CASE("model checking") {
  Dir d;
  std::string k = d.put("k.json", kripke_to_json(make_kripke({"p"}, {0, 1, 0}, {{1, 2}, {1}, {2}}, 0)));
  Result r = run({"--format", "json", "mc", "--kripke", k, "--mode", "kcoherent", "--k", "2", "X dep(;p)"});
  CHECK(r.code == kExitFalse);
  json j = json::parse(r.out);
  CHECK(j["verdict"] == "refuted");
  CHECK(j["counterexample"].size() == 2);
  r = run({"mc", "--kripke", k, "--mode", "bounded", "X (p | !p)"});
  CHECK(r.code == kExitApprox);
  CHECK(r.out.rfind("holds-on-approx\ntraces=2 stemMax=2 loopMax=2", 0) == 0);
  CHECK(run({"mc", "--kripke", k, "--mode", "leftflat", "X p vv X !p"}).code == kExitFalse);
}

TEST_CASE("reduction files") {
  Dir d;
  std::string m = d.put("m.txt", "0: IFZ l ? 0 : 0\n");
  std::string r = d.put("r.txt", "loop: (0,0,0,0)\n");
  std::string prefix = d.path("ifz");
  Result res = run({"reduce", "--machine", m, "--b", "0", "--run", r, "--out", prefix});
  REQUIRE(res.code == kExitOk);
  CHECK(parse_kripke_json(slurp(prefix + ".kripke.json")).size() == 16);
  Formula phi = parse_team_formula(slurp(prefix + ".formula"));
  CHECK(structurally_equal(phi, build_formula_lossy(parse_machine("0: IFZ l ? 0 : 0\n"), 0)));
  CHECK(parse_team_json(slurp(prefix + ".team.json")).traces.size() == 1);
  CHECK(run({"eval", "--team", prefix + ".team.json", "--formula-file", prefix + ".formula"}).code == kExitOk);

  res = run({"--format", "json", "reduce", "--kind", "nonlossy", "--machine", m});
  CHECK(count_kind(parse_team_formula(json::parse(res.out)["formula"].get<std::string>()), Kind::SubteamAll) == 1);
  std::string k = d.put("k.json", kripke_to_json(make_kripke({"a"}, {1}, {{0}}, 0)));
  res = run({"--format", "json", "reduce", "--kind", "sat-embed", "--kripke", k});
  CHECK(json::parse(res.out)["formula"] == "(p_0 & G (((p_0 & inc(true;X p_0)) & X p_0) & a))");
  CHECK(run({"reduce", "--machine", m, "--b", "3"}).code == kExitError);
}

TEST_CASE("generators and property suites") {
  Result f = run({"gen", "formula", "--seed", "5", "--fragment", "leftflat", "--depth", "3"});
  REQUIRE(f.code == kExitOk);
  CHECK(classify_fragment(parse_team_formula(f.out)).leftflat);
  CHECK(run({"gen", "formula", "--seed", "5", "--fragment", "leftflat", "--depth", "3"}).out == f.out);
  CHECK(parse_team_json(run({"gen", "team", "--seed", "2"}).out).traces.size() <= 3);
  CHECK(has_finite_traces(parse_kripke_json(run({"gen", "kripke", "--seed", "2", "--finite"}).out)));

  Result p = run({"--format", "json", "check-props", "--suite", "singleton", "--suite", "mutation", "--trials", "40"});
  CHECK(p.code == kExitOk);
  json j = json::parse(p.out);
  CHECK(j[0]["failed"] == 0);
  CHECK(j[1]["expected_failure"] == true);
  CHECK(j[1]["failed"] == 1);
  CHECK(run({"check-props", "--suite", "nosuch"}).code == kExitError);
}
