// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "teamltl/kripke.hpp"
#include "teamltl/propgen.hpp"
#include "teamltl/translate.hpp"

using namespace teamltl;

namespace {

Formula f(const char* s) { return parse_team_formula(s); }

// w0 -> {wp, wn}, both self-looping; w0 unlabeled.
Kripke branching() { return make_kripke({"p"}, {0, 1, 0}, {{1, 2}, {1}, {2}}, 0); }
Kripke single(Letter l) { return make_kripke({"p"}, {l}, {{0}}, 0); }

using EF = ExistsForallVerdict::Kind;

}  // namespace

TEST_CASE("structures and json") {
  CHECK_THROWS_AS(make_kripke({"p"}, {0, 1}, {{1}, {}}, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_kripke({"p"}, {0}, {{0}}, 3), std::invalid_argument);
  Kripke K = parse_kripke_json(
      R"({"ap":["a","b"],"states":[{"id":0,"label":["a"]},{"id":7,"label":[]}],"init":0,"edges":[[0,7],[7,7],[7,0]]})");
  CHECK(K.size() == 2);
  CHECK(K.label[0] == 1);
  CHECK(K.succ[1] == std::vector<std::size_t>{0, 1});
  Kripke R = parse_kripke_json(kripke_to_json(K));
  CHECK(R.label == K.label);
  CHECK(R.succ == K.succ);
  CHECK_THROWS_AS(parse_kripke_json(R"({"ap":["a"],"states":[{"id":0}],"init":0,"edges":[]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_kripke_json(R"({"ap":["a"],"states":[{"id":0,"label":["z"]}],"init":0,"edges":[[0,0]]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_kripke_json("{"), std::invalid_argument);
}

TEST_CASE("trace enumeration") {
  CHECK(traces_enumerate(single(1), 1, 1) == std::vector<LassoTrace>{LassoTrace{{}, {1}}});
  Kripke cyc = make_kripke({"a", "b"}, {1, 2}, {{1}, {0}}, 0);
  CHECK(traces_enumerate(cyc, 1, 2) == std::vector<LassoTrace>{LassoTrace{{}, {1, 2}}});
  auto two = traces_enumerate(branching(), 1, 1);
  CHECK(two == std::vector<LassoTrace>{LassoTrace{{}, {0}}, LassoTrace{{0}, {1}}});
  for (const auto& t : traces_enumerate(gen_kripke(5, 4, 2), 3, 3)) CHECK(is_trace_of(gen_kripke(5, 4, 2), t));
  CHECK_FALSE(is_trace_of(branching(), LassoTrace{{}, {1}}));
  CHECK(is_trace_of(branching(), LassoTrace{{0, 0, 0}, {0}}));
}

TEST_CASE("finite trace sets") {
  CHECK(has_finite_traces(branching()));
  CHECK_FALSE(has_finite_traces(make_kripke({"p"}, {0, 1}, {{0, 1}, {1}}, 0)));
  for (uint64_t s = 0; s < 50; ++s) CHECK(has_finite_traces(gen_kripke(s, 4, 2, true)));
}

TEST_CASE("automaton examples") {
  Buchi g = ltl_to_buchi(f("G p"));
  // Pseudo-initial state plus the accepting p-loop.
  CHECK(g.size() == 2);
  CHECK(buchi_accepts(g, LassoTrace{{}, {1}}));
  CHECK_FALSE(buchi_accepts(g, LassoTrace{{1, 1}, {0}}));
  Buchi ev = ltl_to_buchi(f("F p"));
  CHECK(buchi_accepts(ev, LassoTrace{{0, 0}, {1}}));
  CHECK_FALSE(buchi_accepts(ev, LassoTrace{{}, {0}}));
  Buchi u = ltl_to_buchi(f("p U q"));
  REQUIRE(u.props == std::vector<std::string>{"p", "q"});
  CHECK(buchi_accepts(u, LassoTrace{{1, 1}, {2}}));
  CHECK_FALSE(buchi_accepts(u, LassoTrace{{}, {1}}));
  CHECK_THROWS_AS(ltl_to_buchi(f("dep(;p)")), std::invalid_argument);
}

TEST_CASE("forall-k examples") {
  CHECK(check_forall_k(single(1), f("A1 G p"), 1).holds);
  // Both traces share the initial state, so constancy is checked one step later.
  CHECK(check_forall_k(branching(), f("dep(;p)"), 2).holds);
  ForallResult dep = check_forall_k(branching(), f("X dep(;p)"), 2);
  CHECK_FALSE(dep.holds);
  REQUIRE(dep.counterexample.size() == 2);
  CHECK(dep.counterexample[0] != dep.counterexample[1]);
  CHECK_FALSE(check_forall_k(single(1), f("~p"), 1).holds);
  CHECK(check_forall_k(branching(), f("X (p | !p)"), 2).holds);
  CHECK_THROWS_AS(check_forall_k(branching(), f("p orl !p"), 1), FragmentMismatch);
}

TEST_CASE("exists-forall examples") {
  HFormula lf = leftflat_translate(f("A1 F p"));
  ExistsForallVerdict yes = check_exists_forall(single(1), lf);
  CHECK(yes.kind == EF::Holds);
  CHECK(yes.witness.at("r__0") == LassoTrace{{1}, {0}});
  CHECK(check_exists_forall(single(0), lf).kind == EF::ExactFail);
  CHECK(check_exists_forall(branching(), parse_hyper("uexists r:one. forall pi. G (!r | p@pi)")).kind ==
        EF::ExactFail);
  ExistsForallVerdict at1 =
      check_exists_forall(branching(), parse_hyper("uexists r:one. forall pi. F (r & p@pi) | G !p@pi"));
  CHECK(at1.kind == EF::Holds);
  CHECK(at1.witness.at("r") == LassoTrace{{0, 1}, {0}});

  // Enumerated witnesses: exhausted bounds are not an exact failure.
  ExistsForallVerdict q = check_exists_forall(single(1), parse_hyper("uexists q. forall pi. G !q & F q"));
  CHECK(q.kind == EF::FailsUpTo);
  CHECK(q.bounds == "stemMax=2 loopMax=2");
  ExistsForallVerdict e =
      check_exists_forall(branching(), parse_hyper("exists pi1. forall pi. X (p@pi1 | !p@pi)"));
  CHECK(e.kind == EF::Holds);
  CHECK(e.witness.at("pi1") == LassoTrace{{0}, {1}});

  CHECK_THROWS_AS(check_exists_forall(single(1), parse_hyper("forall pi. exists pi2. p@pi")),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_exists_forall(single(1), parse_hyper("uexists q. p@pi")), std::invalid_argument);
  CHECK_THROWS_AS(check_exists_forall(single(1), parse_hyper("forall pi. p@pi2")), UnboundVariable);
}

TEST_CASE("model-checking dispatch") {
  McOptions b;
  b.mode = McMode::Bounded;
  CHECK(mc_teamltl(branching(), f("X dep(;p)"), b).kind == McVerdict::Kind::Refuted);
  CHECK(mc_teamltl(single(1), f("p"), b).kind == McVerdict::Kind::HoldsOnApprox);
  CHECK(mc_teamltl(single(0), f("NE & p"), b).kind == McVerdict::Kind::Unknown);
  McOptions k;
  k.mode = McMode::KCoherent;
  k.k = 2;
  McVerdict r = mc_teamltl(branching(), f("X dep(;p)"), k);
  CHECK(r.kind == McVerdict::Kind::Refuted);
  CHECK(r.counterexample.size() == 2);
  McOptions l;
  l.mode = McMode::LeftFlat;
  CHECK(mc_teamltl(single(1), f("A1 F p"), l).kind == McVerdict::Kind::Holds);
  CHECK(mc_teamltl(branching(), f("X p vv X !p"), l).kind == McVerdict::Kind::Refuted);
  CHECK(mc_teamltl(branching(), f("X (p | !p)"), l).kind == McVerdict::Kind::Holds);
  CHECK(std::string(verdict_name(McVerdict::Kind::HoldsOnApprox)) == "HoldsOnApprox");
}

TEST_CASE("1-coherence reduction") {
  CHECK(structurally_equal(one_coherence_reduction(f("inc(a;b)")), ltl_iff(f("a"), f("b"))));
  CHECK(render(one_coherence_reduction(f("a vv b"))) == render(f("a | b")));
  Formula plain = f("a U (b & X !a)");
  CHECK(structurally_equal(one_coherence_reduction(plain), plain));
  CHECK_THROWS_AS(one_coherence_reduction(f("dep(;a)")), FragmentMismatch);
}

TEST_CASE("model-checking suites") {
  for (const char* s : {"buchi", "coherence1", "mc_forall", "mc_leftflat"}) {
    SuiteReport r = run_suite(s, 200, 20261018);
    CHECK_MESSAGE(r.failed == 0, s);
    CHECK_MESSAGE(r.skipped == 0, s);
  }
}
