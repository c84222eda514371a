// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "teamltl/hyper.hpp"
#include "teamltl/propgen.hpp"
#include "teamltl/team_eval.hpp"
#include "teamltl/translate.hpp"

using namespace teamltl;

namespace {

Formula f(const char* s) { return parse_team_formula(s); }

constexpr double kLeftFlatFactor = 16;
constexpr double kFullFactor = 24;

std::size_t top_disjuncts(const HFormula& h) {
  if (h->kind != HKind::Or) return 1;
  return top_disjuncts(h->kids[0]) + top_disjuncts(h->kids[1]);
}

}  // namespace

TEST_CASE("k-coherent examples") {
  CHECK(render_hyper(kcoherent_translate(f("p"), 2)) == "forall pi1. forall pi2. (p@pi1 & p@pi2)");
  CHECK(render_hyper(kcoherent_translate(f("p | q"), 1)) == "forall pi1. ((q@pi1 | p@pi1) | (p@pi1 & q@pi1))");
  CHECK(render_hyper(kcoherent_translate(f("~p"), 1)) == "forall pi1. !p@pi1");
  CHECK_THROWS_AS(kcoherent_translate(f("p orl q"), 1), FragmentMismatch);
  CHECK_THROWS_AS(kcoherent_translate(f("p"), 0), std::invalid_argument);
}

TEST_CASE("cover count is 3^k per split") {
  std::size_t expect = 1;
  for (std::size_t k = 1; k <= 5; ++k) {
    expect *= 3;
    CHECK(top_disjuncts(kcoherent_body(f("X a | F b"), kcoherent_vars(k))) == expect);
  }
}

TEST_CASE("left-flat examples") {
  CHECK(render_hyper(leftflat_translate(f("A1 F p"))) ==
        "uexists r__0:one[0]. forall pi. ((r__0 & X G !r__0) & G (!r__0 | F p@pi))");
  CHECK(render_hyper(leftflat_translate(f("q"))) ==
        "uexists r__0:one[0]. forall pi. ((r__0 & X G !r__0) & G (!r__0 | q@pi))");
  Team T = make_team({"a", "b"}, {LassoTrace{{1, 2}, {0}}});
  Formula g = f("(A1 a) U b");
  CHECK(eval(T, g));
  CHECK(eval_hyper(T, {}, 0, leftflat_translate(g)));
  CHECK_THROWS_AS(leftflat_translate(f("(F a) U b")), FragmentMismatch);
}

TEST_CASE("full translation examples") {
  std::string ne = render_hyper(full_translate(f("NE")));
  CHECK(ne.rfind("existsp qS:codes. uexists q__0:code. uexists r__0:one[0].", 0) == 0);
  CHECK(ne.find("exists pi__0. F (q__0 & qS@pi__0)") != std::string::npos);
  std::string p = render_hyper(full_translate(f("p")));
  CHECK(p.find("forall pi__0. (G (!q__0 | !qS@pi__0) | F (r__0 & p@pi__0))") != std::string::npos);

  Team T = make_team({"p", "q"}, {LassoTrace{{}, {1}}, LassoTrace{{}, {2}}});
  for (const char* s : {"p | q", "p vv q", "p", "NE & (p | q)", "A1 (p vv q)"})
    CHECK_MESSAGE(eval_hyper(T, {}, 0, full_translate(f(s))) == eval(T, f(s)), s);
  CHECK_THROWS_AS(full_translate(f("dep(;p)")), FragmentMismatch);
}

TEST_CASE("full translation regressions") {
  // Strict precedence must not force r'' onto every earlier position.
  Team T1 = make_team({"a", "b"}, {LassoTrace{{1}, {2}}});
  CHECK(eval(T1, f("b U b")) == eval_hyper(T1, {}, 0, full_translate(f("b U b"))));
  // The psi witness of W lies at or after the current position.
  Team T2 = make_team({"a"}, {LassoTrace{{1}, {0}}});
  CHECK_FALSE(eval(T2, f("X (false W a)")));
  CHECK_FALSE(eval_hyper(T2, {}, 0, full_translate(f("X (false W a)"))));
}

TEST_CASE("translations agree with team semantics on the grid") {
  for (const char* suite : {"kcoherent", "leftflat", "full"}) {
    SuiteReport r = run_suite(suite, 150, 20261018);
    CHECK_MESSAGE(r.failed == 0, suite);
    CHECK_MESSAGE(r.skipped == 0, suite);
  }
}

TEST_CASE("size bounds") {
  for (uint64_t s = 0; s < 2000; ++s) {
    Formula l = gen_formula(s, 4, GenFragment::LeftFlat);
    CHECK(double(h_size(leftflat_translate(l))) <= kLeftFlatFactor * double(formula_size(l)));
    Formula b = gen_formula(s, 4, GenFragment::BorNEFlat);
    CHECK(double(h_size(full_translate(b))) <= kFullFactor * double(formula_size(b)));
  }
}

TEST_CASE("fresh names avoid input propositions") {
  HFormula h = leftflat_translate(f("r__0 & X r__1"));
  CHECK(render_hyper(h).rfind("uexists r__2:one[0].", 0) == 0);
  HFormula g = full_translate(f("qS"));
  CHECK(render_hyper(g).rfind("existsp qS__0:codes.", 0) == 0);
}
