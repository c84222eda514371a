// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "grid.hpp"
#include "teamltl/team_eval.hpp"

using namespace teamltl;

namespace {

constexpr Letter P = 1;
const LassoTrace p_then_empty{{P}, {0}};
const LassoTrace empty_p_empty{{0, P}, {0}};
const LassoTrace all_empty{{}, {0}};

Formula f(const char* s) { return parse_team_formula(s); }

}  // namespace

TEST_CASE("eval_ltl examples") {
  std::vector<std::string> ap{"p"};
  CHECK(eval_ltl({{}, {P}}, 0, f("F p"), ap));
  CHECK_FALSE(eval_ltl(empty_p_empty, 0, f("G p"), ap));
  std::vector<std::string> ab{"a", "b"};
  CHECK(eval_ltl({{}, {1, 2}}, 0, f("(a | b) W false"), ab));
  CHECK_FALSE(eval_ltl({{}, {1, 2}}, 0, f("G a"), ab));
  CHECK(eval_ltl({{}, {1, 2}}, 1, f("b & X a"), ab));
  CHECK(eval_ltl({{0, 0, 0}, {1}}, 0, f("!a U a"), ab));
  CHECK_FALSE(eval_ltl({{0, 0, 0}, {0}}, 0, f("!a U a"), ab));
  CHECK(eval_ltl({{0, 0, 0}, {0}}, 0, f("!a W a"), ab));
}

TEST_CASE("empty team") {
  Team E = make_team({"p"}, {});
  for (const char* s : {"p", "!p", "false", "G p & F !p", "dep(;p)", "inc(p;!p)", "A1 false", "p | X false"})
    CHECK_MESSAGE(eval(E, f(s)), s);
  CHECK_FALSE(eval(E, f("NE")));
  CHECK_FALSE(eval(E, f("~p")));
  CHECK_FALSE(eval(E, f("p orl p")));
}

TEST_CASE("synchronous eventuality") {
  Team T = make_team({"p"}, {p_then_empty, empty_p_empty});
  CHECK_FALSE(eval(T, f("F p")));
  CHECK(eval(T, f("A1 F p")));
  CHECK(eval(T, f("F p | F p")));
  Team T3 = make_team({"p"}, {p_then_empty, empty_p_empty, all_empty});
  CHECK_FALSE(eval(T3, f("A1 F p")));
  CHECK(eval(T3, f("F p | G !p | F p")));
}

TEST_CASE("singleton equivalence on hand cases") {
  for (const auto& t : {p_then_empty, empty_p_empty, all_empty}) {
    Team T = make_team({"p"}, {t});
    for (const char* s : {"F p", "G !p", "X p | X X p", "!p U p", "p W false", "X (p W X p)"})
      CHECK(eval(T, f(s)) == eval_ltl(t, 0, f(s), {"p"}));
  }
}

TEST_CASE("connectives") {
  Team T = make_team({"p", "q"}, {{{1}, {0}}, {{2}, {3}}, {{3}, {0}}});
  CHECK(eval(T, f("p | q")));
  CHECK_FALSE(eval(T, f("p vv q")));
  CHECK(eval(T, f("~(p vv q)")));
  CHECK_FALSE(eval(T, f("dep(;p)")));
  CHECK(eval(T, f("dep(q;p)")) == false);  // q=1 pairs with p=0 and p=1
  CHECK(eval(T, f("inc(p;q)")));
  CHECK(eval(T, f("X inc(p;q)")));  // all p false at 1 except the middle trace
  CHECK(eval(T, f("A (p | q | X X q)")));
  CHECK(eval(T, f("A NE")) == false);
  CHECK(eval(T, f("NE orl false")));  // right part may be empty
  CHECK(eval(T, f("p orl q")));
  CHECK(eval(T, f("p orl true")));
  CHECK_FALSE(eval(T, f("false orl true")));
}

TEST_CASE("k-coherence") {
  Team T = make_team({"p"}, {p_then_empty, empty_p_empty});
  CHECK_FALSE(is_k_coherent_on(T, 0, f("F p"), 1));
  CHECK(is_k_coherent_on(T, 0, f("F p"), 2));
  CHECK(is_k_coherent_on(T, 0, f("A1 F p"), 1));
  CHECK(is_k_coherent_on(T, 0, f("G (p | !p)"), 1));
}

TEST_CASE("flatness separation") {
  Team Tplus = make_team({"p"}, {p_then_empty, empty_p_empty});
  Team T = make_team({"p"}, {p_then_empty, empty_p_empty, all_empty});
  CHECK(eval(Tplus, 0, f("A1 F p")));
  CHECK_FALSE(eval(T, 0, f("A1 F p")));
  CHECK_FALSE(eval(Tplus, 0, f("F p")));
  // F p is not flat: both singletons of T+ satisfy it.
  CHECK(eval(make_team({"p"}, {p_then_empty}), f("F p")));
  CHECK(eval(make_team({"p"}, {empty_p_empty}), f("F p")));
}

TEST_CASE("periodicity of team evaluation") {
  auto pool = testing::all_lassos(1, 2, 2);
  std::vector<Formula> fs{f("F p"), f("p U X !p"), f("G (p vv !p)"), f("X p | F (p & X !p)"), f("dep(;X p) W p")};
  for (std::size_t j = 0; j + 2 < pool.size(); j += 3) {
    Team T = make_team({"p"}, {pool[j], pool[j + 1], pool[j + 2]});
    Horizon h = horizon(T.traces, 0);
    for (const auto& phi : fs)
      for (std::size_t k = h.S; k < h.S + 2; ++k) CHECK(eval(T, k, phi) == eval(T, k + h.P, phi));
  }
}

TEST_CASE("mutation switch changes A1") {
  Team T = make_team({"p"}, {p_then_empty, empty_p_empty});
  CHECK(eval(T, f("A1 F p")));
  CHECK_FALSE(eval(T, f("A1 F p"), EvalOptions{true}));
}

TEST_CASE("explain") {
  Team T = make_team({"p"}, {p_then_empty, empty_p_empty});
  TeamEvaluator ev(T);
  auto lines = ev.explain(ev.full(), 0, f("F p | F p"));
  bool has_split = false;
  for (const auto& l : lines) has_split |= l.find("split") != std::string::npos;
  CHECK(has_split);
}
