// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#include <stdexcept>

#include "doctest.h"
#include "grid.hpp"
#include "teamltl/traces.hpp"

using namespace teamltl;

namespace {
constexpr Letter a = 1, b = 2;
}

TEST_CASE("letter_at") {
  CHECK(letter_at({{a}, {0}}, 0) == a);
  CHECK(letter_at({{}, {a, b}}, 5) == b);
  CHECK(letter_at({{0, 0}, {a}}, 7) == a);
}

TEST_CASE("canonicalize") {
  CHECK(canonicalize({{a}, {a}}) == LassoTrace{{}, {a}});
  CHECK(canonicalize({{}, {a, a}}) == LassoTrace{{}, {a}});
  // a(ba)^w is (ab)^w.
  CHECK(canonicalize({{a}, {b, a}}) == LassoTrace{{}, {a, b}});
  CHECK(canonicalize({{b}, {b, a}}) == LassoTrace{{b}, {b, a}});
  CHECK(canonicalize({{0, a, b}, {a, b, a, b}}) == LassoTrace{{0}, {a, b}});
}

TEST_CASE("canonical forms decide equality of infinite traces") {
  auto pool = testing::all_lassos(2, 2, 2);
  // Brute force: two lassos with stems <= 2 and loops <= 2 denote the same
  // trace iff they agree on the first 2 + 2*2 positions.
  for (std::size_t x = 0; x < pool.size(); ++x)
    for (std::size_t y = x + 1; y < pool.size(); ++y) {
      bool same = true;
      for (std::size_t i = 0; i < 6 && same; ++i) same = pool[x].at(i) == pool[y].at(i);
      CHECK_FALSE(same);
    }
}

TEST_CASE("letter_at respects canonicalization") {
  for (std::size_t s = 0; s < 4; ++s)
    for (Letter seed = 0; seed < 64; ++seed) {
      LassoTrace t;
      for (std::size_t i = 0; i < s; ++i) t.stem.push_back((seed >> i) & 3);
      t.loop = {Letter(seed & 1), Letter((seed >> 2) & 3), Letter(seed & 1), Letter((seed >> 2) & 3)};
      LassoTrace c = canonicalize(t);
      CHECK(is_canonical(c));
      for (std::size_t i = 0; i < t.stem.size() + 3 * t.loop.size(); ++i) CHECK(letter_at(t, i) == letter_at(c, i));
    }
}

TEST_CASE("horizon") {
  Horizon h = horizon({LassoTrace{{}, {a}}}, 0);
  CHECK(h.S == 0);
  CHECK(h.P == 1);
  CHECK(h.B == 1);
  std::vector<LassoTrace> T{{{a}, {a, b}}, {{}, {a, b, 0}}};
  h = horizon(T, 0);
  CHECK(h.S == 1);
  CHECK(h.P == 6);
  CHECK(h.B == 7);
  CHECK(horizon(T, 10).B == 16);
  CHECK_THROWS(horizon({}, 0));
}

TEST_CASE("suffix periodicity") {
  std::vector<LassoTrace> T{{{a, 0, b}, {a, b}}, {{b}, {0, a, b}}};
  Horizon h = horizon(T, 0);
  for (const auto& t : T)
    for (std::size_t k = h.S; k < h.S + 3 * h.P; ++k) CHECK(suffix(t, k) == suffix(t, k + h.P));
}

TEST_CASE("project") {
  CHECK(project({{}, {a | b}}, a) == LassoTrace{{}, {a}});
  CHECK(project({{a}, {b, a | b}}, 0) == LassoTrace{{}, {0}});
  // {p}{q}({p,q})^w onto {q} is {}({q})^w.
  CHECK(project({{a, b}, {a | b}}, b) == LassoTrace{{0}, {b}});
}

TEST_CASE("team construction") {
  Team T = make_team({"a", "b"}, {{{a}, {a}}, {{}, {a}}, {{}, {b}}});
  CHECK(T.traces.size() == 2);
  CHECK(letter_from_names(T.ap, {"b"}) == b);
  CHECK_THROWS(letter_from_names(T.ap, {"c"}));
  CHECK(trace_to_string(T.ap, {{a}, {0, a | b}}) == "{a}({}{a,b})^w");
}

TEST_CASE("team files") {
  Team T = parse_team_json(
      R"({"ap":["a","b"],"index":1,"traces":[{"stem":[["a"],[]],"loop":[["a","b"]]},{"loop":[[]]}]})");
  CHECK(T.index == 1);
  REQUIRE(T.traces.size() == 2);
  CHECK(T.traces[1] == LassoTrace{{1, 0}, {3}});
  Team R = parse_team_json(team_to_json(T));
  CHECK(R.traces == T.traces);
  CHECK(R.ap == T.ap);
  CHECK_THROWS_AS(parse_team_json(R"({"ap":["a"],"traces":[{"loop":[["z"]]}]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_team_json(R"({"ap":["a"],"traces":[{"loop":[]}]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_team_json("[1"), std::invalid_argument);
}
