// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "grid.hpp"
#include "teamltl/hyper.hpp"
#include "teamltl/team_eval.hpp"

using namespace teamltl;

namespace {

HFormula h(const char* s) { return parse_hyper(s); }

// Random quantifier-free body over a@v, b@v for v in vars, plus unindexed
// uniform variables.
HFormula random_body(std::mt19937_64& rng, int depth, const std::vector<std::string>& vars,
                     const std::vector<std::string>& uvars) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
  auto lit = [&]() {
    const bool neg = rng() & 1;
    if (!uvars.empty() && rng() % 3 == 0) {
      const auto& u = uvars[rng() % uvars.size()];
      return neg ? h_neglit(u) : h_lit(u);
    }
    const std::string p = rng() & 1 ? "a" : "b";
    const auto& v = vars[rng() % vars.size()];
    return neg ? h_neglit(p, v) : h_lit(p, v);
  };
  switch (pick(rng)) {
    case 0:
    case 1: return lit();
    case 2: return h_and(random_body(rng, depth - 1, vars, uvars), random_body(rng, depth - 1, vars, uvars));
    case 3: return h_or(random_body(rng, depth - 1, vars, uvars), random_body(rng, depth - 1, vars, uvars));
    case 4: return h_next(random_body(rng, depth - 1, vars, uvars));
    case 5: return h_until(random_body(rng, depth - 1, vars, uvars), random_body(rng, depth - 1, vars, uvars));
    case 6: return h_weakuntil(random_body(rng, depth - 1, vars, uvars), random_body(rng, depth - 1, vars, uvars));
    default: return h_globally(random_body(rng, depth - 1, vars, uvars));
  }
}

// The body as an LTL formula over the zipped traces: a@v becomes a_v.
Formula to_ltl(const HFormula& f) {
  auto name = [](const HNode& n) { return n.var.empty() ? n.name : n.name + "_" + n.var; };
  switch (f->kind) {
    case HKind::True: return mk_true();
    case HKind::False: return mk_false();
    case HKind::Lit: return mk_prop(name(*f));
    case HKind::NegLit: return mk_negprop(name(*f));
    case HKind::And: return mk_and(to_ltl(f->kids[0]), to_ltl(f->kids[1]));
    case HKind::Or: return mk_or(to_ltl(f->kids[0]), to_ltl(f->kids[1]));
    case HKind::Next: return mk_next(to_ltl(f->kids[0]));
    case HKind::Until: return mk_until(to_ltl(f->kids[0]), to_ltl(f->kids[1]));
    case HKind::WeakUntil: return mk_weakuntil(to_ltl(f->kids[0]), to_ltl(f->kids[1]));
    default: throw std::logic_error("quantifier in body");
  }
}

// Zip of named lassos into one lasso over the product propositions.
struct Zip {
  std::vector<std::string> ap;
  LassoTrace trace;
};

Zip zip(const std::vector<std::pair<std::string, std::vector<uint8_t>>>& bitseqs, std::size_t S, std::size_t P) {
  Zip z;
  for (const auto& [n, _] : bitseqs) z.ap.push_back(n);
  for (std::size_t t = 0; t < S + P; ++t) {
    Letter l = 0;
    for (std::size_t k = 0; k < bitseqs.size(); ++k)
      if (bitseqs[k].second[t]) l |= Letter(1) << k;
    (t < S ? z.trace.stem : z.trace.loop).push_back(l);
  }
  return z;
}

std::vector<uint8_t> unroll(const LassoTrace& t, int prop, std::size_t len) {
  std::vector<uint8_t> out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(uint8_t(letter_at(t, i) >> prop & 1));
  return out;
}

// Truth of the body under a complete assignment, via classical LTL on the zip.
bool body_holds(const Team& T, const std::map<std::string, std::size_t>& assign,
                const std::map<std::string, std::vector<uint8_t>>& uniform, const HFormula& body, std::size_t S,
                std::size_t P) {
  std::vector<std::pair<std::string, std::vector<uint8_t>>> seqs;
  for (const auto& [v, idx] : assign)
    for (std::size_t p = 0; p < T.ap.size(); ++p)
      seqs.push_back({T.ap[p] + "_" + v, unroll(T.traces[idx], int(p), S + P)});
  for (const auto& [u, bits] : uniform) seqs.push_back({u, bits});
  Zip z = zip(seqs, S, P);
  return eval_ltl(z.trace, 0, to_ltl(body), z.ap);
}

bool brute_trace(const Team& T, const Prefix& pre, std::size_t q, std::map<std::string, std::size_t>& assign,
                 std::size_t S, std::size_t P) {
  if (q == pre.quantifiers.size()) return body_holds(T, assign, {}, pre.body, S, P);
  const HNode* n = pre.quantifiers[q];
  const bool ex = n->kind == HKind::TraceExists;
  for (std::size_t j = 0; j < T.traces.size(); ++j) {
    assign[n->name] = j;
    if (brute_trace(T, pre, q + 1, assign, S, P) == ex) return ex;
  }
  return !ex;
}

std::vector<Team> small_teams() {
  std::vector<Team> out;
  auto pool = testing::all_lassos(2, 1, 2);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 40; ++k) {
    std::vector<LassoTrace> ts;
    const std::size_t n = 1 + rng() % 3;
    for (std::size_t j = 0; j < n; ++j) ts.push_back(pool[rng() % pool.size()]);
    out.push_back(make_team({"a", "b"}, ts));
  }
  return out;
}

}  // namespace

TEST_CASE("reference examples") {
  Team Tp = make_team({"p"}, {LassoTrace{{}, {1}}});
  CHECK(eval_hyper(Tp, {}, 0, h("forall pi. G p@pi")));

  // a holds at steps 0 and 1 only, or only at 0.
  Team Ta = make_team({"a"}, {LassoTrace{{1, 1}, {0}}, LassoTrace{{1}, {0}}, LassoTrace{{}, {0}}});
  HFormula drop = h("uexists p. forall pi. F p & G (!p | G !a@pi)");
  CHECK(eval_hyper(Ta, {}, 0, drop));
  CHECK(last_hyper_stats().solver_used);
  Team Tb = make_team({"a"}, {LassoTrace{{}, {1}}});
  CHECK_FALSE(eval_hyper(Tb, {}, 0, drop));

  Team T2 = make_team({"p"}, {LassoTrace{{1}, {0}}, LassoTrace{{0, 1}, {0}}});
  CHECK_FALSE(eval_hyper(T2, {}, 0, h("forall pi1. forall pi2. G ((p@pi1 & p@pi2) | (!p@pi1 & !p@pi2))")));
}

TEST_CASE("parse and render round trip") {
  for (const char* s : {"forall pi1. exists pi2. (a@pi1 U !b@pi2)",
                        "uexists r:one[2]. forallp q:codes. forall pi. (r | X q@pi)",
                        "(forall pi. a@pi) & (exists pi. G !a@pi)", "uforall p:interval. F p",
                        "existsp q:atmostone. true", "uexists c:code. forall pi. false W c"}) {
    HFormula f = h(s);
    CHECK_MESSAGE(h_structurally_equal(f, h(render_hyper(f).c_str())), s);
  }
  CHECK(render_hyper(h("forall pi. a@pi & b@pi")) == "forall pi. (a@pi & b@pi)");
  CHECK(render_hyper(h("(forall pi. a@pi) | true")) == "((forall pi. a@pi) | true)");
  CHECK_THROWS_AS(h("forall pi a@pi"), HyperParseError);
  CHECK_THROWS_AS(h("uexists r:two. r"), HyperParseError);
}

TEST_CASE("errors") {
  Team T = make_team({"a"}, {LassoTrace{{}, {1}}});
  CHECK_THROWS_AS(eval_hyper(T, {}, 0, h("G a@pi")), UnboundVariable);
  CHECK_THROWS_AS(eval_hyper(T, {}, 0, h("forall pi. r")), UnboundVariable);
  CHECK_THROWS_AS(eval_hyper(T, {}, 0, h("forall pi. F (exists pi2. a@pi2)")), std::invalid_argument);
  QuantBounds tiny;
  tiny.cap = 4;
  CHECK_THROWS_AS(eval_hyper(T, {}, 0, h("uexists p. G (p | X p)"), tiny), BoundsCapExceeded);
  CHECK(eval_hyper(T, {{"pi", 0}}, 0, h("G a@pi")));
  CHECK_FALSE(eval_hyper(T, {{"pi", 0}}, 0, h("F c@pi")));
}

TEST_CASE("negation and prenex") {
  Team T = make_team({"a", "b"}, {LassoTrace{{1}, {2}}, LassoTrace{{}, {3}}, LassoTrace{{0}, {1}}});
  for (const char* s : {"forall p1. exists p2. a@p1 U b@p2", "exists p1. G F a@p1", "uexists r:one. forall p. (r | X a@p)"}) {
    HFormula f = h(s);
    CHECK(eval_hyper(T, {}, 0, f) != eval_hyper(T, {}, 0, h_negate(f)));
  }
  HFormula f = h("(forall p1. a@p1) | (exists p2. X b@p2)");
  HFormula g = prenex(f);
  CHECK(render_hyper(g) == "forall p1. exists p2. (a@p1 | X b@p2)");
  CHECK(eval_hyper(T, {}, 0, f) == eval_hyper(T, {}, 0, g));
  CHECK_THROWS(prenex(h("(forall p. a@p) & (forall p. b@p)")));
}

TEST_CASE("trace quantifiers agree with brute-force enumeration") {
  std::mt19937_64 rng(11);
  auto teams = small_teams();
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Team& T = teams[std::size_t(trial) % teams.size()];
    const std::size_t nv = 1 + rng() % 3;
    std::vector<std::string> vars;
    for (std::size_t k = 0; k < nv; ++k) vars.push_back("pi" + std::to_string(k));
    HFormula f = random_body(rng, 3, vars, {});
    for (std::size_t k = nv; k-- > 0;)
      f = h_quant(rng() & 1 ? HKind::TraceForall : HKind::TraceExists, vars[k], f);
    Horizon hz = horizon(T.traces, 0);
    std::map<std::string, std::size_t> assign;
    bool expect = brute_trace(T, split_prefix(f), 0, assign, hz.S, hz.P);
    CHECK_MESSAGE(eval_hyper(T, {}, 0, f) == expect, render_hyper(f));
    ++checked;
  }
  CHECK(checked == 300);
}

TEST_CASE("uniform existential block agrees with explicit enumeration") {
  // Domain: stem of length 2 and loop of length 2 (stemMax = 2, loopLcm = 2).
  std::mt19937_64 rng(5);
  auto teams = small_teams();
  QuantBounds b;
  b.stemMax = 2;
  b.loopLcm = 2;
  for (int trial = 0; trial < 120; ++trial) {
    const Team& T = teams[std::size_t(trial) % teams.size()];
    const bool two = trial % 2;
    std::vector<std::string> us = two ? std::vector<std::string>{"p", "q"} : std::vector<std::string>{"p"};
    HFormula body = random_body(rng, 3, {"pi"}, us);
    HFormula f = h_quant(HKind::TraceForall, "pi", body);
    for (auto it = us.rbegin(); it != us.rend(); ++it) f = h_quant(HKind::UExists, *it, f);

    Horizon hz = horizon(T.traces, 0);
    const std::size_t S = std::max<std::size_t>(hz.S, 2), P = std::lcm(hz.P, std::size_t(2));
    auto seq = [&](uint64_t v) {
      std::vector<uint8_t> bits(S + P);
      for (std::size_t t = 0; t < S + P; ++t) bits[t] = uint8_t(v >> (t < 2 ? t : 2 + (t - 2) % 2) & 1);
      return bits;
    };
    bool expect = false;
    for (uint64_t vp = 0; vp < 16 && !expect; ++vp)
      for (uint64_t vq = 0; vq < (two ? 16u : 1u) && !expect; ++vq) {
        std::map<std::string, std::vector<uint8_t>> u{{"p", seq(vp)}};
        if (two) u["q"] = seq(vq);
        bool all = true;
        for (std::size_t j = 0; j < T.traces.size() && all; ++j) all = body_holds(T, {{"pi", j}}, u, body, S, P);
        expect = all;
      }
    CHECK_MESSAGE(eval_hyper(T, {}, 0, f, b) == expect, render_hyper(f));
  }
}

TEST_CASE("shapes") {
  Team T = make_team({"a"}, {LassoTrace{{1}, {0}}, LassoTrace{{}, {0}}});
  CHECK(eval_hyper(T, {}, 0, h("uexists r:one. F r")));
  CHECK_FALSE(eval_hyper(T, {}, 0, h("uexists r:one. G !r")));
  CHECK(eval_hyper(T, {}, 0, h("uexists r:atmostone. G !r")));
  CHECK_FALSE(eval_hyper(T, {}, 0, h("uexists r:one. F (r & X F r)")));
  CHECK(eval_hyper(T, {}, 0, h("uexists r:interval. r & X r & X X !r")));
  CHECK(eval_hyper(T, {}, 0, h("uexists r:interval. X (G r)")));
  CHECK_FALSE(eval_hyper(T, {}, 0, h("uexists r:interval. r & X !r & X X r")));
  // Codes: position c marks the subteam full ^ c, so c = 0 is the whole team
  // and c = 3 the empty one.
  CHECK(eval_hyper(T, {}, 0, h("forallp q:codes. forall pi. q@pi & X X X !q@pi")));
  CHECK(eval_hyper(T, {}, 0, h("forallp q:codes. (exists pi. X q@pi) & (exists pi. X !q@pi)")));
  CHECK(eval_hyper(T, {}, 0, h("forallp q:codes. forall pi. X X X X G q@pi")));
  // A code level ranges over the 2^|T| code positions.
  CHECK(eval_hyper(T, {}, 0, h("forallp q:codes. uexists c:code. forall pi. F (c & !q@pi)")));
  CHECK_FALSE(eval_hyper(T, {}, 0, h("forallp q:codes. uexists c:code. forall pi. F (c & q@pi) & F (c & !q@pi)")));
}

TEST_CASE("bound monotonicity for existential prefixes") {
  std::mt19937_64 rng(3);
  auto teams = small_teams();
  for (int trial = 0; trial < 60; ++trial) {
    const Team& T = teams[std::size_t(trial) % teams.size()];
    HFormula f = h_quant(HKind::UExists, "p", h_quant(HKind::TraceForall, "pi", random_body(rng, 3, {"pi"}, {"p"})));
    QuantBounds small, large;
    small.stemMax = 1;
    small.loopLcm = 1;
    large.stemMax = 3;
    large.loopLcm = 2;
    if (eval_hyper(T, {}, 0, f, small)) CHECK_MESSAGE(eval_hyper(T, {}, 0, f, large), render_hyper(f));
  }
}
