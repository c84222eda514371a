// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "teamltl/hyper.hpp"
#include "teamltl/kripke.hpp"
#include "teamltl/propgen.hpp"
#include "teamltl/reduction.hpp"
#include "teamltl/team_eval.hpp"
#include "teamltl/translate.hpp"

using namespace teamltl;

namespace {

constexpr uint64_t kSeed = 20261018;

// Trial counts and time limits (seconds).
constexpr std::size_t kSemanticTrials = 1000;
constexpr double kSemanticLimit = 60;
constexpr std::size_t kCoherentTrials = 1000;
constexpr double kCoherentLimit = 120;
constexpr std::size_t kLeftFlatTrials = 1000;
constexpr double kLeftFlatLimit = 120;
constexpr std::size_t kFullTrials = 300;
constexpr double kFullLimit = 600;
constexpr std::size_t kAtomTrials = 500;
constexpr double kAtomLimit = 60;
constexpr std::size_t kMcTrials = 200;
constexpr double kMcLimit = 300;

// Size constants: |translation| <= c * |phi|.
constexpr double kLeftFlatFactor = 16;
constexpr double kFullFactor = 24;
constexpr std::size_t kSizeSamples = 2000;

struct Line {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string report_str(const SuiteReport& r) {
  std::string s = r.name + " " + std::to_string(r.passed) + "/" + std::to_string(r.trials) +
                  " failed=" + std::to_string(r.failed) + " skipped=" + std::to_string(r.skipped);
  if (!r.detail.empty()) s += " [" + r.detail + "]";
  return s;
}

Line suites(const std::vector<std::string>& names, std::size_t trials, double limit) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string d;
  for (const auto& n : names) {
    SuiteReport r = run_suite(n, trials, kSeed);
    ok = ok && r.failed == 0 && r.skipped == 0;
    d += (d.empty() ? "" : "; ") + report_str(r);
  }
  double t = seconds_since(t0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "; %.2fs (limit %.0fs)", t, limit);
  return {ok && t < limit, d + buf};
}

Line flatness_witness() {
  const std::vector<std::string> ap = {"p"};
  const LassoTrace p0{{1}, {0}}, p1{{0, 1}, {0}}, none{{}, {0}};
  Team plus = make_team(ap, {p0, p1});
  Team all = make_team(ap, {p0, p1, none});
  const bool a = eval(plus, 0, parse_team_formula("A1 F p"));
  const bool b = eval(all, 0, parse_team_formula("A1 F p"));
  const bool c = eval(plus, 0, parse_team_formula("F p"));
  return {a && !b && !c, std::string("T+ |= A1 F p: ") + (a ? "true" : "false") +
                             ", T |= A1 F p: " + (b ? "true" : "false") + ", T+ |= F p: " + (c ? "true" : "false")};
}

Line reduction_smoke() {
  std::string d;
  CounterMachine I = parse_machine("0: IFZ l ? 0 : 0\n");
  Team T = encode_computation(I, Run{{}, {Config{}}}, 0);
  const bool a = T.traces.size() == 1 && eval(T, 0, mk_and(theta_comp(I), theta_rec(0)));
  d += std::string("(a) ") + (a ? "ok" : "FAIL");

  bool b = true;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<Instruction> ins(n, Instruction{Instruction::Op::Inc, 0, 0, n - 1});
    b = b && build_kripke(make_machine(ins)).size() == 16 * n;
  }
  d += std::string(" (b) ") + (b ? "ok" : "FAIL");

  CounterMachine J = parse_machine("0: INC l -> {1,1}\n1: DEC l -> {2,0}\n2: IFZ m ? 0 : 1\n");
  const bool c = count_kind(build_formula_nonlossy(J, 1), Kind::SubteamAll) == 1;
  d += std::string(" (c) ") + (c ? "ok" : "FAIL");

  Kripke K = make_kripke({"a"}, {1, 0}, {{0, 1}, {0, 1}}, 0);
  SatEmbedding e = build_sat_embedding(K);
  std::vector<LassoTrace> full = traces_enumerate(e.extended, 1, 2);
  bool dd = eval(make_team(e.extended.ap, full), 0, e.theta);
  // Deficient: drop the trace that moves w0 -> w1 -> w1.
  std::vector<LassoTrace> less;
  for (const auto& t : full)
    if (!(t.stem.size() == 1 && t.loop.size() == 1)) less.push_back(t);
  dd = dd && less.size() + 1 == full.size() && !eval(make_team(e.extended.ap, less), 0, e.theta);
  d += std::string(" (d) ") + (dd ? "ok" : "FAIL");
  return {a && b && c && dd, d};
}

std::size_t top_disjuncts(const HFormula& h) {
  if (h->kind != HKind::Or) return 1;
  return top_disjuncts(h->kids[0]) + top_disjuncts(h->kids[1]);
}

Line size_bounds() {
  double worst_lf = 0, worst_full = 0;
  for (uint64_t s = 0; s < kSizeSamples; ++s) {
    Formula l = gen_formula(kSeed + s, 4, GenFragment::LeftFlat);
    worst_lf = std::max(worst_lf, double(h_size(leftflat_translate(l))) / double(formula_size(l)));
    Formula b = gen_formula(kSeed + s, 4, GenFragment::BorNEFlat);
    worst_full = std::max(worst_full, double(h_size(full_translate(b))) / double(formula_size(b)));
  }
  // Split nodes over operands that are not splits and do not simplify to a
  // constant (unit laws would merge covers).
  bool covers = true;
  std::size_t checked = 0;
  for (uint64_t s = 0; checked < 200; ++s) {
    Formula x = gen_formula(kSeed + s, 2, GenFragment::Plain), y = gen_formula(kSeed + 7919 * s, 2, GenFragment::Plain);
    if (x->kind == Kind::Or || y->kind == Kind::Or || count_kind(x, Kind::False) || count_kind(y, Kind::False) ||
        x->kind == Kind::True || y->kind == Kind::True)
      continue;
    Formula phi = mk_or(x, y);
    std::size_t expect = 1;
    for (std::size_t k = 1; k <= 3; ++k) {
      expect *= 3;
      covers = covers && top_disjuncts(kcoherent_body(phi, kcoherent_vars(k))) == expect;
    }
    ++checked;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "max |leftflat|/|phi| = %.2f (c=%.0f), max |full|/|phi| = %.2f (c=%.0f), covers 3^k on %zu splits: %s",
                worst_lf, kLeftFlatFactor, worst_full, kFullFactor, checked, covers ? "ok" : "FAIL");
  return {worst_lf <= kLeftFlatFactor && worst_full <= kFullFactor && covers, buf};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Line()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "semantic properties",
       [] { return suites({"downward", "empty", "singleton", "flatness"}, kSemanticTrials, kSemanticLimit); }},
      {2, "k-coherent translation oracle", [] { return suites({"kcoherent"}, kCoherentTrials, kCoherentLimit); }},
      {3, "left-flat translation oracle", [] { return suites({"leftflat"}, kLeftFlatTrials, kLeftFlatLimit); }},
      {4, "full translation oracle", [] { return suites({"full"}, kFullTrials, kFullLimit); }},
      {5, "generalized-atom elimination", [] { return suites({"atoms"}, kAtomTrials, kAtomLimit); }},
      {6, "flatness separation witness", flatness_witness},
      {7, "forall-k pipeline cross-check", [] { return suites({"mc_forall"}, kMcTrials, kMcLimit); }},
      {8, "reduction smoke tests", reduction_smoke},
      {9, "size bounds and cover counts", size_bounds},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Line l;
    try {
      l = c.run();
    } catch (const std::exception& e) {
      l = {false, std::string("exception: ") + e.what()};
    }
    failed += !l.pass;
    std::printf("criterion %d (%s): %s  %s\n", c.id, c.name, l.pass ? "PASS" : "FAIL", l.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
