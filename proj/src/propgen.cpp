// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamltl/propgen.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>

#include "teamltl/hyper.hpp"
#include "teamltl/team_eval.hpp"
#include "teamltl/translate.hpp"

namespace teamltl {

std::vector<std::string> gen_ap(std::size_t apCount) {
  std::vector<std::string> ap;
  for (std::size_t j = 0; j < apCount; ++j) ap.push_back(std::string(1, char('a' + j)));
  return ap;
}

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

LassoTrace random_lasso(std::mt19937_64& rng, std::size_t stemMax, std::size_t loopMax, std::size_t apCount) {
  const Letter letters = Letter(1) << apCount;
  LassoTrace t;
  const std::size_t s = uniform(rng, 0, stemMax), l = uniform(rng, 1, loopMax);
  for (std::size_t j = 0; j < s; ++j) t.stem.push_back(Letter(uniform(rng, 0, letters - 1)));
  for (std::size_t j = 0; j < l; ++j) t.loop.push_back(Letter(uniform(rng, 0, letters - 1)));
  return t;
}

class FormulaGen {
 public:
  FormulaGen(uint64_t seed, const GenOptions& o) : rng_(seed), o_(o), ap_(gen_ap(o.apCount)) {}

  Formula lit() {
    const std::string& p = ap_[uniform(rng_, 0, ap_.size() - 1)];
    switch (uniform(rng_, 0, 9)) {
      case 0: return mk_true();
      case 1: return mk_false();
      default: return rng_() & 1 ? mk_prop(p) : mk_negprop(p);
    }
  }

  bool stop(int d) { return d <= 0 || uniform(rng_, 0, 4) == 0; }

  Formula temporal(int d, const std::function<Formula(int)>& left, const std::function<Formula(int)>& right,
                   std::size_t choice) {
    switch (choice) {
      case 0: return mk_next(right(d - 1));
      case 1: return mk_until(left(d - 1), right(d - 1));
      case 2: return mk_weakuntil(left(d - 1), right(d - 1));
      case 3: return mk_eventually(right(d - 1));
      default: return mk_globally(left(d - 1));
    }
  }

  Formula ltl(int d) {
    if (stop(d)) return lit();
    auto self = [this](int x) { return ltl(x); };
    switch (uniform(rng_, 0, 6)) {
      case 0: return mk_and(ltl(d - 1), ltl(d - 1));
      case 1: return mk_or(ltl(d - 1), ltl(d - 1));
      default: return temporal(d, self, self, uniform(rng_, 0, 4));
    }
  }

  // Operands of A1: LTL connectives, vv, NE, nested A1.
  Formula eliminable(int d) {
    if (stop(d)) return uniform(rng_, 0, 5) == 0 ? mk_ne() : lit();
    auto self = [this](int x) { return eliminable(x); };
    switch (uniform(rng_, 0, 8)) {
      case 0: return mk_and(eliminable(d - 1), eliminable(d - 1));
      case 1: return mk_or(eliminable(d - 1), eliminable(d - 1));
      case 2:
      case 3: return mk_boolor(eliminable(d - 1), eliminable(d - 1));
      case 4: return mk_flatall(eliminable(d - 1));
      default: return temporal(d, self, self, uniform(rng_, 0, 4));
    }
  }

  // Syntactically flat: literals, &, |, X, A1.
  Formula flat(int d) {
    if (stop(d)) return lit();
    switch (uniform(rng_, 0, 4)) {
      case 0: return mk_and(flat(d - 1), flat(d - 1));
      case 1: return mk_or(flat(d - 1), flat(d - 1));
      case 2: return mk_next(flat(d - 1));
      default: return mk_flatall(eliminable(d - 1));
    }
  }

  Formula leftflat(int d) {
    if (stop(d)) return lit();
    switch (uniform(rng_, 0, 9)) {
      case 0: return mk_and(leftflat(d - 1), leftflat(d - 1));
      case 1: return mk_or(leftflat(d - 1), leftflat(d - 1));
      case 2: return mk_boolor(leftflat(d - 1), leftflat(d - 1));
      case 3: return mk_next(leftflat(d - 1));
      case 4: return mk_flatall(eliminable(d - 1));
      case 5: return mk_until(flat(d - 1), leftflat(d - 1));
      case 6: return mk_weakuntil(flat(d - 1), leftflat(d - 1));
      case 7: return mk_eventually(leftflat(d - 1));
      case 8: return mk_globally(flat(d - 1));
      default: return mk_until(flat(d - 1), leftflat(d - 1));
    }
  }

  Formula borne(int d) {
    if (stop(d)) return uniform(rng_, 0, 5) == 0 ? mk_ne() : lit();
    auto self = [this](int x) { return borne(x); };
    switch (uniform(rng_, 0, 8)) {
      case 0: return mk_and(borne(d - 1), borne(d - 1));
      case 1: return mk_or(borne(d - 1), borne(d - 1));
      case 2: return mk_boolor(borne(d - 1), borne(d - 1));
      case 3: return mk_flatall(eliminable(d - 1));
      default: return temporal(d, self, self, uniform(rng_, 0, 4));
    }
  }

  Formula ltl_arg(int d) { return ltl(int(uniform(rng_, 0, std::size_t(std::min(1, d))))); }

  Formula genatom(int d) {
    const int arity = int(uniform(rng_, 1, 2));
    const uint32_t tuples = 1u << arity;
    std::vector<std::vector<uint32_t>> rels;
    const std::size_t count = uniform(rng_, 1, 4);
    for (std::size_t j = 0; j < count; ++j) {
      std::vector<uint32_t> rel;
      for (uint32_t t = 0; t < tuples; ++t)
        if (rng_() & 1) rel.push_back(t);
      rels.push_back(rel);
    }
    auto fam = std::make_shared<const BoolRelationFamily>(
        BoolRelationFamily::make("R" + std::to_string(families_++), arity, rels));
    std::vector<Formula> args;
    for (int j = 0; j < arity; ++j) args.push_back(ltl_arg(d));
    return mk_genatom(fam, args);
  }

  Formula atom(int d) {
    if (o_.allow_genatoms && uniform(rng_, 0, 2) == 0) return genatom(d);
    if (rng_() & 1) {
      std::vector<Formula> args;
      const std::size_t n = uniform(rng_, 0, 2);
      for (std::size_t j = 0; j < n; ++j) args.push_back(ltl_arg(d));
      return mk_dep(args, ltl_arg(d));
    }
    return mk_inc({ltl_arg(d)}, {ltl_arg(d)});
  }

  Formula kcoherent(int d) {
    if (stop(d) || (o_.prefer_atoms && d <= 1)) {
      if (d >= 1 && o_.allow_atoms && (o_.prefer_atoms || uniform(rng_, 0, 3) == 0)) return atom(d - 1);
      if (o_.allow_ne && uniform(rng_, 0, 7) == 0) return mk_ne();
      return lit();
    }
    auto self = [this](int x) { return kcoherent(x); };
    switch (uniform(rng_, 0, 10)) {
      case 0: return mk_and(kcoherent(d - 1), kcoherent(d - 1));
      case 1:
      case 2: return mk_or(kcoherent(d - 1), kcoherent(d - 1));
      case 3: return mk_boolor(kcoherent(d - 1), kcoherent(d - 1));
      case 4:
        if (o_.allow_boolneg) return mk_boolneg(kcoherent(d - 1));
        return mk_flatall(kcoherent(d - 1));
      case 5: return mk_flatall(kcoherent(d - 1));
      case 6: return mk_subteamall(kcoherent(d - 1));
      default: return temporal(d, self, self, uniform(rng_, 0, 4));
    }
  }

  Formula incor(int d) {
    if (stop(d)) {
      if (d >= 1 && uniform(rng_, 0, 2) == 0) {
        --d;
        std::vector<Formula> l, r;
        const std::size_t n = uniform(rng_, 1, 2);
        for (std::size_t j = 0; j < n; ++j) l.push_back(ltl_arg(d));
        for (std::size_t j = 0; j < n; ++j) r.push_back(ltl_arg(d));
        return mk_inc(l, r);
      }
      return lit();
    }
    auto self = [this](int x) { return incor(x); };
    switch (uniform(rng_, 0, 8)) {
      case 0: return mk_and(incor(d - 1), incor(d - 1));
      case 1: return mk_or(incor(d - 1), incor(d - 1));
      case 2:
      case 3: return mk_boolor(incor(d - 1), incor(d - 1));
      default: return temporal(d, self, self, uniform(rng_, 0, 4));
    }
  }

  Formula downward(int d) {
    if (stop(d)) {
      if (d >= 1 && o_.allow_atoms && uniform(rng_, 0, 2) == 0) {
        --d;
        std::vector<Formula> args;
        const std::size_t n = uniform(rng_, 0, 2);
        for (std::size_t j = 0; j < n; ++j) args.push_back(ltl_arg(d));
        return mk_dep(args, ltl_arg(d));
      }
      return lit();
    }
    auto self = [this](int x) { return downward(x); };
    switch (uniform(rng_, 0, 9)) {
      case 0: return mk_and(downward(d - 1), downward(d - 1));
      case 1:
      case 2: return mk_or(downward(d - 1), downward(d - 1));
      case 3: return mk_boolor(downward(d - 1), downward(d - 1));
      case 4: return mk_flatall(downward(d - 1));
      case 5: return mk_subteamall(downward(d - 1));
      default: return temporal(d, self, self, uniform(rng_, 0, 4));
    }
  }

  std::mt19937_64 rng_;
  GenOptions o_;
  int families_ = 0;
  std::vector<std::string> ap_;
};

}  // namespace

Team gen_team(uint64_t seed, std::size_t maxTraces, std::size_t stemMax, std::size_t loopMax, std::size_t apCount) {
  std::mt19937_64 rng(seed);
  std::vector<LassoTrace> ts;
  const std::size_t n = uniform(rng, 0, maxTraces);
  for (std::size_t j = 0; j < n; ++j) ts.push_back(random_lasso(rng, stemMax, loopMax, apCount));
  return make_team(gen_ap(apCount), ts);
}

Formula gen_formula(uint64_t seed, int depth, GenFragment fragment, const GenOptions& opts) {
  FormulaGen g(seed, opts);
  switch (fragment) {
    case GenFragment::Plain: return g.ltl(depth);
    case GenFragment::LeftFlat: return g.leftflat(depth);
    case GenFragment::BorNEFlat: return g.borne(depth);
    case GenFragment::KCoherent: return g.kcoherent(depth);
    case GenFragment::Downward: return g.downward(depth);
    case GenFragment::IncOr: return g.incor(depth);
  }
  return g.lit();
}

namespace {

bool inc_or_only(const Formula& f) {
  switch (f->kind) {
    case Kind::Inc:
      for (const auto& k : f->kids)
        if (!is_ltl(k)) return false;
      return true;
    case Kind::True:
    case Kind::False:
    case Kind::Prop:
    case Kind::NegProp:
    case Kind::And:
    case Kind::Or:
    case Kind::BoolOr:
    case Kind::Next:
    case Kind::Until:
    case Kind::WeakUntil:
      for (const auto& k : f->kids)
        if (!inc_or_only(k)) return false;
      return true;
    default: return false;
  }
}

}  // namespace

bool in_fragment(const Formula& f, GenFragment fragment) {
  if (fragment == GenFragment::IncOr) return inc_or_only(f);
  auto info = classify_fragment(f);
  switch (fragment) {
    case GenFragment::Plain: return info.plain;
    case GenFragment::LeftFlat: return info.leftflat;
    case GenFragment::BorNEFlat: return info.borneflat;
    case GenFragment::KCoherent: return info.kcoherent;
    case GenFragment::Downward: return info.downward_closed;
    case GenFragment::IncOr: return false;
  }
  return false;
}

const char* gen_fragment_name(GenFragment f) {
  switch (f) {
    case GenFragment::Plain: return "plain";
    case GenFragment::LeftFlat: return "leftflat";
    case GenFragment::BorNEFlat: return "borneflat";
    case GenFragment::KCoherent: return "kcoherent";
    case GenFragment::Downward: return "downward";
    case GenFragment::IncOr: return "incor";
  }
  return "";
}

// ---------------------------------------------------------------------------
// Shrinking

namespace {

std::vector<Formula> smaller_formulas(const Formula& f) {
  std::vector<Formula> out;
  for (const auto& k : f->kids) out.push_back(k);
  for (std::size_t j = 0; j < f->kids.size(); ++j)
    for (const auto& s : smaller_formulas(f->kids[j])) {
      auto n = std::make_shared<Node>(*f);
      n->kids[j] = s;
      out.push_back(n);
    }
  return out;
}

std::vector<TrialInput> smaller_inputs(const TrialInput& in) {
  std::vector<TrialInput> out;
  auto with = [&](Team t, Formula f, std::size_t i) {
    TrialInput x = in;
    x.team = std::move(t);
    x.formula = std::move(f);
    x.index = i;
    return x;
  };
  const auto& ts = in.team.traces;
  for (std::size_t j = 0; j < ts.size(); ++j) {
    auto c = ts;
    c.erase(c.begin() + long(j));
    out.push_back(with(make_team(in.team.ap, c), in.formula, in.index));
  }
  for (std::size_t j = 0; j < ts.size(); ++j) {
    if (!ts[j].stem.empty()) {
      auto c = ts;
      c[j].stem.pop_back();
      out.push_back(with(make_team(in.team.ap, c), in.formula, in.index));
    }
    if (ts[j].loop.size() > 1) {
      auto c = ts;
      c[j].loop.pop_back();
      out.push_back(with(make_team(in.team.ap, c), in.formula, in.index));
    }
  }
  if (in.index > 0) out.push_back(with(in.team, in.formula, in.index - 1));
  for (const auto& s : smaller_formulas(in.formula)) out.push_back(with(in.team, s, in.index));
  return out;
}

}  // namespace

TrialInput shrink(const TrialInput& in, const Property& prop) {
  TrialInput cur = in;
  for (int rounds = 0; rounds < 200; ++rounds) {
    bool progressed = false;
    for (const auto& c : smaller_inputs(cur)) {
      Outcome o;
      try {
        o = prop(c);
      } catch (const std::exception&) {
        continue;
      }
      if (o == Outcome::Fail) {
        cur = c;
        progressed = true;
        break;
      }
    }
    if (!progressed) break;
  }
  return cur;
}

SuiteReport run_property(const std::string& name, const InputGen& gen, const Property& prop, std::size_t trials,
                         uint64_t seed) {
  SuiteReport rep;
  rep.name = name;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t t = 0; t < trials; ++t) {
    TrialInput in = gen(seed + t);
    Outcome o;
    try {
      o = prop(in);
    } catch (const BoundsCapExceeded& e) {
      o = Outcome::Skip;
      if (rep.detail.empty()) rep.detail = e.what();
    }
    ++rep.trials;
    if (o == Outcome::Pass) ++rep.passed;
    else if (o == Outcome::Skip) ++rep.skipped;
    else {
      ++rep.failed;
      if (!rep.counterexample) rep.counterexample = shrink(in, prop);
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// ---------------------------------------------------------------------------
// Suites

namespace {

constexpr std::size_t kGridTraces = 4, kGridStem = 3, kGridLoop = 2, kGridProps = 2;
constexpr int kGridDepth = 4;

InputGen grid_gen(GenFragment frag, int depth = kGridDepth, std::size_t maxTraces = kGridTraces,
                  GenOptions opts = {}) {
  return [=](uint64_t seed) {
    std::mt19937_64 rng(seed);
    TrialInput in;
    in.team = gen_team(rng(), maxTraces, kGridStem, kGridLoop, kGridProps);
    in.formula = gen_formula(rng(), depth, frag, opts);
    in.index = uniform(rng, 0, 2);
    return in;
  };
}

Outcome check(bool ok) { return ok ? Outcome::Pass : Outcome::Fail; }

Outcome prop_downward(const TrialInput& in) {
  TeamEvaluator ev(in.team);
  if (!ev.eval(ev.full(), in.index, in.formula)) return Outcome::Pass;
  for (Subteam s = 0; s < ev.full(); ++s)
    if ((s & ev.full()) == s && !ev.eval(s, in.index, in.formula)) return Outcome::Fail;
  return Outcome::Pass;
}

Outcome prop_empty(const TrialInput& in) {
  return check(eval(make_team(in.team.ap, {}), in.index, in.formula));
}

Outcome prop_singleton(const TrialInput& in) {
  for (const auto& t : in.team.traces)
    if (eval(make_team(in.team.ap, {t}), in.index, in.formula) != eval_ltl(t, in.index, in.formula, in.team.ap))
      return Outcome::Fail;
  return Outcome::Pass;
}

Outcome flatness(const TrialInput& in, EvalOptions opts) {
  Formula f = mk_flatall(in.formula);
  bool all = true;
  for (const auto& t : in.team.traces) all = all && eval(make_team(in.team.ap, {t}), in.index, f, opts);
  return check(eval(in.team, in.index, f, opts) == all);
}

Outcome prop_complement(const TrialInput& in) {
  return check(eval(in.team, in.index, mk_boolneg(in.formula)) != eval(in.team, in.index, in.formula));
}

Outcome prop_periodicity(const TrialInput& in) {
  if (in.team.traces.empty()) return Outcome::Pass;
  Horizon h = horizon(in.team.traces, 0);
  const std::size_t i = h.S + in.index;
  return check(eval(in.team, i, in.formula) == eval(in.team, i + h.P, in.formula));
}

Outcome prop_kcoherent(const TrialInput& in, std::size_t k) {
  const Team& T = in.team;
  const std::size_t m = T.traces.size();
  if (m > k) return Outcome::Skip;
  const bool team_value = eval(T, in.index, in.formula);
  if (m == 0) return check(eval_hyper(T, {}, in.index, kcoherent_body(in.formula, {})) == team_value);
  auto vars = kcoherent_vars(k);
  TraceAssignment pi;
  for (std::size_t j = 0; j < k; ++j) pi[vars[j]] = j % m;
  if (eval_hyper(T, pi, in.index, kcoherent_body(in.formula, vars)) != team_value) return Outcome::Fail;
  // Closing form: every subteam of size <= k.
  TeamEvaluator ev(T);
  bool all = true;
  for (Subteam s = 1; s <= ev.full() && all; ++s)
    if (std::size_t(__builtin_popcountll(s)) <= k) all = ev.eval(s, in.index, in.formula);
  return check(eval_hyper(T, {}, in.index, kcoherent_translate(in.formula, k)) == all);
}

Outcome prop_leftflat(const TrialInput& in) {
  return check(eval_hyper(in.team, {}, in.index, leftflat_translate(in.formula)) ==
               eval(in.team, in.index, in.formula));
}

Outcome prop_full(const TrialInput& in, std::size_t* escalations) {
  const bool expect = eval(in.team, in.index, in.formula);
  HFormula h = full_translate(in.formula);
  try {
    if (eval_hyper(in.team, {}, in.index, h) == expect) return Outcome::Pass;
  } catch (const BoundsCapExceeded&) {
  }
  if (escalations) ++*escalations;
  QuantBounds b;
  b.level_slack = in.team.traces.empty() ? 1 : horizon(in.team.traces, 0).P + 1;
  b.work_cap *= 4;
  return check(eval_hyper(in.team, {}, in.index, h, b) == expect);
}

Outcome prop_atoms(const TrialInput& in) {
  return check(eval(in.team, in.index, in.formula) ==
               eval(in.team, in.index, eliminate_generalized_atoms(in.formula)));
}

LassoTrace to_alphabet(const LassoTrace& t, const std::vector<std::string>& from, const std::vector<std::string>& to) {
  auto map = [&](Letter l) {
    Letter out = 0;
    for (std::size_t j = 0; j < to.size(); ++j) {
      auto it = std::find(from.begin(), from.end(), to[j]);
      if (it != from.end() && (l >> (it - from.begin()) & 1)) out |= Letter(1) << j;
    }
    return out;
  };
  LassoTrace r;
  for (Letter l : t.stem) r.stem.push_back(map(l));
  for (Letter l : t.loop) r.loop.push_back(map(l));
  return r;
}

Outcome prop_buchi(const TrialInput& in) {
  Buchi B = ltl_to_buchi(in.formula);
  for (const auto& t : in.team.traces)
    if (buchi_accepts(B, to_alphabet(suffix(t, in.index), in.team.ap, B.props)) !=
        eval_ltl(t, in.index, in.formula, in.team.ap))
      return Outcome::Fail;
  return Outcome::Pass;
}

Outcome prop_coherence1(const TrialInput& in) {
  Formula star = one_coherence_reduction(in.formula);
  for (const auto& t : in.team.traces)
    if (eval(make_team(in.team.ap, {t}), in.index, in.formula) != eval_ltl(t, in.index, star, in.team.ap))
      return Outcome::Fail;
  return Outcome::Pass;
}

constexpr std::size_t kMcStates = 4, kMcEnumStem = 3, kMcEnumLoop = 3;
constexpr int kMcDepth = 3;

InputGen mc_gen(GenFragment frag, bool finite) {
  return [=](uint64_t seed) {
    std::mt19937_64 rng(seed);
    TrialInput in;
    in.kripke = gen_kripke(rng(), kMcStates, kGridProps, finite);
    in.team = make_team(in.kripke->ap, {});
    in.formula = gen_formula(rng(), kMcDepth, frag);
    in.k = uniform(rng, 1, 2);
    return in;
  };
}

// Automaton verdict against exhaustive evaluation of the translated formula
// over the enumerated traces; counterexamples are replayed.
Outcome prop_mc_forall(const TrialInput& in, std::size_t* beyond) {
  const Kripke& K = *in.kripke;
  ForallResult r = check_forall_k(K, in.formula, in.k);
  // Loops as long as the structure, so every K has at least one enumerated trace.
  Team T = make_team(K.ap, traces_enumerate(K, kMcEnumStem, std::max(kMcEnumLoop, K.size())));
  const auto vars = kcoherent_vars(in.k);
  const HFormula body = kcoherent_body(in.formula, vars);
  auto tuple_holds = [&](const std::vector<LassoTrace>& tuple) {
    Team C = make_team(K.ap, tuple);
    TraceAssignment pi;
    for (std::size_t j = 0; j < tuple.size(); ++j)
      pi[vars[j]] = std::size_t(std::find(C.traces.begin(), C.traces.end(), tuple[j]) - C.traces.begin());
    return eval_hyper(C, pi, 0, body);
  };
  bool brute = true;
  std::vector<std::size_t> idx(in.k, 0);
  while (brute) {
    std::vector<LassoTrace> tuple;
    for (std::size_t j : idx) tuple.push_back(T.traces[j]);
    brute = tuple_holds(tuple);
    std::size_t j = 0;
    while (j < in.k && ++idx[j] == T.traces.size()) idx[j++] = 0;
    if (j == in.k) break;
  }
  if (r.holds) return check(brute);
  if (r.counterexample.size() != in.k) return Outcome::Fail;
  for (const auto& t : r.counterexample)
    if (!is_trace_of(K, t)) return Outcome::Fail;
  if (tuple_holds(r.counterexample)) return Outcome::Fail;
  if (!brute) return Outcome::Pass;
  for (const auto& t : r.counterexample)
    if (!std::binary_search(T.traces.begin(), T.traces.end(), t)) {
      if (beyond) ++*beyond;
      return Outcome::Pass;
    }
  return Outcome::Fail;
}

// Finite Traces(K): the left-flat verdict is exact and must match team
// semantics on the complete enumeration.
Outcome prop_mc_leftflat(const TrialInput& in) {
  const Kripke& K = *in.kripke;
  McOptions o;
  o.mode = McMode::LeftFlat;
  McVerdict v = mc_teamltl(K, in.formula, o);
  if (v.kind == McVerdict::Kind::Unknown) return Outcome::Fail;
  const bool truth = eval(make_team(K.ap, traces_enumerate(K, K.size(), K.size())), in.formula);
  return check(truth == (v.kind == McVerdict::Kind::Holds));
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"downward", "empty",    "singleton", "flatness", "complement", "periodicity", "kcoherent",   "leftflat",
          "full",     "atoms",    "mutation",  "buchi",    "coherence1", "mc_forall",   "mc_leftflat"};
}

SuiteReport run_suite(const std::string& name, std::size_t trials, uint64_t seed) {
  if (name == "downward") return run_property(name, grid_gen(GenFragment::Downward), prop_downward, trials, seed);
  if (name == "empty") {
    GenOptions o;
    o.allow_boolneg = false;
    o.allow_ne = false;
    return run_property(name, grid_gen(GenFragment::KCoherent, kGridDepth, kGridTraces, o), prop_empty, trials, seed);
  }
  if (name == "singleton") return run_property(name, grid_gen(GenFragment::Plain), prop_singleton, trials, seed);
  if (name == "flatness")
    return run_property(name, grid_gen(GenFragment::KCoherent),
                        [](const TrialInput& in) { return flatness(in, {}); }, trials, seed);
  if (name == "complement") return run_property(name, grid_gen(GenFragment::KCoherent), prop_complement, trials, seed);
  if (name == "periodicity")
    return run_property(name, grid_gen(GenFragment::KCoherent), prop_periodicity, trials, seed);
  if (name == "kcoherent") {
    SuiteReport total;
    total.name = name;
    for (std::size_t k = 1; k <= 3; ++k) {
      auto gen = [k](uint64_t s) {
        TrialInput in = grid_gen(GenFragment::KCoherent, k == 3 ? 3 : kGridDepth, k)(s);
        return in;
      };
      const std::size_t share = trials / 3 + (k <= trials % 3 ? 1 : 0);
      SuiteReport r = run_property(name, gen, [k](const TrialInput& in) { return prop_kcoherent(in, k); }, share,
                                   seed + 1000003 * k);
      total.trials += r.trials;
      total.passed += r.passed;
      total.failed += r.failed;
      total.skipped += r.skipped;
      total.seconds += r.seconds;
      if (!total.counterexample && r.counterexample) {
        total.counterexample = r.counterexample;
        total.detail = "k=" + std::to_string(k);
      }
    }
    return total;
  }
  if (name == "leftflat") return run_property(name, grid_gen(GenFragment::LeftFlat), prop_leftflat, trials, seed);
  if (name == "full") {
    std::size_t esc = 0;
    SuiteReport r = run_property(name, grid_gen(GenFragment::BorNEFlat, 3, 3),
                                 [&esc](const TrialInput& in) { return prop_full(in, &esc); }, trials, seed);
    r.detail = "escalations=" + std::to_string(esc) + (r.detail.empty() ? "" : "; " + r.detail);
    return r;
  }
  if (name == "atoms") {
    GenOptions o;
    o.allow_genatoms = true;
    o.prefer_atoms = true;
    return run_property(name, grid_gen(GenFragment::KCoherent, kGridDepth, kGridTraces, o), prop_atoms, trials, seed);
  }
  if (name == "buchi") return run_property(name, grid_gen(GenFragment::Plain), prop_buchi, trials, seed);
  if (name == "coherence1")
    return run_property(name, grid_gen(GenFragment::IncOr), prop_coherence1, trials, seed);
  if (name == "mc_forall") {
    std::size_t beyond = 0;
    SuiteReport r = run_property(name, mc_gen(GenFragment::KCoherent, false),
                                 [&beyond](const TrialInput& in) { return prop_mc_forall(in, &beyond); }, trials,
                                 seed);
    r.detail = "beyond_enumeration=" + std::to_string(beyond) + (r.detail.empty() ? "" : "; " + r.detail);
    return r;
  }
  if (name == "mc_leftflat")
    return run_property(name, mc_gen(GenFragment::LeftFlat, true), prop_mc_leftflat, trials, seed);
  if (name == "mutation") {
    EvalOptions mut;
    mut.flatall_as_identity = true;
    return run_property(name, grid_gen(GenFragment::Plain),
                        [mut](const TrialInput& in) { return flatness(in, mut); }, trials, seed);
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace teamltl
