// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "teamltl/formula.hpp"
#include "teamltl/hyper.hpp"
#include "teamltl/traces.hpp"

namespace teamltl {

struct Kripke {
  std::vector<std::string> ap;
  std::vector<Letter> label;                 // per state
  std::vector<std::vector<std::size_t>> succ;  // per state, sorted
  std::size_t init = 0;

  std::size_t size() const { return label.size(); }
};

// Validates (successors exist, ids in range) and sorts successor lists.
Kripke make_kripke(std::vector<std::string> ap, std::vector<Letter> label,
                   std::vector<std::vector<std::size_t>> succ, std::size_t init);

// {"ap":[...], "states":[{"id":0,"label":["a"]}], "init":0, "edges":[[0,1],...]}
Kripke parse_kripke_json(const std::string& text);
std::string kripke_to_json(const Kripke& K);

// Canonical traces t(u v^w) of paths from the initial state with
// |u| <= stemMax, 1 <= |v| <= loopMax; sorted and deduplicated.
std::vector<LassoTrace> traces_enumerate(const Kripke& K, std::size_t stemMax, std::size_t loopMax);

// Is the lasso (over K.ap) the trace of some path of K?
bool is_trace_of(const Kripke& K, const LassoTrace& t);

// Random structure over a, b, ...; every state gets 1-2 successors. With
// finite_traces, states on cycles have one successor, so Traces(K) is finite
// and equals traces_enumerate(K, n, n).
Kripke gen_kripke(uint64_t seed, std::size_t maxStates, std::size_t apCount, bool finite_traces = false);
bool has_finite_traces(const Kripke& K);

// A letter satisfies the guard iff it contains `pos` and avoids `neg`.
struct Guard {
  uint64_t pos = 0, neg = 0;
  bool ok(uint64_t letter) const { return (letter & pos) == pos && (letter & neg) == 0; }
};

// Büchi automaton over letters = bitmasks over `props`. A run starts in
// `init` and reads position j on its (j+1)-th transition.
struct Buchi {
  std::vector<std::string> props;
  std::size_t init = 0;
  std::vector<std::vector<std::pair<std::size_t, Guard>>> succ;
  std::vector<bool> accepting;

  std::size_t size() const { return succ.size(); }
};

// Tableau construction with generalized acceptance, then degeneralization.
// Input must be an LTL formula (negation normal form by construction).
Buchi ltl_to_buchi(const Formula& psi);
// Quantifier-free hyper body; literal p@pi becomes proposition "p@pi",
// unindexed literals keep their name.
Buchi ltl_to_buchi(const HFormula& body);

// Acceptance of a lasso word whose letters are bitmasks over B.props.
bool buchi_accepts(const Buchi& B, const LassoTrace& word);

struct ForallResult {
  bool holds = true;
  std::vector<LassoTrace> counterexample;  // one trace per pi1..pik when !holds
  std::size_t product_states = 0;
};

// Does every k-tuple of traces of K satisfy phi^{pi1..pik}? Exact.
ForallResult check_forall_k(const Kripke& K, const Formula& phi, std::size_t k);

// Same for an arbitrary quantifier-free body over p@pi1..p@pik.
ForallResult check_forall_body(const Kripke& K, const HFormula& body, const std::vector<std::string>& vars);

struct ExistsForallVerdict {
  enum class Kind { Holds, FailsUpTo, ExactFail } kind = Kind::ExactFail;
  std::map<std::string, LassoTrace> witness;  // uniform variables (letters 0/1) and existential traces
  std::string bounds;                         // set for FailsUpTo
  std::size_t search_nodes = 0;
};

struct ExistsForallBounds {
  std::size_t stemMax = 2;  // enumerated witnesses: unrestricted uniform variables and existential traces
  std::size_t loopMax = 2;
  std::size_t max_nodes = 2'000'000;
};

// phi = (uexists p:shape.)* (exists pi.)* forall pi. body over Traces(K) at
// time 0. Level-shaped and reach-limited uniform variables are decided
// exactly; other witnesses are enumerated up to the bounds.
ExistsForallVerdict check_exists_forall(const Kripke& K, const HFormula& phi, const ExistsForallBounds& b = {});

enum class McMode { KCoherent, LeftFlat, Bounded };

struct McVerdict {
  enum class Kind { Holds, Refuted, HoldsOnApprox, Unknown } kind = Kind::Unknown;
  std::string detail;  // bounds and witnesses
  std::vector<LassoTrace> counterexample;
};

struct McOptions {
  McMode mode = McMode::Bounded;
  std::size_t k = 1;
  std::size_t stemMax = 2, loopMax = 2;
  std::size_t max_nodes = 2'000'000;  // LeftFlat search cap
};

McVerdict mc_teamltl(const Kripke& K, const Formula& phi, const McOptions& opts);
const char* verdict_name(McVerdict::Kind k);

// TeamLTL(inc, vv) to LTL: vv -> |, inc(x;y) -> conjunction of x_j <-> y_j.
Formula one_coherence_reduction(const Formula& phi);

}  // namespace teamltl
