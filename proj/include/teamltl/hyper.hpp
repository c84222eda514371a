// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "teamltl/traces.hpp"

namespace teamltl {

enum class HKind {
  True,
  False,
  Lit,     // name, optional trace variable
  NegLit,
  And,
  Or,
  Next,
  Until,
  WeakUntil,
  TraceForall,
  TraceExists,
  UForall,  // uniform propositional quantifiers
  UExists,
  PForall,  // non-uniform propositional quantifiers
  PExists,
};

// Range restrictions of propositional quantifiers. Positions are counted from
// the time at which the quantifier is evaluated.
enum class Shape {
  None,       // bounded lassos
  One,        // true at exactly one position
  AtMostOne,  // true at no position or at exactly one
  Interval,   // true exactly on [a,b) or [a,inf), possibly nowhere
  CodeLevel,  // exactly one position below t + 2^|T| (selects a subteam code)
  Codes,      // non-uniform only: the canonical subteam labeling
};

struct HNode;
using HFormula = std::shared_ptr<const HNode>;

struct HNode {
  HKind kind;
  std::string name;  // proposition (literals) or bound variable (quantifiers)
  std::string var;   // trace variable of an indexed literal, empty if unindexed
  Shape shape = Shape::None;
  // Level-shaped quantifiers: nesting rank of the time position they mark.
  // Positions range below max(t,S) + P*rank + 1. -1 = number of enclosing
  // level-shaped quantifiers.
  int rank = -1;
  std::vector<HFormula> kids;
};

HFormula h_true();
HFormula h_false();
HFormula h_lit(const std::string& p, const std::string& var = {});
HFormula h_neglit(const std::string& p, const std::string& var = {});
HFormula h_and(HFormula a, HFormula b);
HFormula h_or(HFormula a, HFormula b);
HFormula h_next(HFormula a);
HFormula h_until(HFormula a, HFormula b);
HFormula h_weakuntil(HFormula a, HFormula b);
HFormula h_eventually(HFormula a);
HFormula h_globally(HFormula a);
HFormula h_quant(HKind k, const std::string& v, HFormula body, Shape shape = Shape::None, int rank = -1);
HFormula h_and_all(const std::vector<HFormula>& fs);  // empty = true
HFormula h_or_all(const std::vector<HFormula>& fs);   // empty = false

// NNF negation, dualizing quantifiers.
HFormula h_negate(const HFormula& f);
HFormula h_implies(const HFormula& a, const HFormula& b);
HFormula h_iff(const HFormula& a, const HFormula& b);

bool h_is_quantifier(HKind k);
std::size_t h_size(const HFormula& f);
bool h_structurally_equal(const HFormula& a, const HFormula& b);

// Leading quantifier block and the remaining formula.
struct Prefix {
  std::vector<const HNode*> quantifiers;
  HFormula body;
};
Prefix split_prefix(const HFormula& f);

// Pulls all quantifiers to the front, keeping their nesting order. Sound for
// nonempty teams when bound names are distinct.
HFormula prenex(const HFormula& f);

class HyperParseError : public std::runtime_error {
 public:
  HyperParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Grammar: quantifier tokens `forall pi.`, `exists pi.`, `uforall p.`,
// `uexists p.`, `forallp p.`, `existsp p.` (optionally `p:one`, `p:atmostone`,
// `p:interval`, `p:code`, `p:codes`, each optionally followed by a rank `[k]`);
// literals `p@pi`, `!p@pi`, `r`, `!r`;
// connectives as in the team grammar (& | X U W F G true false).
HFormula parse_hyper(const std::string& text);
std::string render_hyper(const HFormula& f);

struct QuantBounds {
  std::optional<std::size_t> stemMax;  // level/lasso positions; default from the horizon
  std::optional<std::size_t> loopLcm;  // loop length of unrestricted lassos; default P
  std::size_t level_slack = 0;         // added to every level bound
  std::size_t cap = 1u << 20;          // largest quantifier domain
  std::size_t work_cap = 40'000'000;   // evaluation steps
};

class BoundsCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnboundVariable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using TraceAssignment = std::map<std::string, std::size_t>;  // trace variable -> index into T.traces

// Truth of phi at time i on team T under the trace assignment.
// Throws BoundsCapExceeded, UnboundVariable.
bool eval_hyper(const Team& T, const TraceAssignment& pi, std::size_t i, const HFormula& phi,
                const QuantBounds& bounds = {});

// Statistics of the last evaluation on this thread (for logging).
struct HyperStats {
  std::size_t steps = 0;
  std::size_t level_bound = 0;
  std::size_t stem_max = 0;
  std::size_t loop_lcm = 0;
  bool solver_used = false;
};
HyperStats last_hyper_stats();

}  // namespace teamltl
