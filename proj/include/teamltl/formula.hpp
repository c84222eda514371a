// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace teamltl {

enum class Kind {
  True,
  False,
  Prop,
  NegProp,
  And,
  Or,          // split disjunction
  BoolOr,      // Boolean disjunction
  BoolNeg,     // Boolean negation
  Next,
  Until,
  WeakUntil,
  Dep,
  Inc,
  FlatAll,     // flattening quantifier, one trace at a time
  SubteamAll,  // all subteams
  NE,
  LeftOr,
  GenAtom,
};

// A finite set of n-ary Boolean relations. Tuple (b1..bn) is stored as the
// bitmask sum_j b_j << (j-1).
struct BoolRelationFamily {
  std::string name;
  int arity = 0;
  std::vector<std::vector<uint32_t>> relations;  // each sorted, deduplicated

  // Validates, sorts and deduplicates. Throws std::invalid_argument.
  static BoolRelationFamily make(std::string name, int arity,
                                 std::vector<std::vector<uint32_t>> rels);
  bool contains(const std::vector<uint32_t>& rel) const;
  bool downward_closed() const;
};

using FamilyPtr = std::shared_ptr<const BoolRelationFamily>;
using FamilyRegistry = std::map<std::string, FamilyPtr>;

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  std::string name;            // Prop / NegProp
  std::vector<Formula> kids;   // operands; Dep: args then target; Inc: left then right
  std::size_t split = 0;       // Dep: number of args; Inc: tuple length
  FamilyPtr family;            // GenAtom
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Constructors.
Formula mk_true();
Formula mk_false();
Formula mk_prop(const std::string& p);
Formula mk_negprop(const std::string& p);
Formula mk_and(Formula a, Formula b);
Formula mk_or(Formula a, Formula b);
Formula mk_boolor(Formula a, Formula b);
Formula mk_boolneg(Formula a);
Formula mk_next(Formula a);
Formula mk_until(Formula a, Formula b);
Formula mk_weakuntil(Formula a, Formula b);
Formula mk_eventually(Formula a);
Formula mk_globally(Formula a);
Formula mk_dep(std::vector<Formula> args, Formula target);
Formula mk_inc(std::vector<Formula> left, std::vector<Formula> right);
Formula mk_flatall(Formula a);
Formula mk_subteamall(Formula a);
Formula mk_ne();
Formula mk_leftor(Formula a, Formula b);
Formula mk_genatom(FamilyPtr family, std::vector<Formula> args);

// Folds with the given binary constructor; empty input yields `unit`.
Formula mk_and_all(const std::vector<Formula>& fs);
Formula mk_or_all(const std::vector<Formula>& fs);     // split; empty = false
Formula mk_boolor_all(const std::vector<Formula>& fs); // empty = false

bool is_eventually(const Formula& f);  // Until(True, x)
bool is_globally(const Formula& f);    // WeakUntil(x, False)

// Parsing and printing.
Formula parse_team_formula(const std::string& text, const FamilyRegistry& families = {});
std::string render(const Formula& f);

// Relation-family file: one relation per line, e.g. "{01,11}" or "{}".
// Bit strings list b1 first. Blank lines and '#' comments are ignored.
BoolRelationFamily parse_relation_family(const std::string& name, const std::string& text);

bool structurally_equal(const Formula& a, const Formula& b);

// Measures.
std::size_t formula_size(const Formula& f);
int temporal_depth(const Formula& f);
int formula_depth(const Formula& f);
std::set<std::string> props_of(const Formula& f);
std::size_t count_kind(const Formula& f, Kind k);

// LTL helpers.
bool is_ltl(const Formula& f);
// Negation normal form of the classical negation of an LTL formula.
Formula ltl_negate(const Formula& f);
Formula ltl_iff(const Formula& a, const Formula& b);
// Replaces every BoolOr by Or; input must otherwise be LTL.
Formula boolor_to_or(const Formula& f);

// Rewriters.
Formula dep_as_genatom(const Formula& dep);
Formula inc_as_genatom(const Formula& inc);
Formula eliminate_generalized_atoms(const Formula& f);

class UnsupportedNode : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rewrites a formula over LTL connectives, BoolOr, NE and nested FlatAll into
// an LTL formula with the same truth value on teams of size at most one
// under a flattening quantifier.
Formula eliminate_flat_nonclassical(const Formula& f);

// Syntactically flat formulas: LTL without U/W, FlatAll, closed under
// And, Or, Next.
bool is_syntactically_flat(const Formula& f);
// LTL formula equivalent to a syntactically flat formula on singletons.
Formula flat_hat(const Formula& f);

struct FragmentInfo {
  bool plain = false;       // literals, And, Or, X, U, W
  bool kcoherent = false;   // handled by the k-coherent translation
  bool leftflat = false;    // left-flat TeamLTL(vv, A1)
  bool borneflat = false;   // TeamLTL(vv, NE, A1)
  bool downward_closed = false;  // syntactic sufficient condition
  std::string reason;       // first offending construct when none applies

  enum class Primary { PlainTeamLTL, LeftFlat, GeneralBorNEFlat, KCoherentEligible, Unsupported };
  Primary primary() const;
};

FragmentInfo classify_fragment(const Formula& f);
const char* fragment_name(FragmentInfo::Primary p);

}  // namespace teamltl
