// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "teamltl/formula.hpp"
#include "teamltl/traces.hpp"

namespace teamltl {

// Classical LTL truth of an LTL formula on a lasso, by fixpoint iteration
// over the lasso positions. Propositions missing from `ap` are false.
bool eval_ltl(const LassoTrace& t, std::size_t i, const Formula& psi, const std::vector<std::string>& ap);

// Truth vector of an LTL formula over the positions of a lasso
// (0 .. |stem|+|loop|-1; the successor of the last position is |stem|).
std::vector<bool> ltl_table(const LassoTrace& t, const Formula& psi, const std::vector<std::string>& ap);

struct EvalOptions {
  // Mutation-testing switch: evaluates A1 phi as phi.
  bool flatall_as_identity = false;
};

using Subteam = uint64_t;  // bitmask over the traces of a team

class TeamEvaluator {
 public:
  TeamEvaluator(const Team& T, EvalOptions opts = {});

  std::size_t size() const { return T_.traces.size(); }
  Subteam full() const;
  const Horizon& horizon() const { return h_; }

  // Truth of phi on the subteam `sub` at time i.
  bool eval(Subteam sub, std::size_t i, const Formula& phi);

  // Textual witness of the evaluation (chosen splits, until positions).
  std::vector<std::string> explain(Subteam sub, std::size_t i, const Formula& phi);

 private:
  struct Key {
    const Node* node;
    Subteam sub;
    std::size_t time;
    bool operator==(const Key& o) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };

  bool compute(Subteam sub, std::size_t i, const Formula& phi);
  bool classical(std::size_t trace, std::size_t i, const Formula& psi);
  bool atom(Subteam sub, std::size_t i, const Formula& phi);
  void explain_rec(Subteam sub, std::size_t i, const Formula& phi, int depth, std::vector<std::string>& out);
  std::string subteam_str(Subteam sub) const;

  Team T_;
  EvalOptions opts_;
  std::vector<Formula> roots_;  // keeps memo keys alive
  Horizon h_;
  std::unordered_map<Key, bool, KeyHash> memo_;
  std::unordered_map<const Node*, std::vector<std::vector<bool>>> ltl_cache_;
};

bool eval(const Team& T, const Formula& phi, EvalOptions opts = {});
bool eval(const Team& T, std::size_t i, const Formula& phi, EvalOptions opts = {});

// eval(T,i,phi) <=> (for all S subset of T with |S| <= k: eval(S,i,phi)).
bool is_k_coherent_on(const Team& T, std::size_t i, const Formula& phi, std::size_t k);

// Subteam of T selected by a bitmask, as a standalone team.
Team subteam(const Team& T, Subteam mask);

}  // namespace teamltl
