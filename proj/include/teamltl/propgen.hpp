// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "teamltl/formula.hpp"
#include "teamltl/kripke.hpp"
#include "teamltl/traces.hpp"

namespace teamltl {

// Propositions used by the generators: a, b, c, ...
std::vector<std::string> gen_ap(std::size_t apCount);

Team gen_team(uint64_t seed, std::size_t maxTraces, std::size_t stemMax, std::size_t loopMax, std::size_t apCount);

// IncOr: LTL connectives, vv and inclusion atoms over LTL arguments.
enum class GenFragment { Plain, LeftFlat, BorNEFlat, KCoherent, Downward, IncOr };

struct GenOptions {
  std::size_t apCount = 2;
  bool allow_boolneg = true;  // KCoherent only
  bool allow_atoms = true;    // dep/inc in KCoherent and Downward
  bool allow_ne = true;       // KCoherent only
  bool allow_genatoms = false;  // random gen[..] atoms in KCoherent
  bool prefer_atoms = false;    // KCoherent leaves above depth 0 become atoms
};

// Formula of depth <= depth whose classification includes the fragment.
Formula gen_formula(uint64_t seed, int depth, GenFragment fragment, const GenOptions& opts = {});
bool in_fragment(const Formula& f, GenFragment fragment);
const char* gen_fragment_name(GenFragment f);

struct TrialInput {
  Team team;
  Formula formula;
  std::size_t index = 0;
  std::optional<Kripke> kripke;  // model-checking suites
  std::size_t k = 0;
};

struct SuiteReport {
  std::string name;
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;  // inconclusive trials (bounds exceeded)
  std::optional<TrialInput> counterexample;  // shrunk
  std::string detail;
  double seconds = 0;
};

enum class Outcome { Pass, Fail, Skip };

// A property over one (team, formula, index) input.
using Property = std::function<Outcome(const TrialInput&)>;
using InputGen = std::function<TrialInput(uint64_t seed)>;

// Runs trials seeded seed, seed+1, ...; the first failure is shrunk greedily.
SuiteReport run_property(const std::string& name, const InputGen& gen, const Property& prop, std::size_t trials,
                         uint64_t seed);

// Greedy shrinking: drop traces, shorten stems and loops, replace subformulas
// by their operands, while the property keeps failing.
TrialInput shrink(const TrialInput& in, const Property& prop);

// Registered suites: "downward", "empty", "singleton", "flatness",
// "complement", "periodicity", "kcoherent", "leftflat", "full", "atoms",
// "mutation", "buchi", "coherence1", "mc_forall", "mc_leftflat".
std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, std::size_t trials, uint64_t seed);

}  // namespace teamltl
