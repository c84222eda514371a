// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace teamltl {

// A letter is a bitmask over the proposition indices of an alphabet.
using Letter = uint64_t;
constexpr std::size_t kMaxProps = 64;

struct LassoTrace {
  std::vector<Letter> stem;
  std::vector<Letter> loop;  // nonempty

  Letter at(std::size_t i) const;
  bool operator==(const LassoTrace& o) const = default;
  auto operator<=>(const LassoTrace& o) const = default;
};

Letter letter_at(const LassoTrace& t, std::size_t i);

// Minimal stem, primitive loop.
LassoTrace canonicalize(LassoTrace t);
bool is_canonical(const LassoTrace& t);

// Canonical lasso of the suffix t[k, inf).
LassoTrace suffix(const LassoTrace& t, std::size_t k);

// Letterwise intersection with `mask`, canonicalized.
LassoTrace project(const LassoTrace& t, Letter mask);

struct Horizon {
  std::size_t S = 0;  // max stem length
  std::size_t P = 1;  // lcm of loop lengths
  std::size_t B = 1;  // max(from, S) + P
  // Canonical representative of time i: i below S, else S + (i - S) mod P.
  std::size_t reduce(std::size_t i) const { return i < S ? i : S + (i - S) % P; }
};

// Throws std::invalid_argument on an empty set of traces.
Horizon horizon(const std::vector<LassoTrace>& traces, std::size_t from);

std::size_t lcm_size(std::size_t a, std::size_t b);

struct Team {
  std::vector<std::string> ap;
  std::vector<LassoTrace> traces;  // canonical, sorted, distinct
  std::size_t index = 0;

  // -1 when the name is not in ap.
  int prop_index(const std::string& name) const;
};

// Canonicalizes, sorts and deduplicates the traces.
Team make_team(std::vector<std::string> ap, std::vector<LassoTrace> traces, std::size_t index = 0);

// {"ap": [..], "index": 0, "traces": [{"stem": [["a"],[]], "loop": [["a","b"]]}]}
// Unknown names, empty loops and more than 64 propositions are rejected.
Team parse_team_json(const std::string& text);
std::string team_to_json(const Team& T);

// Letter <-> names over an alphabet.
Letter letter_from_names(const std::vector<std::string>& ap, const std::vector<std::string>& names);
std::vector<std::string> letter_names(const std::vector<std::string>& ap, Letter l);

// Human-readable lasso, e.g. "{p}{}({q})^w".
std::string trace_to_string(const std::vector<std::string>& ap, const LassoTrace& t);

}  // namespace teamltl
