// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <set>
#include <vector>

#include "teamltl/traces.hpp"

namespace teamltl::testing {

// Every canonical lasso with |stem| <= stemMax, |loop| <= loopMax over
// `props` propositions, deduplicated and sorted.
inline std::vector<LassoTrace> all_lassos(std::size_t props, std::size_t stemMax, std::size_t loopMax) {
  const Letter letters = Letter(1) << props;
  std::set<LassoTrace> out;
  auto words = [&](std::size_t len) {
    std::vector<std::vector<Letter>> ws{{}};
    for (std::size_t i = 0; i < len; ++i) {
      std::vector<std::vector<Letter>> next;
      for (const auto& w : ws)
        for (Letter l = 0; l < letters; ++l) {
          auto v = w;
          v.push_back(l);
          next.push_back(v);
        }
      ws = next;
    }
    return ws;
  };
  for (std::size_t s = 0; s <= stemMax; ++s)
    for (std::size_t l = 1; l <= loopMax; ++l)
      for (const auto& stem : words(s))
        for (const auto& loop : words(l)) out.insert(canonicalize(LassoTrace{stem, loop}));
  return {out.begin(), out.end()};
}

// All subsets of `pool` (|pool| <= 20) of size <= maxSize.
inline std::vector<std::vector<LassoTrace>> all_subsets(const std::vector<LassoTrace>& pool,
                                                        std::size_t maxSize) {
  std::vector<std::vector<LassoTrace>> out;
  for (uint64_t m = 0; m < (uint64_t(1) << pool.size()); ++m) {
    if (std::size_t(__builtin_popcountll(m)) > maxSize) continue;
    std::vector<LassoTrace> s;
    for (std::size_t j = 0; j < pool.size(); ++j)
      if (m >> j & 1) s.push_back(pool[j]);
    out.push_back(s);
  }
  return out;
}

}  // namespace teamltl::testing
