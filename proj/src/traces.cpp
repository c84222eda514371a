// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamltl/traces.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace teamltl {

Letter LassoTrace::at(std::size_t i) const { return letter_at(*this, i); }

Letter letter_at(const LassoTrace& t, std::size_t i) {
  if (i < t.stem.size()) return t.stem[i];
  return t.loop[(i - t.stem.size()) % t.loop.size()];
}

LassoTrace canonicalize(LassoTrace t) {
  if (t.loop.empty()) throw std::invalid_argument("lasso loop must be nonempty");
  // Primitive root of the loop.
  const std::size_t n = t.loop.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = t.loop[i] == t.loop[i - d];
    if (ok) {
      t.loop.resize(d);
      break;
    }
  }
  // Fold the stem into the loop while its last letter equals the loop's last.
  while (!t.stem.empty() && t.stem.back() == t.loop.back()) {
    std::rotate(t.loop.begin(), t.loop.end() - 1, t.loop.end());
    t.stem.pop_back();
  }
  return t;
}

bool is_canonical(const LassoTrace& t) { return !t.loop.empty() && canonicalize(t) == t; }

LassoTrace suffix(const LassoTrace& t, std::size_t k) {
  LassoTrace s;
  if (k < t.stem.size()) {
    s.stem.assign(t.stem.begin() + long(k), t.stem.end());
    s.loop = t.loop;
  } else {
    std::size_t off = (k - t.stem.size()) % t.loop.size();
    s.loop.assign(t.loop.begin() + long(off), t.loop.end());
    s.loop.insert(s.loop.end(), t.loop.begin(), t.loop.begin() + long(off));
  }
  return canonicalize(std::move(s));
}

LassoTrace project(const LassoTrace& t, Letter mask) {
  LassoTrace p = t;
  for (auto& l : p.stem) l &= mask;
  for (auto& l : p.loop) l &= mask;
  return canonicalize(std::move(p));
}

std::size_t lcm_size(std::size_t a, std::size_t b) { return std::lcm(a, b); }

Horizon horizon(const std::vector<LassoTrace>& traces, std::size_t from) {
  if (traces.empty()) throw std::invalid_argument("horizon of an empty team");
  Horizon h;
  h.S = 0;
  h.P = 1;
  for (const auto& t : traces) {
    h.S = std::max(h.S, t.stem.size());
    h.P = std::lcm(h.P, t.loop.size());
  }
  h.B = std::max(from, h.S) + h.P;
  return h;
}

int Team::prop_index(const std::string& name) const {
  for (std::size_t i = 0; i < ap.size(); ++i)
    if (ap[i] == name) return int(i);
  return -1;
}

Team make_team(std::vector<std::string> ap, std::vector<LassoTrace> traces, std::size_t index) {
  if (ap.size() > kMaxProps) throw std::invalid_argument("too many propositions");
  Team T;
  T.ap = std::move(ap);
  T.index = index;
  for (auto& t : traces) T.traces.push_back(canonicalize(std::move(t)));
  std::sort(T.traces.begin(), T.traces.end());
  T.traces.erase(std::unique(T.traces.begin(), T.traces.end()), T.traces.end());
  return T;
}

Letter letter_from_names(const std::vector<std::string>& ap, const std::vector<std::string>& names) {
  Letter l = 0;
  for (const auto& n : names) {
    auto it = std::find(ap.begin(), ap.end(), n);
    if (it == ap.end()) throw std::invalid_argument("unknown proposition '" + n + "'");
    l |= Letter(1) << (it - ap.begin());
  }
  return l;
}

std::vector<std::string> letter_names(const std::vector<std::string>& ap, Letter l) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ap.size(); ++i)
    if (l >> i & 1) out.push_back(ap[i]);
  return out;
}

namespace {

std::string letter_str(const std::vector<std::string>& ap, Letter l) {
  std::string s = "{";
  bool first = true;
  for (const auto& n : letter_names(ap, l)) {
    if (!first) s += ",";
    s += n;
    first = false;
  }
  return s + "}";
}

}  // namespace

std::string trace_to_string(const std::vector<std::string>& ap, const LassoTrace& t) {
  std::string s;
  for (Letter l : t.stem) s += letter_str(ap, l);
  s += "(";
  for (Letter l : t.loop) s += letter_str(ap, l);
  return s + ")^w";
}

Team parse_team_json(const std::string& text) {
  using nlohmann::json;
  try {
    json j = json::parse(text);
    std::vector<std::string> ap = j.at("ap").get<std::vector<std::string>>();
    if (ap.size() > 64) throw std::invalid_argument("team file: more than 64 propositions");
    auto letters = [&](const json& arr) {
      std::vector<Letter> out;
      for (const auto& l : arr) out.push_back(letter_from_names(ap, l.get<std::vector<std::string>>()));
      return out;
    };
    std::vector<LassoTrace> traces;
    for (const auto& t : j.at("traces")) {
      LassoTrace lt{letters(t.value("stem", json::array())), letters(t.at("loop"))};
      if (lt.loop.empty()) throw std::invalid_argument("team file: empty loop");
      traces.push_back(lt);
    }
    return make_team(ap, traces, j.value("index", std::size_t{0}));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("team file: ") + e.what());
  }
}

std::string team_to_json(const Team& T) {
  using nlohmann::json;
  auto letters = [&](const std::vector<Letter>& ls) {
    json arr = json::array();
    for (Letter l : ls) arr.push_back(letter_names(T.ap, l));
    return arr;
  };
  json traces = json::array();
  for (const auto& t : T.traces) traces.push_back({{"stem", letters(t.stem)}, {"loop", letters(t.loop)}});
  return json{{"ap", T.ap}, {"index", T.index}, {"traces", traces}}.dump();
}

}  // namespace teamltl
