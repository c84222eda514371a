// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamltl/team_eval.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace teamltl {

namespace {

std::size_t lasso_pos(const LassoTrace& t, std::size_t i) {
  if (i < t.stem.size()) return i;
  return t.stem.size() + (i - t.stem.size()) % t.loop.size();
}

int find_prop(const std::vector<std::string>& ap, const std::string& name) {
  for (std::size_t i = 0; i < ap.size(); ++i)
    if (ap[i] == name) return int(i);
  return -1;
}

}  // namespace

std::vector<bool> ltl_table(const LassoTrace& t, const Formula& psi, const std::vector<std::string>& ap) {
  const std::size_t N = t.stem.size() + t.loop.size();
  auto succ = [&](std::size_t p) { return p + 1 < N ? p + 1 : t.stem.size(); };
  std::vector<bool> v(N);
  switch (psi->kind) {
    case Kind::True:
      v.assign(N, true);
      return v;
    case Kind::False:
      return v;
    case Kind::Prop:
    case Kind::NegProp: {
      int idx = find_prop(ap, psi->name);
      for (std::size_t p = 0; p < N; ++p) {
        bool val = idx >= 0 && (letter_at(t, p) >> idx & 1);
        v[p] = psi->kind == Kind::Prop ? val : !val;
      }
      return v;
    }
    case Kind::And: {
      auto a = ltl_table(t, psi->kids[0], ap), b = ltl_table(t, psi->kids[1], ap);
      for (std::size_t p = 0; p < N; ++p) v[p] = a[p] && b[p];
      return v;
    }
    case Kind::Or: {
      auto a = ltl_table(t, psi->kids[0], ap), b = ltl_table(t, psi->kids[1], ap);
      for (std::size_t p = 0; p < N; ++p) v[p] = a[p] || b[p];
      return v;
    }
    case Kind::Next: {
      auto a = ltl_table(t, psi->kids[0], ap);
      for (std::size_t p = 0; p < N; ++p) v[p] = a[succ(p)];
      return v;
    }
    case Kind::Until:
    case Kind::WeakUntil: {
      auto a = ltl_table(t, psi->kids[0], ap), b = ltl_table(t, psi->kids[1], ap);
      // Least fixpoint for U, greatest for W.
      v.assign(N, psi->kind == Kind::WeakUntil);
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t q = N; q-- > 0;) {
          bool nv = b[q] || (a[q] && v[succ(q)]);
          if (nv != v[q]) {
            v[q] = nv;
            changed = true;
          }
        }
      }
      return v;
    }
    default:
      throw std::invalid_argument("ltl_table: not an LTL formula: " + render(psi));
  }
}

bool eval_ltl(const LassoTrace& t, std::size_t i, const Formula& psi, const std::vector<std::string>& ap) {
  return ltl_table(t, psi, ap)[lasso_pos(t, i)];
}

// ---------------------------------------------------------------------------

std::size_t TeamEvaluator::KeyHash::operator()(const Key& k) const {
  std::size_t h = std::hash<const void*>()(k.node);
  h ^= std::hash<uint64_t>()(k.sub) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= std::hash<std::size_t>()(k.time) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

TeamEvaluator::TeamEvaluator(const Team& T, EvalOptions opts) : T_(T), opts_(opts) {
  if (T_.traces.size() > 63) throw std::invalid_argument("team too large for exact evaluation");
  if (T_.traces.empty()) {
    h_ = Horizon{0, 1, 1};
  } else {
    h_ = teamltl::horizon(T_.traces, 0);
  }
}

Subteam TeamEvaluator::full() const { return (Subteam(1) << T_.traces.size()) - 1; }

bool TeamEvaluator::eval(Subteam sub, std::size_t i, const Formula& phi) {
  roots_.push_back(phi);
  return compute(sub, h_.reduce(i), phi);
}

bool TeamEvaluator::classical(std::size_t trace, std::size_t i, const Formula& psi) {
  auto& per = ltl_cache_[psi.get()];
  if (per.empty()) {
    per.resize(T_.traces.size());
    for (std::size_t j = 0; j < T_.traces.size(); ++j) per[j] = ltl_table(T_.traces[j], psi, T_.ap);
  }
  return per[trace][lasso_pos(T_.traces[trace], i)];
}

bool TeamEvaluator::atom(Subteam sub, std::size_t i, const Formula& phi) {
  const std::size_t n = T_.traces.size();
  auto tuple_of = [&](std::size_t j, std::size_t from, std::size_t to) {
    uint32_t bits = 0;
    for (std::size_t a = from; a < to; ++a)
      if (classical(j, i, phi->kids[a])) bits |= uint32_t(1) << (a - from);
    return bits;
  };
  switch (phi->kind) {
    case Kind::Dep: {
      std::vector<int> seen(std::size_t(1) << phi->split, -1);
      for (std::size_t j = 0; j < n; ++j) {
        if (!(sub >> j & 1)) continue;
        uint32_t x = tuple_of(j, 0, phi->split);
        int y = classical(j, i, phi->kids.back()) ? 1 : 0;
        if (seen[x] >= 0 && seen[x] != y) return false;
        seen[x] = y;
      }
      return true;
    }
    case Kind::Inc: {
      std::set<uint32_t> left, right;
      for (std::size_t j = 0; j < n; ++j) {
        if (!(sub >> j & 1)) continue;
        left.insert(tuple_of(j, 0, phi->split));
        right.insert(tuple_of(j, phi->split, phi->kids.size()));
      }
      return std::includes(right.begin(), right.end(), left.begin(), left.end());
    }
    case Kind::GenAtom: {
      std::set<uint32_t> rel;
      for (std::size_t j = 0; j < n; ++j)
        if (sub >> j & 1) rel.insert(tuple_of(j, 0, phi->kids.size()));
      return phi->family->contains(std::vector<uint32_t>(rel.begin(), rel.end()));
    }
    default:
      throw std::logic_error("atom: not an atom");
  }
}

bool TeamEvaluator::compute(Subteam sub, std::size_t i, const Formula& phi) {
  Key key{phi.get(), sub, i};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const std::size_t n = T_.traces.size();
  bool r = false;
  switch (phi->kind) {
    case Kind::True:
      r = true;
      break;
    case Kind::False:
      r = sub == 0;
      break;
    case Kind::Prop:
    case Kind::NegProp: {
      int idx = T_.prop_index(phi->name);
      r = true;
      for (std::size_t j = 0; j < n && r; ++j) {
        if (!(sub >> j & 1)) continue;
        bool val = idx >= 0 && (letter_at(T_.traces[j], i) >> idx & 1);
        r = phi->kind == Kind::Prop ? val : !val;
      }
      break;
    }
    case Kind::And:
      r = compute(sub, i, phi->kids[0]) && compute(sub, i, phi->kids[1]);
      break;
    case Kind::Or:
    case Kind::LeftOr: {
      const bool left_nonempty = phi->kind == Kind::LeftOr;
      // Ordered covers (Y1, Y2) with Y1 u Y2 = sub: Y2 = (sub \ Y1) u Z, Z subset of Y1.
      for (Subteam y1 = sub;; y1 = (y1 - 1) & sub) {
        if (!(left_nonempty && y1 == 0) && compute(y1, i, phi->kids[0])) {
          const Subteam rest = sub & ~y1;
          for (Subteam z = y1;; z = (z - 1) & y1) {
            if (compute(rest | z, i, phi->kids[1])) {
              r = true;
              break;
            }
            if (z == 0) break;
          }
        }
        if (r || y1 == 0) break;
      }
      break;
    }
    case Kind::BoolOr:
      r = compute(sub, i, phi->kids[0]) || compute(sub, i, phi->kids[1]);
      break;
    case Kind::BoolNeg:
      r = !compute(sub, i, phi->kids[0]);
      break;
    case Kind::Next:
      r = compute(sub, h_.reduce(i + 1), phi->kids[0]);
      break;
    case Kind::Until:
    case Kind::WeakUntil: {
      const std::size_t B = std::max(i, h_.S) + h_.P;
      bool found = false, left_always = true;
      for (std::size_t k = i; k < B; ++k) {
        const std::size_t kr = h_.reduce(k);
        if (compute(sub, kr, phi->kids[1])) {
          found = true;
          break;
        }
        if (!compute(sub, kr, phi->kids[0])) {
          left_always = false;
          break;
        }
      }
      r = found || (phi->kind == Kind::WeakUntil && left_always);
      break;
    }
    case Kind::Dep:
    case Kind::Inc:
    case Kind::GenAtom:
      r = atom(sub, i, phi);
      break;
    case Kind::FlatAll:
      if (opts_.flatall_as_identity) {
        r = compute(sub, i, phi->kids[0]);
        break;
      }
      r = true;
      for (std::size_t j = 0; j < n && r; ++j)
        if (sub >> j & 1) r = compute(Subteam(1) << j, i, phi->kids[0]);
      break;
    case Kind::SubteamAll:
      r = true;
      for (Subteam y = sub;; y = (y - 1) & sub) {
        if (!compute(y, i, phi->kids[0])) {
          r = false;
          break;
        }
        if (y == 0) break;
      }
      break;
    case Kind::NE:
      r = sub != 0;
      break;
  }
  memo_.emplace(key, r);
  return r;
}

std::string TeamEvaluator::subteam_str(Subteam sub) const {
  std::string s = "{";
  bool first = true;
  for (std::size_t j = 0; j < T_.traces.size(); ++j) {
    if (!(sub >> j & 1)) continue;
    if (!first) s += ",";
    s += "t" + std::to_string(j);
    first = false;
  }
  return s + "}";
}

std::vector<std::string> TeamEvaluator::explain(Subteam sub, std::size_t i, const Formula& phi) {
  roots_.push_back(phi);
  std::vector<std::string> out;
  for (std::size_t j = 0; j < T_.traces.size(); ++j)
    out.push_back("t" + std::to_string(j) + " = " + trace_to_string(T_.ap, T_.traces[j]));
  explain_rec(sub, h_.reduce(i), phi, 0, out);
  return out;
}

void TeamEvaluator::explain_rec(Subteam sub, std::size_t i, const Formula& phi, int depth,
                                std::vector<std::string>& out) {
  const bool v = compute(sub, i, phi);
  std::string pad(std::size_t(depth) * 2, ' ');
  out.push_back(pad + render(phi) + " on " + subteam_str(sub) + " at " + std::to_string(i) + ": " +
                (v ? "true" : "false"));
  if (depth > 12) return;
  switch (phi->kind) {
    case Kind::And:
    case Kind::BoolOr:
      explain_rec(sub, i, phi->kids[0], depth + 1, out);
      explain_rec(sub, i, phi->kids[1], depth + 1, out);
      return;
    case Kind::Or:
    case Kind::LeftOr: {
      if (!v) return;
      for (Subteam y1 = sub;; y1 = (y1 - 1) & sub) {
        if (!(phi->kind == Kind::LeftOr && y1 == 0) && compute(y1, i, phi->kids[0])) {
          const Subteam rest = sub & ~y1;
          for (Subteam z = y1;; z = (z - 1) & y1) {
            if (compute(rest | z, i, phi->kids[1])) {
              out.push_back(pad + "split " + subteam_str(y1) + " | " + subteam_str(rest | z));
              explain_rec(y1, i, phi->kids[0], depth + 1, out);
              explain_rec(rest | z, i, phi->kids[1], depth + 1, out);
              return;
            }
            if (z == 0) break;
          }
        }
        if (y1 == 0) break;
      }
      return;
    }
    case Kind::Next:
      explain_rec(sub, h_.reduce(i + 1), phi->kids[0], depth + 1, out);
      return;
    case Kind::Until:
    case Kind::WeakUntil: {
      const std::size_t B = std::max(i, h_.S) + h_.P;
      for (std::size_t k = i; k < B; ++k) {
        const std::size_t kr = h_.reduce(k);
        if (compute(sub, kr, phi->kids[1])) {
          out.push_back(pad + "right operand holds at " + std::to_string(k));
          explain_rec(sub, kr, phi->kids[1], depth + 1, out);
          return;
        }
        if (!compute(sub, kr, phi->kids[0])) {
          out.push_back(pad + "left operand fails at " + std::to_string(k));
          explain_rec(sub, kr, phi->kids[0], depth + 1, out);
          return;
        }
      }
      out.push_back(pad + "left operand holds through " + std::to_string(B - 1));
      return;
    }
    default:
      return;
  }
}

bool eval(const Team& T, const Formula& phi, EvalOptions opts) { return eval(T, T.index, phi, opts); }

bool eval(const Team& T, std::size_t i, const Formula& phi, EvalOptions opts) {
  TeamEvaluator ev(T, opts);
  return ev.eval(ev.full(), i, phi);
}

bool is_k_coherent_on(const Team& T, std::size_t i, const Formula& phi, std::size_t k) {
  TeamEvaluator ev(T);
  const bool whole = ev.eval(ev.full(), i, phi);
  bool small = true;
  const Subteam full = ev.full();
  for (Subteam y = full;; y = (y - 1) & full) {
    if (std::size_t(__builtin_popcountll(y)) <= k && !ev.eval(y, i, phi)) {
      small = false;
      break;
    }
    if (y == 0) break;
  }
  return whole == small;
}

Team subteam(const Team& T, Subteam mask) {
  Team S;
  S.ap = T.ap;
  S.index = T.index;
  for (std::size_t j = 0; j < T.traces.size(); ++j)
    if (mask >> j & 1) S.traces.push_back(T.traces[j]);
  return S;
}

}  // namespace teamltl
