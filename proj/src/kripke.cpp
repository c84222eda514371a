// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamltl/kripke.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"
#include "teamltl/team_eval.hpp"
#include "teamltl/translate.hpp"

namespace teamltl {

// ---------------------------------------------------------------- structures

Kripke make_kripke(std::vector<std::string> ap, std::vector<Letter> label,
                   std::vector<std::vector<std::size_t>> succ, std::size_t init) {
  if (label.empty()) throw std::invalid_argument("Kripke structure without states");
  if (label.size() != succ.size()) throw std::invalid_argument("label/successor count mismatch");
  if (init >= label.size()) throw std::invalid_argument("initial state out of range");
  if (ap.size() > kMaxProps) throw std::invalid_argument("too many propositions");
  for (std::size_t w = 0; w < succ.size(); ++w) {
    if (succ[w].empty()) throw std::invalid_argument("state " + std::to_string(w) + " has no successor");
    for (std::size_t v : succ[w])
      if (v >= label.size()) throw std::invalid_argument("edge target out of range");
    std::sort(succ[w].begin(), succ[w].end());
    succ[w].erase(std::unique(succ[w].begin(), succ[w].end()), succ[w].end());
  }
  Letter all = ap.size() == 64 ? ~Letter{0} : (Letter{1} << ap.size()) - 1;
  for (Letter l : label)
    if (l & ~all) throw std::invalid_argument("label outside the alphabet");
  return Kripke{std::move(ap), std::move(label), std::move(succ), init};
}

Kripke parse_kripke_json(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("Kripke JSON: ") + e.what());
  }
  try {
    auto ap = j.at("ap").get<std::vector<std::string>>();
    const auto& states = j.at("states");
    std::map<long long, std::size_t> ids;
    std::vector<Letter> label;
    for (const auto& s : states) {
      long long id = s.at("id").get<long long>();
      if (!ids.emplace(id, label.size()).second) throw std::invalid_argument("duplicate state id");
      std::vector<std::string> names;
      if (s.contains("label")) names = s.at("label").get<std::vector<std::string>>();
      for (const auto& n : names)
        if (std::find(ap.begin(), ap.end(), n) == ap.end())
          throw std::invalid_argument("label '" + n + "' not in ap");
      label.push_back(letter_from_names(ap, names));
    }
    auto index = [&](long long id) {
      auto it = ids.find(id);
      if (it == ids.end()) throw std::invalid_argument("unknown state id " + std::to_string(id));
      return it->second;
    };
    std::vector<std::vector<std::size_t>> succ(label.size());
    for (const auto& e : j.at("edges")) {
      auto pair = e.get<std::vector<long long>>();
      if (pair.size() != 2) throw std::invalid_argument("edge must have two ids");
      succ[index(pair[0])].push_back(index(pair[1]));
    }
    return make_kripke(std::move(ap), std::move(label), std::move(succ), index(j.at("init").get<long long>()));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("Kripke JSON: ") + e.what());
  }
}

std::string kripke_to_json(const Kripke& K) {
  using nlohmann::json;
  json j;
  j["ap"] = K.ap;
  j["states"] = json::array();
  j["edges"] = json::array();
  for (std::size_t w = 0; w < K.size(); ++w) {
    j["states"].push_back({{"id", w}, {"label", letter_names(K.ap, K.label[w])}});
    for (std::size_t v : K.succ[w]) j["edges"].push_back({w, v});
  }
  j["init"] = K.init;
  return j.dump();
}

std::vector<LassoTrace> traces_enumerate(const Kripke& K, std::size_t stemMax, std::size_t loopMax) {
  std::set<LassoTrace> out;
  std::vector<std::size_t> u, v;
  auto loops = [&](std::size_t start) {
    std::function<void()> grow = [&] {
      std::size_t last = v.back();
      if (std::binary_search(K.succ[last].begin(), K.succ[last].end(), v.front())) {
        LassoTrace t;
        for (std::size_t w : u) t.stem.push_back(K.label[w]);
        for (std::size_t w : v) t.loop.push_back(K.label[w]);
        out.insert(canonicalize(std::move(t)));
      }
      if (v.size() == loopMax) return;
      for (std::size_t nxt : K.succ[last]) {
        v.push_back(nxt);
        grow();
        v.pop_back();
      }
    };
    v.assign(1, start);
    grow();
  };
  std::function<void()> stems = [&] {
    if (u.empty()) {
      loops(K.init);
    } else {
      for (std::size_t nxt : K.succ[u.back()]) loops(nxt);
    }
    if (u.size() == stemMax) return;
    if (u.empty()) {
      u.push_back(K.init);
      stems();
      u.pop_back();
      return;
    }
    for (std::size_t nxt : K.succ[u.back()]) {
      u.push_back(nxt);
      stems();
      u.pop_back();
    }
  };
  if (loopMax >= 1) stems();
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------- LTL dag

namespace {

enum class LK { True, False, Lit, NLit, And, Or, X, U, R };

struct LNode {
  LK k;
  int prop, a, b;
};

class LtlDag {
 public:
  std::vector<LNode> nodes;
  std::vector<std::string> props;

  int mk(LK k, int prop = -1, int a = -1, int b = -1) {
    if (int r = simplify(k, a, b); r >= 0) return r;
    auto key = std::make_tuple(int(k), prop, a, b);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    nodes.push_back({k, prop, a, b});
    ids_.emplace(key, int(nodes.size()) - 1);
    return int(nodes.size()) - 1;
  }
  int find(LK k, int prop) const {
    auto it = ids_.find(std::make_tuple(int(k), prop, -1, -1));
    return it == ids_.end() ? -1 : it->second;
  }
  int prop(const std::string& name) {
    auto it = std::find(props.begin(), props.end(), name);
    if (it != props.end()) return int(it - props.begin());
    if (props.size() == kMaxProps) throw std::invalid_argument("too many propositions for the automaton");
    props.push_back(name);
    return int(props.size()) - 1;
  }

  int from(const Formula& f) {
    const auto& k = f->kids;
    switch (f->kind) {
      case Kind::True: return mk(LK::True);
      case Kind::False: return mk(LK::False);
      case Kind::Prop: return mk(LK::Lit, prop(f->name));
      case Kind::NegProp: return mk(LK::NLit, prop(f->name));
      case Kind::And: return mk(LK::And, -1, from(k[0]), from(k[1]));
      case Kind::Or:
      case Kind::BoolOr: return mk(LK::Or, -1, from(k[0]), from(k[1]));
      case Kind::Next: return mk(LK::X, -1, from(k[0]));
      case Kind::Until: return mk(LK::U, -1, from(k[0]), from(k[1]));
      case Kind::WeakUntil: {
        int a = from(k[0]), b = from(k[1]);
        return mk(LK::R, -1, b, mk(LK::Or, -1, a, b));
      }
      default: throw std::invalid_argument("automaton input is not LTL: " + render(f));
    }
  }

  int from(const HFormula& f) {
    const auto& k = f->kids;
    switch (f->kind) {
      case HKind::True: return mk(LK::True);
      case HKind::False: return mk(LK::False);
      case HKind::Lit: return mk(LK::Lit, prop(key(*f)));
      case HKind::NegLit: return mk(LK::NLit, prop(key(*f)));
      case HKind::And: return mk(LK::And, -1, from(k[0]), from(k[1]));
      case HKind::Or: return mk(LK::Or, -1, from(k[0]), from(k[1]));
      case HKind::Next: return mk(LK::X, -1, from(k[0]));
      case HKind::Until: return mk(LK::U, -1, from(k[0]), from(k[1]));
      case HKind::WeakUntil: {
        int a = from(k[0]), b = from(k[1]);
        return mk(LK::R, -1, b, mk(LK::Or, -1, a, b));
      }
      default: throw std::invalid_argument("automaton input has a quantifier");
    }
  }

  bool is(int x, LK k) const { return x >= 0 && nodes[x].k == k; }

  // Unit laws and idempotence; -1 when nothing applies.
  int simplify(LK k, int a, int b) {
    switch (k) {
      case LK::And:
        if (is(a, LK::False) || is(b, LK::True) || a == b) return a;
        if (is(b, LK::False) || is(a, LK::True)) return b;
        return -1;
      case LK::Or:
        if (is(a, LK::True) || is(b, LK::False) || a == b) return a;
        if (is(b, LK::True) || is(a, LK::False)) return b;
        return -1;
      case LK::X:
        if (is(a, LK::True) || is(a, LK::False)) return a;
        return -1;
      case LK::U:
        if (is(b, LK::True) || is(b, LK::False) || is(a, LK::False) || a == b) return b;
        return -1;
      case LK::R:
        if (is(b, LK::True) || is(b, LK::False) || is(a, LK::True) || a == b) return b;
        return -1;
      default: return -1;
    }
  }

  static std::string key(const HNode& n) { return n.var.empty() ? n.name : n.name + "@" + n.var; }

 private:
  std::map<std::tuple<int, int, int, int>, int> ids_;
};

class Tableau {
 public:
  explicit Tableau(const LtlDag& d) : d_(d) {}

  Buchi build(int root) {
    done_.push_back({{}, {}, {}});  // pseudo-initial node 0
    expand({0}, {root}, {}, {});

    std::vector<int> untils;
    for (std::size_t i = 0; i < d_.nodes.size(); ++i)
      if (d_.nodes[i].k == LK::U) untils.push_back(int(i));
    std::size_t n = done_.size(), m = untils.size();
    std::vector<Guard> guard(n);
    std::vector<std::vector<std::size_t>> edges(n);
    std::vector<std::vector<bool>> inF(std::max<std::size_t>(m, 1), std::vector<bool>(n, false));
    for (std::size_t v = 1; v < n; ++v) {
      for (int f : done_[v].old) {
        const LNode& x = d_.nodes[f];
        if (x.k == LK::Lit) guard[v].pos |= uint64_t{1} << x.prop;
        if (x.k == LK::NLit) guard[v].neg |= uint64_t{1} << x.prop;
      }
      for (std::size_t u : done_[v].incoming) edges[u].push_back(v);
      for (std::size_t i = 0; i < m; ++i) {
        int u = untils[i];
        inF[i][v] = !done_[v].old.count(u) || done_[v].old.count(d_.nodes[u].b);
      }
      if (m == 0) inF[0][v] = true;
    }
    std::size_t mm = std::max<std::size_t>(m, 1);

    Buchi B;
    B.props = d_.props;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> id;
    std::deque<std::pair<std::size_t, std::size_t>> work;
    auto get = [&](std::size_t v, std::size_t c) {
      auto [it, fresh] = id.emplace(std::make_pair(v, c), B.succ.size());
      if (fresh) {
        B.succ.emplace_back();
        B.accepting.push_back(c == 0 && inF[0][v]);
        work.emplace_back(v, c);
      }
      return it->second;
    };
    B.init = get(0, 0);
    while (!work.empty()) {
      auto [v, c] = work.front();
      work.pop_front();
      std::size_t c2 = v != 0 && inF[c][v] ? (c + 1) % mm : c;
      std::size_t from = id.at({v, c});
      for (std::size_t w : edges[v]) {
        std::size_t to = get(w, c2);
        B.succ[from].emplace_back(to, guard[w]);
      }
    }
    return B;
  }

 private:
  struct Done {
    std::set<std::size_t> incoming;
    std::set<int> old, next;
  };

  using Key = std::tuple<std::set<int>, std::set<int>, std::set<int>>;

  void expand(std::set<std::size_t> incoming, std::set<int> fresh, std::set<int> old, std::set<int> next) {
    for (std::size_t v : reach(std::move(fresh), std::move(old), std::move(next)))
      done_[v].incoming.insert(incoming.begin(), incoming.end());
  }

  // Finished nodes reached from a partial node.
  std::vector<std::size_t> reach(std::set<int> fresh, std::set<int> old, std::set<int> next) {
    Key key{fresh, old, next};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<std::size_t> out = reach_uncached(std::move(fresh), std::move(old), std::move(next));
    memo_.emplace(std::move(key), out);
    return out;
  }

  std::vector<std::size_t> reach_uncached(std::set<int> fresh, std::set<int> old, std::set<int> next) {
    while (!fresh.empty()) {
      int f = *fresh.begin();
      fresh.erase(fresh.begin());
      if (old.count(f)) continue;
      const LNode& x = d_.nodes[f];
      switch (x.k) {
        case LK::False: return {};
        case LK::True: old.insert(f); break;
        case LK::Lit:
        case LK::NLit: {
          int c = d_.find(x.k == LK::Lit ? LK::NLit : LK::Lit, x.prop);
          if (c >= 0 && old.count(c)) return {};
          old.insert(f);
          break;
        }
        case LK::And:
          old.insert(f);
          fresh.insert(x.a);
          fresh.insert(x.b);
          break;
        case LK::X:
          old.insert(f);
          next.insert(x.a);
          break;
        case LK::Or:
        case LK::U:
        case LK::R: {
          old.insert(f);
          // Already discharged by a recorded operand: no branching.
          if ((x.k == LK::Or && (old.count(x.a) || old.count(x.b))) || (x.k == LK::U && old.count(x.b)) ||
              (x.k == LK::R && old.count(x.a) && old.count(x.b)))
            break;
          auto f1 = fresh, f2 = fresh;
          auto n1 = next;
          if (x.k == LK::Or) {
            f1.insert(x.a);
            f2.insert(x.b);
          } else if (x.k == LK::U) {
            f1.insert(x.a);
            n1.insert(f);
            f2.insert(x.b);
          } else {
            f1.insert(x.b);
            n1.insert(f);
            f2.insert(x.a);
            f2.insert(x.b);
          }
          auto r1 = reach(std::move(f1), old, std::move(n1));
          auto r2 = reach(std::move(f2), std::move(old), std::move(next));
          r1.insert(r1.end(), r2.begin(), r2.end());
          std::sort(r1.begin(), r1.end());
          r1.erase(std::unique(r1.begin(), r1.end()), r1.end());
          return r1;
        }
      }
    }
    auto key = std::make_pair(old, next);
    auto it = index_.find(key);
    if (it != index_.end()) return {it->second};
    std::size_t id = done_.size();
    index_.emplace(key, id);
    done_.push_back({{}, std::move(old), next});
    if (++expansions_ > kMaxTableauNodes) throw BoundsCapExceeded("automaton construction exceeded node cap");
    expand({id}, std::move(next), {}, {});
    return {id};
  }

  static constexpr std::size_t kMaxTableauNodes = 200'000;
  std::size_t expansions_ = 0;
  std::map<Key, std::vector<std::size_t>> memo_;
  const LtlDag& d_;
  std::vector<Done> done_;
  std::map<std::pair<std::set<int>, std::set<int>>, std::size_t> index_;
};

// Explicit graph with an accepting-lasso search.
struct Graph {
  std::vector<std::vector<uint32_t>> adj;
  std::vector<char> acc;
  std::vector<uint32_t> init;

  uint32_t add(bool accepting) {
    adj.emplace_back();
    acc.push_back(accepting);
    return uint32_t(adj.size() - 1);
  }
};

// prefix ends at the accepting node a; cycle leads from a back to a (a last).
struct GraphLasso {
  std::vector<uint32_t> prefix, cycle;
};

std::vector<uint32_t> scc_ids(const Graph& g, std::vector<char>& nontrivial) {
  std::size_t n = g.adj.size();
  std::vector<uint32_t> comp(n, UINT32_MAX), low(n), num(n, UINT32_MAX);
  std::vector<uint32_t> stack;
  std::vector<char> on(n, 0);
  uint32_t counter = 0, ncomp = 0;
  std::vector<std::pair<uint32_t, std::size_t>> call;
  for (uint32_t s = 0; s < n; ++s) {
    if (num[s] != UINT32_MAX) continue;
    call.emplace_back(s, 0);
    num[s] = low[s] = counter++;
    stack.push_back(s);
    on[s] = 1;
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i < g.adj[v].size()) {
        uint32_t w = g.adj[v][i++];
        if (num[w] == UINT32_MAX) {
          num[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = 1;
          call.emplace_back(w, 0);
        } else if (on[w]) {
          low[v] = std::min(low[v], num[w]);
        }
        continue;
      }
      uint32_t vv = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[vv]);
      if (low[vv] == num[vv]) {
        std::size_t size = 0;
        uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on[w] = 0;
          comp[w] = ncomp;
          ++size;
        } while (w != vv);
        bool self = std::find(g.adj[vv].begin(), g.adj[vv].end(), vv) != g.adj[vv].end();
        nontrivial.push_back(size > 1 || self);
        ++ncomp;
      }
    }
  }
  return comp;
}

std::optional<GraphLasso> find_accepting_lasso(const Graph& g) {
  std::vector<char> nontrivial;
  std::vector<uint32_t> comp = scc_ids(g, nontrivial);
  std::size_t n = g.adj.size();
  std::vector<uint32_t> parent(n, UINT32_MAX);
  std::vector<char> seen(n, 0);
  std::deque<uint32_t> q;
  for (uint32_t s : g.init)
    if (!seen[s]) {
      seen[s] = 1;
      q.push_back(s);
    }
  uint32_t target = UINT32_MAX;
  while (!q.empty() && target == UINT32_MAX) {
    uint32_t v = q.front();
    q.pop_front();
    if (g.acc[v] && nontrivial[comp[v]]) {
      target = v;
      break;
    }
    for (uint32_t w : g.adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = v;
        q.push_back(w);
      }
  }
  if (target == UINT32_MAX) return std::nullopt;
  GraphLasso out;
  for (uint32_t v = target; v != UINT32_MAX; v = parent[v]) out.prefix.push_back(v);
  std::reverse(out.prefix.begin(), out.prefix.end());
  // Shortest cycle through target inside its component.
  std::vector<uint32_t> par2(n, UINT32_MAX);
  std::vector<char> seen2(n, 0);
  std::deque<uint32_t> q2;
  uint32_t last = UINT32_MAX;
  for (uint32_t w : g.adj[target]) {
    if (comp[w] != comp[target] || seen2[w]) continue;
    seen2[w] = 1;
    par2[w] = target;
    q2.push_back(w);
  }
  while (!q2.empty()) {
    uint32_t v = q2.front();
    q2.pop_front();
    if (v == target) {
      last = v;
      break;
    }
    for (uint32_t w : g.adj[v]) {
      if (comp[w] != comp[target] || seen2[w]) continue;
      seen2[w] = 1;
      par2[w] = v;
      q2.push_back(w);
    }
  }
  if (last == UINT32_MAX) throw std::logic_error("accepting component without cycle");
  std::vector<uint32_t> cyc;
  uint32_t v = target;
  do {
    cyc.push_back(v);
    v = par2[v];
  } while (v != target);
  std::reverse(cyc.begin(), cyc.end());
  out.cycle = std::move(cyc);  // ends with target
  return out;
}

std::size_t lasso_next(std::size_t p, std::size_t stem, std::size_t len) { return p + 1 < len ? p + 1 : stem; }

// Drops states from which no accepting cycle is reachable.
Buchi trim(const Buchi& B) {
  Graph g;
  for (std::size_t q = 0; q < B.size(); ++q) g.add(B.accepting[q]);
  std::vector<std::vector<uint32_t>> radj(B.size());
  for (std::size_t q = 0; q < B.size(); ++q)
    for (const auto& e : B.succ[q]) {
      g.adj[q].push_back(uint32_t(e.first));
      radj[e.first].push_back(uint32_t(q));
    }
  std::vector<char> nontrivial;
  auto comp = scc_ids(g, nontrivial);
  std::vector<char> live(B.size(), 0);
  std::deque<uint32_t> work;
  for (uint32_t q = 0; q < B.size(); ++q)
    if (B.accepting[q] && nontrivial[comp[q]]) {
      live[q] = 1;
      work.push_back(q);
    }
  while (!work.empty()) {
    uint32_t q = work.front();
    work.pop_front();
    for (uint32_t p : radj[q])
      if (!live[p]) {
        live[p] = 1;
        work.push_back(p);
      }
  }
  live[B.init] = 1;
  std::vector<std::size_t> id(B.size(), SIZE_MAX);
  Buchi out;
  out.props = B.props;
  for (std::size_t q = 0; q < B.size(); ++q)
    if (live[q]) {
      id[q] = out.succ.size();
      out.succ.emplace_back();
      out.accepting.push_back(B.accepting[q] && nontrivial[comp[q]]);
    }
  out.init = id[B.init];
  for (std::size_t q = 0; q < B.size(); ++q)
    if (live[q])
      for (const auto& [r, gd] : B.succ[q])
        if (live[r]) out.succ[id[q]].emplace_back(id[r], gd);
  return out;
}

// Quotient by forward bisimulation (same acceptance, same guarded
// successor blocks).
Buchi minimize(const Buchi& B) {
  std::size_t n = B.size();
  std::vector<std::size_t> block(n);
  for (std::size_t q = 0; q < n; ++q) block[q] = B.accepting[q] ? 1 : 0;
  std::size_t count = 0;
  while (true) {
    using Sig = std::pair<std::size_t, std::vector<std::tuple<uint64_t, uint64_t, std::size_t>>>;
    std::map<Sig, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (std::size_t q = 0; q < n; ++q) {
      Sig sig{block[q], {}};
      for (const auto& [r, gd] : B.succ[q]) sig.second.emplace_back(gd.pos, gd.neg, block[r]);
      std::sort(sig.second.begin(), sig.second.end());
      sig.second.erase(std::unique(sig.second.begin(), sig.second.end()), sig.second.end());
      next[q] = ids.emplace(std::move(sig), ids.size()).first->second;
    }
    block = std::move(next);
    if (ids.size() == count) break;
    count = ids.size();
  }
  Buchi out;
  out.props = B.props;
  out.succ.resize(count);
  out.accepting.assign(count, false);
  std::vector<char> done(count, 0);
  for (std::size_t q = 0; q < n; ++q) {
    std::size_t b = block[q];
    out.accepting[b] = B.accepting[q];
    if (done[b]) continue;
    done[b] = 1;
    std::set<std::tuple<std::size_t, uint64_t, uint64_t>> edges;
    for (const auto& [r, gd] : B.succ[q]) edges.emplace(block[r], gd.pos, gd.neg);
    for (const auto& [r, pos, neg] : edges) out.succ[b].push_back({r, Guard{pos, neg}});
  }
  out.init = block[B.init];
  return out;
}

}  // namespace

Buchi ltl_to_buchi(const Formula& psi) {
  LtlDag d;
  for (const auto& p : props_of(psi)) d.prop(p);
  int root = d.from(psi);
  return minimize(trim(Tableau(d).build(root)));
}

Buchi ltl_to_buchi(const HFormula& body) {
  LtlDag d;
  int root = d.from(body);
  return minimize(trim(Tableau(d).build(root)));
}

bool buchi_accepts(const Buchi& B, const LassoTrace& word) {
  if (word.loop.empty()) throw std::invalid_argument("lasso without loop");
  std::size_t S = word.stem.size(), L = S + word.loop.size();
  Graph g;
  std::map<std::pair<std::size_t, std::size_t>, uint32_t> id;
  std::deque<std::pair<std::size_t, std::size_t>> work;
  auto get = [&](std::size_t q, std::size_t p) {
    auto [it, fresh] = id.emplace(std::make_pair(q, p), 0);
    if (fresh) {
      it->second = g.add(B.accepting[q]);
      work.emplace_back(q, p);
    }
    return it->second;
  };
  for (const auto& [q, gd] : B.succ[B.init])
    if (gd.ok(word.at(0))) g.init.push_back(get(q, 0));
  while (!work.empty()) {
    auto [q, p] = work.front();
    work.pop_front();
    uint32_t from = id.at({q, p});
    std::size_t p2 = lasso_next(p, S, L);
    for (const auto& [q2, gd] : B.succ[q])
      if (gd.ok(word.at(p2))) {
        uint32_t to = get(q2, p2);
        g.adj[from].push_back(to);
      }
  }
  return find_accepting_lasso(g).has_value();
}

bool is_trace_of(const Kripke& K, const LassoTrace& t) {
  if (t.loop.empty()) throw std::invalid_argument("lasso without loop");
  std::size_t S = t.stem.size(), L = S + t.loop.size();
  Graph g;
  std::map<std::pair<std::size_t, std::size_t>, uint32_t> id;
  std::deque<std::pair<std::size_t, std::size_t>> work;
  auto get = [&](std::size_t w, std::size_t p) {
    auto [it, fresh] = id.emplace(std::make_pair(w, p), 0);
    if (fresh) {
      it->second = g.add(true);
      work.emplace_back(w, p);
    }
    return it->second;
  };
  if (K.label[K.init] != t.at(0)) return false;
  g.init.push_back(get(K.init, 0));
  while (!work.empty()) {
    auto [w, p] = work.front();
    work.pop_front();
    uint32_t from = id.at({w, p});
    std::size_t p2 = lasso_next(p, S, L);
    for (std::size_t w2 : K.succ[w])
      if (K.label[w2] == t.at(p2)) {
        uint32_t to = get(w2, p2);
        g.adj[from].push_back(to);
      }
  }
  return find_accepting_lasso(g).has_value();
}

bool has_finite_traces(const Kripke& K) {
  Graph g;
  for (std::size_t w = 0; w < K.size(); ++w) g.add(false);
  for (std::size_t w = 0; w < K.size(); ++w)
    for (std::size_t v : K.succ[w]) g.adj[w].push_back(uint32_t(v));
  std::vector<char> nontrivial;
  auto comp = scc_ids(g, nontrivial);
  std::vector<char> seen(K.size(), 0);
  std::vector<std::size_t> stack{K.init};
  seen[K.init] = 1;
  while (!stack.empty()) {
    std::size_t w = stack.back();
    stack.pop_back();
    if (nontrivial[comp[w]] && K.succ[w].size() != 1) return false;
    for (std::size_t v : K.succ[w])
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
  }
  return true;
}

Kripke gen_kripke(uint64_t seed, std::size_t maxStates, std::size_t apCount, bool finite_traces) {
  if (maxStates == 0) throw std::invalid_argument("maxStates must be positive");
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  std::vector<std::string> ap;
  for (std::size_t j = 0; j < apCount; ++j) ap.push_back(std::string(1, char('a' + j)));
  while (true) {
    std::size_t n = pick(1, maxStates);
    std::vector<Letter> label(n);
    std::vector<std::vector<std::size_t>> succ(n);
    for (std::size_t w = 0; w < n; ++w) {
      label[w] = Letter(pick(0, (std::size_t{1} << apCount) - 1));
      std::size_t out = pick(1, 2);
      for (std::size_t j = 0; j < out; ++j) succ[w].push_back(pick(0, n - 1));
    }
    Kripke K = make_kripke(ap, std::move(label), std::move(succ), 0);
    if (!finite_traces || has_finite_traces(K)) return K;
  }
}

// ---------------------------------------------------------------- forall^k

namespace {

struct PropSource {
  int kprop = -1;  // index into K.ap, -1 = constantly false
  std::size_t var = 0;
};

std::pair<std::string, std::string> split_key(const std::string& key) {
  auto at = key.find('@');
  if (at == std::string::npos) return {key, {}};
  return {key.substr(0, at), key.substr(at + 1)};
}

int ap_index(const Kripke& K, const std::string& p) {
  auto it = std::find(K.ap.begin(), K.ap.end(), p);
  return it == K.ap.end() ? -1 : int(it - K.ap.begin());
}

}  // namespace

ForallResult check_forall_body(const Kripke& K, const HFormula& body, const std::vector<std::string>& vars) {
  if (vars.empty()) throw std::invalid_argument("no trace variables");
  Buchi B = ltl_to_buchi(h_negate(body));
  std::vector<PropSource> src;
  for (const auto& key : B.props) {
    auto [name, var] = split_key(key);
    auto it = std::find(vars.begin(), vars.end(), var);
    if (var.empty() || it == vars.end()) throw UnboundVariable("literal " + key + " has no bound trace variable");
    src.push_back({ap_index(K, name), std::size_t(it - vars.begin())});
  }
  std::size_t n = K.size(), k = vars.size();
  std::size_t tuples = 1;
  for (std::size_t j = 0; j < k; ++j) {
    if (tuples > (std::size_t{1} << 24) / n) throw BoundsCapExceeded("self-composition too large");
    tuples *= n;
  }
  auto digit = [&](std::size_t t, std::size_t j) {
    for (std::size_t x = 0; x < j; ++x) t /= n;
    return t % n;
  };
  std::vector<uint64_t> letter(tuples, 0);
  for (std::size_t t = 0; t < tuples; ++t)
    for (std::size_t b = 0; b < src.size(); ++b)
      if (src[b].kprop >= 0 && (K.label[digit(t, src[b].var)] >> src[b].kprop & 1)) letter[t] |= uint64_t{1} << b;
  auto tuple_succ = [&](std::size_t t) {
    std::vector<std::size_t> out{0};
    std::size_t mul = 1;
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<std::size_t> next;
      for (std::size_t base : out)
        for (std::size_t w : K.succ[digit(t, j)]) next.push_back(base + w * mul);
      out = std::move(next);
      mul *= n;
    }
    return out;
  };

  Graph g;
  std::vector<std::pair<std::size_t, std::size_t>> node;  // (tuple, buchi state)
  std::unordered_map<uint64_t, uint32_t> id;
  std::deque<uint32_t> work;
  auto get = [&](std::size_t t, std::size_t q) {
    uint64_t key = uint64_t(t) * B.size() + q;
    auto [it, fresh] = id.emplace(key, 0);
    if (fresh) {
      it->second = g.add(B.accepting[q]);
      node.emplace_back(t, q);
      work.push_back(it->second);
    }
    return it->second;
  };
  std::size_t t0 = 0;
  for (std::size_t j = 0, mul = 1; j < k; ++j, mul *= n) t0 += K.init * mul;
  for (const auto& [q, gd] : B.succ[B.init])
    if (gd.ok(letter[t0])) g.init.push_back(get(t0, q));
  while (!work.empty()) {
    uint32_t v = work.front();
    work.pop_front();
    auto [t, q] = node[v];
    for (std::size_t t2 : tuple_succ(t))
      for (const auto& [q2, gd] : B.succ[q])
        if (gd.ok(letter[t2])) {
          uint32_t to = get(t2, q2);
          g.adj[v].push_back(to);
        }
  }

  ForallResult r;
  r.product_states = g.adj.size();
  auto lasso = find_accepting_lasso(g);
  if (!lasso) return r;
  r.holds = false;
  for (std::size_t j = 0; j < k; ++j) {
    LassoTrace tr;
    for (std::size_t i = 0; i + 1 < lasso->prefix.size(); ++i)
      tr.stem.push_back(K.label[digit(node[lasso->prefix[i]].first, j)]);
    tr.loop.push_back(K.label[digit(node[lasso->prefix.back()].first, j)]);
    for (std::size_t i = 0; i + 1 < lasso->cycle.size(); ++i)
      tr.loop.push_back(K.label[digit(node[lasso->cycle[i]].first, j)]);
    r.counterexample.push_back(canonicalize(std::move(tr)));
  }
  return r;
}

ForallResult check_forall_k(const Kripke& K, const Formula& phi, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  auto vars = kcoherent_vars(k);
  return check_forall_body(K, kcoherent_body(phi, vars), vars);
}

// ---------------------------------------------------------------- exists-forall

namespace {

int body_reach(const HFormula& f, const std::string& v, int depth, bool unlimited) {
  int best = -2;  // no occurrence
  switch (f->kind) {
    case HKind::Lit:
    case HKind::NegLit:
      if (f->name == v) return unlimited ? -1 : depth;
      return best;
    case HKind::Next: return body_reach(f->kids[0], v, depth + 1, unlimited);
    case HKind::Until:
    case HKind::WeakUntil: unlimited = true; [[fallthrough]];
    default:
      for (const auto& k : f->kids) {
        int r = body_reach(k, v, depth, unlimited);
        if (r == -1) return -1;
        best = std::max(best, r);
      }
      return best;
  }
}

// Phase automaton of a shaped uniform variable.
struct PhaseAut {
  std::vector<bool> bit;
  std::vector<std::vector<uint8_t>> succ;
  std::vector<uint8_t> initial;
  std::vector<bool> stay;  // self-loop: may remain forever
};

PhaseAut level_phases(Shape s) {
  PhaseAut a;
  a.bit = {false, true, false};
  a.stay = {s == Shape::AtMostOne || s == Shape::Interval, s == Shape::Interval, true};
  if (s == Shape::Interval)
    a.succ = {{0, 1}, {1, 2}, {2}};
  else
    a.succ = {{0, 1}, {2}, {2}};
  a.initial = {0, 1};
  return a;
}

// Free bits on positions 0..m, then false.
PhaseAut counter_phases(int m) {
  PhaseAut a;
  std::size_t n = 2 * std::size_t(m + 1) + 1;
  a.bit.resize(n);
  a.succ.resize(n);
  a.stay.assign(n, false);
  for (int c = 0; c <= m; ++c)
    for (int b = 0; b < 2; ++b) {
      std::size_t id = 2 * c + b;
      a.bit[id] = b;
      if (c < m)
        a.succ[id] = {uint8_t(2 * (c + 1)), uint8_t(2 * (c + 1) + 1)};
      else
        a.succ[id] = {uint8_t(n - 1)};
    }
  a.bit[n - 1] = false;
  a.succ[n - 1] = {uint8_t(n - 1)};
  a.stay[n - 1] = true;
  a.initial = {0, 1};
  return a;
}

std::vector<LassoTrace> bit_lassos(std::size_t stemMax, std::size_t loopMax) {
  std::vector<LassoTrace> out;
  std::set<LassoTrace> seen;
  for (std::size_t total = 1; total <= stemMax + loopMax; ++total)
    for (std::size_t s = 0; s <= std::min(stemMax, total - 1); ++s) {
      std::size_t l = total - s;
      if (l > loopMax) continue;
      for (uint64_t bits = 0; bits < (uint64_t{1} << total); ++bits) {
        LassoTrace t;
        for (std::size_t i = 0; i < total; ++i) (i < s ? t.stem : t.loop).push_back(bits >> i & 1);
        t = canonicalize(std::move(t));
        if (seen.insert(t).second) out.push_back(t);
      }
    }
  return out;
}

bool shorter(const LassoTrace& a, const LassoTrace& b) {
  std::size_t la = a.stem.size() + a.loop.size(), lb = b.stem.size() + b.loop.size();
  if (la != lb) return la < lb;
  return a < b;
}

// Nodes from which an accepting cycle is reachable.
std::vector<char> can_accept(const Graph& g) {
  std::vector<char> nontrivial;
  auto comp = scc_ids(g, nontrivial);
  std::vector<char> out(g.adj.size(), 0);
  std::vector<std::vector<uint32_t>> radj(g.adj.size());
  for (uint32_t v = 0; v < g.adj.size(); ++v)
    for (uint32_t w : g.adj[v]) radj[w].push_back(v);
  std::deque<uint32_t> q;
  for (uint32_t v = 0; v < g.adj.size(); ++v)
    if (g.acc[v] && nontrivial[comp[v]]) {
      out[v] = 1;
      q.push_back(v);
    }
  while (!q.empty()) {
    uint32_t v = q.front();
    q.pop_front();
    for (uint32_t u : radj[v])
      if (!out[u]) {
        out[u] = 1;
        q.push_back(u);
      }
  }
  return out;
}

class ExistsForall {
 public:
  ExistsForall(const Kripke& K, const HFormula& phi, const ExistsForallBounds& b) : K_(K), bounds_(b) {
    Prefix pre = split_prefix(phi);
    if (pre.quantifiers.empty() || pre.quantifiers.back()->kind != HKind::TraceForall)
      throw std::invalid_argument("prefix must end with one universal trace quantifier");
    forall_ = pre.quantifiers.back()->name;
    std::vector<std::string> enum_uniform;
    for (std::size_t i = 0; i + 1 < pre.quantifiers.size(); ++i) {
      const HNode* q = pre.quantifiers[i];
      if (q->kind == HKind::TraceExists) {
        etraces_.push_back(q->name);
      } else if (q->kind == HKind::UExists && q->shape != Shape::Codes) {
        uniform_.push_back(q->name);
        shape_.push_back(q->shape);
      } else {
        throw std::invalid_argument("unsupported quantifier in prefix: " + q->name);
      }
    }
    body_ = pre.body;
    B_ = ltl_to_buchi(h_negate(body_));

    for (std::size_t u = 0; u < uniform_.size(); ++u) {
      Shape s = shape_[u];
      if (s == Shape::None) {
        int reach = body_reach(body_, uniform_[u], 0, false);
        if (reach == -1) {
          enumerated_.push_back(int(u));
          continue;
        }
        phase_.push_back(counter_phases(std::max(reach, 0)));
      } else {
        phase_.push_back(level_phases(s));
      }
      phase_var_.push_back(int(u));
    }

    for (const auto& key : B_.props) {
      auto [name, var] = split_key(key);
      Src s;
      auto uit = std::find(uniform_.begin(), uniform_.end(), name);
      if (uit != uniform_.end()) {
        int u = int(uit - uniform_.begin());
        auto pit = std::find(phase_var_.begin(), phase_var_.end(), u);
        if (pit != phase_var_.end()) {
          s.kind = Src::Phase;
          s.idx = int(pit - phase_var_.begin());
        } else {
          s.kind = Src::Fixed;
          s.idx = int(std::find(enumerated_.begin(), enumerated_.end(), u) - enumerated_.begin());
        }
      } else if (var == forall_) {
        s.kind = Src::Trace;
        s.idx = ap_index(K_, name);
      } else if (auto eit = std::find(etraces_.begin(), etraces_.end(), var); !var.empty() && eit != etraces_.end()) {
        s.kind = Src::Fixed;
        s.idx = int(enumerated_.size() + (eit - etraces_.begin()));
        s.kprop = ap_index(K_, name);
      } else {
        throw UnboundVariable("literal " + key + " is not bound by the prefix");
      }
      src_.push_back(s);
    }

    // Pairs with an accepting continuation that ignores every witness bit.
    uint64_t witness_bits = 0;
    for (std::size_t b = 0; b < src_.size(); ++b)
      if (src_[b].kind != Src::Trace) witness_bits |= uint64_t{1} << b;
    std::size_t W = K_.size(), Q = B_.size();
    Graph g;
    for (std::size_t x = 0; x < W * Q; ++x) g.add(B_.accepting[x % Q]);
    for (std::size_t w = 0; w < W; ++w)
      for (std::size_t q = 0; q < Q; ++q)
        for (std::size_t w2 : K_.succ[w]) {
          uint64_t l = trace_letter(w2);
          for (const auto& [q2, gd] : B_.succ[q])
            if (((gd.pos | gd.neg) & witness_bits) == 0 && gd.ok(l)) g.adj[w * Q + q].push_back(uint32_t(w2 * Q + q2));
        }
    doomed_ = can_accept(g);
  }

  ExistsForallVerdict run() {
    ExistsForallVerdict v;
    std::vector<std::vector<LassoTrace>> choices;
    if (!enumerated_.empty()) {
      auto bits = bit_lassos(bounds_.stemMax, bounds_.loopMax);
      for (std::size_t i = 0; i < enumerated_.size(); ++i) choices.push_back(bits);
    }
    if (!etraces_.empty()) {
      auto tr = traces_enumerate(K_, bounds_.stemMax, bounds_.loopMax);
      std::sort(tr.begin(), tr.end(), shorter);
      for (std::size_t i = 0; i < etraces_.size(); ++i) choices.push_back(tr);
    }
    std::vector<std::size_t> pick(choices.size(), 0);
    for (const auto& c : choices)
      if (c.empty()) {
        v.kind = ExistsForallVerdict::Kind::FailsUpTo;
        v.bounds = bounds_text();
        return v;
      }
    while (true) {
      fixed_.clear();
      for (std::size_t i = 0; i < choices.size(); ++i) fixed_.push_back(choices[i][pick[i]]);
      std::vector<std::vector<uint8_t>> phases;
      if (search(phases, v.search_nodes)) {
        v.kind = ExistsForallVerdict::Kind::Holds;
        std::size_t T = phases.size();
        for (std::size_t j = 0; j < phase_var_.size(); ++j) {
          LassoTrace t;
          for (std::size_t i = 0; i < T; ++i) t.stem.push_back(phase_[j].bit[phases[i][j]]);
          t.loop.push_back(phase_[j].bit[phases[T - 1][j]]);
          v.witness[uniform_[phase_var_[j]]] = canonicalize(std::move(t));
        }
        for (std::size_t i = 0; i < enumerated_.size(); ++i) v.witness[uniform_[enumerated_[i]]] = fixed_[i];
        for (std::size_t i = 0; i < etraces_.size(); ++i) v.witness[etraces_[i]] = fixed_[enumerated_.size() + i];
        return v;
      }
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
    if (choices.empty()) {
      v.kind = ExistsForallVerdict::Kind::ExactFail;
    } else {
      v.kind = ExistsForallVerdict::Kind::FailsUpTo;
      v.bounds = bounds_text();
    }
    return v;
  }

 private:
  struct Src {
    enum { Trace, Phase, Fixed } kind = Trace;
    int idx = -1;
    int kprop = -1;  // Fixed existential trace: proposition index
  };

  std::string bounds_text() const {
    return "stemMax=" + std::to_string(bounds_.stemMax) + " loopMax=" + std::to_string(bounds_.loopMax);
  }

  uint64_t trace_letter(std::size_t w) const {
    uint64_t l = 0;
    for (std::size_t b = 0; b < src_.size(); ++b)
      if (src_[b].kind == Src::Trace && src_[b].idx >= 0 && (K_.label[w] >> src_[b].idx & 1)) l |= uint64_t{1} << b;
    return l;
  }

  uint64_t letter(std::size_t w, const std::vector<uint8_t>& ph, std::size_t p) const {
    uint64_t l = 0;
    for (std::size_t b = 0; b < src_.size(); ++b) {
      const Src& s = src_[b];
      bool on = false;
      if (s.kind == Src::Trace) {
        on = s.idx >= 0 && (K_.label[w] >> s.idx & 1);
      } else if (s.kind == Src::Phase) {
        on = phase_[s.idx].bit[ph[s.idx]];
      } else {
        Letter x = fixed_[s.idx].at(p);
        on = s.kprop < 0 ? (s.idx < int(enumerated_.size()) && (x & 1)) : (x >> s.kprop & 1);
      }
      if (on) l |= uint64_t{1} << b;
    }
    return l;
  }

  // Bad[(w,q,p)]: an accepting lasso of the negated body is reachable when
  // the phases stay fixed at `ph` from now on.
  const std::vector<char>& bad(const std::vector<uint8_t>& ph) {
    auto it = bad_.find(ph);
    if (it != bad_.end()) return it->second;
    std::size_t W = K_.size(), Q = B_.size(), P = plen_;
    Graph g;
    for (std::size_t i = 0; i < W * Q * P; ++i) g.add(false);
    for (std::size_t w = 0; w < W; ++w)
      for (std::size_t q = 0; q < Q; ++q)
        for (std::size_t p = 0; p < P; ++p) {
          uint32_t v = uint32_t((w * Q + q) * P + p);
          g.acc[v] = B_.accepting[q];
          std::size_t p2 = lasso_next(p, pstem_, P);
          for (std::size_t w2 : K_.succ[w]) {
            uint64_t l = letter(w2, ph, p2);
            for (const auto& [q2, gd] : B_.succ[q])
              if (gd.ok(l)) g.adj[v].push_back(uint32_t((w2 * Q + q2) * P + p2));
          }
        }
    std::vector<char> out = can_accept(g);
    return bad_.emplace(ph, std::move(out)).first->second;
  }

  bool search(std::vector<std::vector<uint8_t>>& phases_out, std::size_t& nodes_total) {
    pstem_ = 0;
    std::size_t per = 1;
    for (const auto& f : fixed_) {
      pstem_ = std::max(pstem_, f.stem.size());
      per = lcm_size(per, f.loop.size());
    }
    plen_ = pstem_ + per;
    bad_.clear();
    std::size_t W = K_.size(), Q = B_.size();

    struct SNode {
      std::vector<uint8_t> ph;
      std::size_t p;
      std::vector<uint32_t> set;  // sorted (w*Q+q)
      std::size_t parent;
    };
    std::vector<SNode> nodes;
    // Antichain: a set that contains a visited set of the same phase and
    // position cannot succeed where that one did not.
    std::map<std::pair<std::vector<uint8_t>, std::size_t>, std::vector<std::vector<uint32_t>>> seen;
    std::deque<std::size_t> work;
    auto push = [&](SNode n) {
      for (uint32_t x : n.set)
        if (doomed_[x]) return;
      auto& list = seen[{n.ph, n.p}];
      for (const auto& t : list)
        if (std::includes(n.set.begin(), n.set.end(), t.begin(), t.end())) return;
      list.push_back(n.set);
      if (nodes.size() >= bounds_.max_nodes) throw BoundsCapExceeded("witness search exceeded node cap");
      nodes.push_back(std::move(n));
      work.push_back(nodes.size() - 1);
    };
    auto combos = [&](const std::vector<std::vector<uint8_t>>& opts) {
      std::vector<std::vector<uint8_t>> out{{}};
      for (const auto& o : opts) {
        std::vector<std::vector<uint8_t>> next;
        for (const auto& base : out)
          for (uint8_t x : o) {
            next.push_back(base);
            next.back().push_back(x);
          }
        out = std::move(next);
      }
      return out;
    };
    std::vector<std::vector<uint8_t>> init_opts;
    for (const auto& a : phase_) init_opts.push_back(a.initial);
    for (auto& ph : combos(init_opts)) {
      std::set<uint32_t> s;
      uint64_t l = letter(K_.init, ph, 0);
      for (const auto& [q, gd] : B_.succ[B_.init])
        if (gd.ok(l)) s.insert(uint32_t(K_.init * Q + q));
      push({std::move(ph), 0, {s.begin(), s.end()}, SIZE_MAX});
    }
    while (!work.empty()) {
      std::size_t id = work.front();
      work.pop_front();
      ++nodes_total;
      const SNode cur = nodes[id];
      bool can_stay = true;
      for (std::size_t j = 0; j < phase_.size(); ++j) can_stay = can_stay && phase_[j].stay[cur.ph[j]];
      if (can_stay) {
        const auto& bd = bad(cur.ph);
        bool ok = true;
        for (uint32_t x : cur.set)
          if (bd[(std::size_t(x)) * plen_ + cur.p]) {
            ok = false;
            break;
          }
        if (ok) {
          std::vector<std::vector<uint8_t>> seq;
          for (std::size_t v = id; v != SIZE_MAX; v = nodes[v].parent) seq.push_back(nodes[v].ph);
          std::reverse(seq.begin(), seq.end());
          if (seq.front().empty()) seq.assign(1, {});
          phases_out = std::move(seq);
          return true;
        }
      }
      std::vector<std::vector<uint8_t>> opts;
      for (std::size_t j = 0; j < phase_.size(); ++j) opts.push_back(phase_[j].succ[cur.ph[j]]);
      std::size_t p2 = lasso_next(cur.p, pstem_, plen_);
      for (auto& ph : combos(opts)) {
        std::vector<char> mark(W * Q, 0);
        for (uint32_t x : cur.set) {
          std::size_t w = x / Q, q = x % Q;
          for (std::size_t w2 : K_.succ[w]) {
            uint64_t l = letter(w2, ph, p2);
            for (const auto& [q2, gd] : B_.succ[q])
              if (gd.ok(l)) mark[w2 * Q + q2] = 1;
          }
        }
        std::vector<uint32_t> s;
        for (std::size_t x = 0; x < mark.size(); ++x)
          if (mark[x]) s.push_back(uint32_t(x));
        push({std::move(ph), p2, std::move(s), id});
      }
    }
    return false;
  }

  const Kripke& K_;
  ExistsForallBounds bounds_;
  std::string forall_;
  std::vector<std::string> etraces_, uniform_;
  std::vector<Shape> shape_;
  HFormula body_;
  Buchi B_;
  std::vector<PhaseAut> phase_;
  std::vector<int> phase_var_, enumerated_;
  std::vector<Src> src_;
  std::vector<LassoTrace> fixed_;
  std::size_t pstem_ = 0, plen_ = 1;
  std::map<std::vector<uint8_t>, std::vector<char>> bad_;
  std::vector<char> doomed_;
};

}  // namespace

ExistsForallVerdict check_exists_forall(const Kripke& K, const HFormula& phi, const ExistsForallBounds& b) {
  return ExistsForall(K, phi, b).run();
}

// ---------------------------------------------------------------- dispatch

const char* verdict_name(McVerdict::Kind k) {
  switch (k) {
    case McVerdict::Kind::Holds: return "Holds";
    case McVerdict::Kind::Refuted: return "Refuted";
    case McVerdict::Kind::HoldsOnApprox: return "HoldsOnApprox";
    case McVerdict::Kind::Unknown: return "Unknown";
  }
  return "?";
}

McVerdict mc_teamltl(const Kripke& K, const Formula& phi, const McOptions& opts) {
  McVerdict v;
  switch (opts.mode) {
    case McMode::KCoherent: {
      ForallResult r = check_forall_k(K, phi, opts.k);
      v.kind = r.holds ? McVerdict::Kind::Holds : McVerdict::Kind::Refuted;
      v.detail = "k=" + std::to_string(opts.k) + " product_states=" + std::to_string(r.product_states);
      v.counterexample = std::move(r.counterexample);
      return v;
    }
    case McMode::LeftFlat: {
      ExistsForallBounds b;
      b.stemMax = opts.stemMax;
      b.loopMax = opts.loopMax;
      b.max_nodes = opts.max_nodes;
      ExistsForallVerdict r = check_exists_forall(K, leftflat_translate(phi), b);
      std::ostringstream os;
      switch (r.kind) {
        case ExistsForallVerdict::Kind::Holds:
          v.kind = McVerdict::Kind::Holds;
          os << "witness";
          for (const auto& [name, t] : r.witness) os << " " << name << "=" << trace_to_string({"1"}, t);
          break;
        case ExistsForallVerdict::Kind::ExactFail: v.kind = McVerdict::Kind::Refuted; os << "exact"; break;
        case ExistsForallVerdict::Kind::FailsUpTo: v.kind = McVerdict::Kind::Unknown; os << r.bounds; break;
      }
      v.detail = os.str();
      return v;
    }
    case McMode::Bounded: {
      Team T = make_team(K.ap, traces_enumerate(K, opts.stemMax, opts.loopMax));
      bool ok = eval(T, phi);
      v.detail = "traces=" + std::to_string(T.traces.size()) + " stemMax=" + std::to_string(opts.stemMax) +
                 " loopMax=" + std::to_string(opts.loopMax);
      if (ok)
        v.kind = McVerdict::Kind::HoldsOnApprox;
      else
        v.kind = classify_fragment(phi).downward_closed ? McVerdict::Kind::Refuted : McVerdict::Kind::Unknown;
      return v;
    }
  }
  return v;
}

Formula one_coherence_reduction(const Formula& phi) {
  const auto& k = phi->kids;
  switch (phi->kind) {
    case Kind::True:
    case Kind::False:
    case Kind::Prop:
    case Kind::NegProp: return phi;
    case Kind::And: return mk_and(one_coherence_reduction(k[0]), one_coherence_reduction(k[1]));
    case Kind::Or:
    case Kind::BoolOr: return mk_or(one_coherence_reduction(k[0]), one_coherence_reduction(k[1]));
    case Kind::Next: return mk_next(one_coherence_reduction(k[0]));
    case Kind::Until: return mk_until(one_coherence_reduction(k[0]), one_coherence_reduction(k[1]));
    case Kind::WeakUntil: return mk_weakuntil(one_coherence_reduction(k[0]), one_coherence_reduction(k[1]));
    case Kind::Inc: {
      std::vector<Formula> parts;
      for (std::size_t j = 0; j < phi->split; ++j)
        parts.push_back(ltl_iff(one_coherence_reduction(k[j]), one_coherence_reduction(k[phi->split + j])));
      return mk_and_all(parts);
    }
    default: throw FragmentMismatch("not in TeamLTL(inc, vv): " + render(phi));
  }
}

}  // namespace teamltl
