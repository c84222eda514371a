// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamltl/hyper.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <numeric>
#include <unordered_map>

namespace teamltl {

// ---------------------------------------------------------------------------
// Construction

namespace {

HFormula mk(HKind k, std::vector<HFormula> kids = {}, std::string name = {}, std::string var = {},
            Shape shape = Shape::None, int rank = -1) {
  auto n = std::make_shared<HNode>();
  n->kind = k;
  n->kids = std::move(kids);
  n->name = std::move(name);
  n->var = std::move(var);
  n->shape = shape;
  n->rank = rank;
  return n;
}

}  // namespace

HFormula h_true() {
  static const HFormula t = mk(HKind::True);
  return t;
}
HFormula h_false() {
  static const HFormula f = mk(HKind::False);
  return f;
}
HFormula h_lit(const std::string& p, const std::string& var) { return mk(HKind::Lit, {}, p, var); }
HFormula h_neglit(const std::string& p, const std::string& var) { return mk(HKind::NegLit, {}, p, var); }
HFormula h_and(HFormula a, HFormula b) { return mk(HKind::And, {std::move(a), std::move(b)}); }
HFormula h_or(HFormula a, HFormula b) { return mk(HKind::Or, {std::move(a), std::move(b)}); }
HFormula h_next(HFormula a) { return mk(HKind::Next, {std::move(a)}); }
HFormula h_until(HFormula a, HFormula b) { return mk(HKind::Until, {std::move(a), std::move(b)}); }
HFormula h_weakuntil(HFormula a, HFormula b) { return mk(HKind::WeakUntil, {std::move(a), std::move(b)}); }
HFormula h_eventually(HFormula a) { return h_until(h_true(), std::move(a)); }
HFormula h_globally(HFormula a) { return h_weakuntil(std::move(a), h_false()); }

HFormula h_quant(HKind k, const std::string& v, HFormula body, Shape shape, int rank) {
  if (!h_is_quantifier(k)) throw std::invalid_argument("h_quant: not a quantifier kind");
  return mk(k, {std::move(body)}, v, {}, shape, rank);
}

HFormula h_and_all(const std::vector<HFormula>& fs) {
  if (fs.empty()) return h_true();
  HFormula r = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) r = h_and(r, fs[i]);
  return r;
}

HFormula h_or_all(const std::vector<HFormula>& fs) {
  if (fs.empty()) return h_false();
  HFormula r = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) r = h_or(r, fs[i]);
  return r;
}

bool h_is_quantifier(HKind k) {
  switch (k) {
    case HKind::TraceForall:
    case HKind::TraceExists:
    case HKind::UForall:
    case HKind::UExists:
    case HKind::PForall:
    case HKind::PExists:
      return true;
    default:
      return false;
  }
}

namespace {

bool is_ev(const HFormula& f) { return f->kind == HKind::Until && f->kids[0]->kind == HKind::True; }
bool is_gl(const HFormula& f) { return f->kind == HKind::WeakUntil && f->kids[1]->kind == HKind::False; }

HKind dual(HKind k) {
  switch (k) {
    case HKind::TraceForall: return HKind::TraceExists;
    case HKind::TraceExists: return HKind::TraceForall;
    case HKind::UForall: return HKind::UExists;
    case HKind::UExists: return HKind::UForall;
    case HKind::PForall: return HKind::PExists;
    case HKind::PExists: return HKind::PForall;
    default: return k;
  }
}

}  // namespace

HFormula h_negate(const HFormula& f) {
  switch (f->kind) {
    case HKind::True: return h_false();
    case HKind::False: return h_true();
    case HKind::Lit: return h_neglit(f->name, f->var);
    case HKind::NegLit: return h_lit(f->name, f->var);
    case HKind::And: return h_or(h_negate(f->kids[0]), h_negate(f->kids[1]));
    case HKind::Or: return h_and(h_negate(f->kids[0]), h_negate(f->kids[1]));
    case HKind::Next: return h_next(h_negate(f->kids[0]));
    case HKind::Until: {
      if (is_ev(f)) return h_globally(h_negate(f->kids[1]));
      HFormula na = h_negate(f->kids[0]), nb = h_negate(f->kids[1]);
      return h_weakuntil(nb, h_and(na, nb));
    }
    case HKind::WeakUntil: {
      if (is_gl(f)) return h_eventually(h_negate(f->kids[0]));
      HFormula na = h_negate(f->kids[0]), nb = h_negate(f->kids[1]);
      return h_until(nb, h_and(na, nb));
    }
    default:
      return mk(dual(f->kind), {h_negate(f->kids[0])}, f->name, {}, f->shape, f->rank);
  }
}

HFormula h_implies(const HFormula& a, const HFormula& b) { return h_or(h_negate(a), b); }

HFormula h_iff(const HFormula& a, const HFormula& b) {
  return h_or(h_and(a, b), h_and(h_negate(a), h_negate(b)));
}

std::size_t h_size(const HFormula& f) {
  std::size_t n = 1;
  for (const auto& k : f->kids) n += h_size(k);
  return n;
}

bool h_structurally_equal(const HFormula& a, const HFormula& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name || a->var != b->var || a->shape != b->shape ||
      a->rank != b->rank || a->kids.size() != b->kids.size())
    return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!h_structurally_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

Prefix split_prefix(const HFormula& f) {
  Prefix p;
  HFormula cur = f;
  while (h_is_quantifier(cur->kind)) {
    p.quantifiers.push_back(cur.get());
    cur = cur->kids[0];
  }
  p.body = cur;
  return p;
}

namespace {

void prenex_rec(const HFormula& f, std::vector<const HNode*>& prefix, HFormula& body, bool under_temporal) {
  if (h_is_quantifier(f->kind)) {
    if (under_temporal) throw std::invalid_argument("prenex: quantifier under a temporal operator");
    prefix.push_back(f.get());
    prenex_rec(f->kids[0], prefix, body, false);
    return;
  }
  switch (f->kind) {
    case HKind::And:
    case HKind::Or: {
      HFormula a, b;
      prenex_rec(f->kids[0], prefix, a, under_temporal);
      prenex_rec(f->kids[1], prefix, b, under_temporal);
      body = mk(f->kind, {a, b});
      return;
    }
    case HKind::Next:
    case HKind::Until:
    case HKind::WeakUntil: {
      std::vector<HFormula> kids;
      for (const auto& k : f->kids) {
        HFormula kb;
        prenex_rec(k, prefix, kb, true);
        kids.push_back(kb);
      }
      body = mk(f->kind, kids);
      return;
    }
    default:
      body = f;
      return;
  }
}

}  // namespace

HFormula prenex(const HFormula& f) {
  std::vector<const HNode*> prefix;
  HFormula body;
  prenex_rec(f, prefix, body, false);
  std::set<std::string> names;
  for (const HNode* q : prefix)
    if (!names.insert(q->name).second)
      throw std::invalid_argument("prenex: bound variable '" + q->name + "' is not unique");
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    body = mk((*it)->kind, {body}, (*it)->name, {}, (*it)->shape, (*it)->rank);
  return body;
}

// ---------------------------------------------------------------------------
// Parser and printer

namespace {

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::None: return "";
    case Shape::One: return "one";
    case Shape::AtMostOne: return "atmostone";
    case Shape::Interval: return "interval";
    case Shape::CodeLevel: return "code";
    case Shape::Codes: return "codes";
  }
  return "";
}

const char* quant_keyword(HKind k) {
  switch (k) {
    case HKind::TraceForall: return "forall";
    case HKind::TraceExists: return "exists";
    case HKind::UForall: return "uforall";
    case HKind::UExists: return "uexists";
    case HKind::PForall: return "forallp";
    case HKind::PExists: return "existsp";
    default: return "";
  }
}

bool hident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

const std::set<std::string>& hkeywords() {
  static const std::set<std::string> k = {"forall", "exists", "uforall", "uexists", "forallp", "existsp",
                                          "X",      "U",      "W",       "F",       "G",       "true",
                                          "false"};
  return k;
}

struct HTok {
  enum Type { Ident, Sym, End } type;
  std::string text;
  std::size_t pos;
};

class HParser {
 public:
  explicit HParser(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size()) {
      char c = s[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (hident_char(c)) {
        std::size_t j = i;
        while (j < s.size() && hident_char(s[j])) ++j;
        toks_.push_back({HTok::Ident, s.substr(i, j - i), i});
        i = j;
        continue;
      }
      if (std::string("()&|!@.:[]").find(c) != std::string::npos) {
        toks_.push_back({HTok::Sym, std::string(1, c), i});
        ++i;
        continue;
      }
      throw HyperParseError(std::string("unexpected character '") + c + "'", i);
    }
    toks_.push_back({HTok::End, "", s.size()});
  }

  HFormula parse_all() {
    HFormula f = parse_formula();
    if (peek().type != HTok::End) throw HyperParseError("unexpected token '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const HTok& peek() const { return toks_[i_]; }
  bool is_sym(const char* s) const { return peek().type == HTok::Sym && peek().text == s; }
  bool is_kw(const char* s) const { return peek().type == HTok::Ident && peek().text == s; }
  void expect(const char* s) {
    if (!is_sym(s)) throw HyperParseError(std::string("expected '") + s + "'", peek().pos);
    ++i_;
  }
  std::string ident() {
    const HTok& t = peek();
    if (t.type != HTok::Ident || hkeywords().count(t.text))
      throw HyperParseError("expected identifier", t.pos);
    ++i_;
    return t.text;
  }

  std::optional<HKind> quant_kind() const {
    if (peek().type != HTok::Ident) return std::nullopt;
    const std::string& s = peek().text;
    if (s == "forall") return HKind::TraceForall;
    if (s == "exists") return HKind::TraceExists;
    if (s == "uforall") return HKind::UForall;
    if (s == "uexists") return HKind::UExists;
    if (s == "forallp") return HKind::PForall;
    if (s == "existsp") return HKind::PExists;
    return std::nullopt;
  }

  HFormula parse_formula() {
    if (quant_kind()) return parse_quant();
    return parse_or();
  }

  HFormula parse_quant() {
    HKind k = *quant_kind();
    ++i_;
    std::string v = ident();
    Shape shape = Shape::None;
    int rank = -1;
    if (is_sym(":")) {
      ++i_;
      std::size_t pos = peek().pos;
      std::string s = ident();
      if (s == "one") shape = Shape::One;
      else if (s == "atmostone") shape = Shape::AtMostOne;
      else if (s == "interval") shape = Shape::Interval;
      else if (s == "code") shape = Shape::CodeLevel;
      else if (s == "codes") shape = Shape::Codes;
      else throw HyperParseError("unknown shape '" + s + "'", pos);
      if (is_sym("[")) {
        ++i_;
        std::size_t rp = peek().pos;
        std::string num = peek().type == HTok::Ident ? peek().text : "";
        if (num.empty() || !std::all_of(num.begin(), num.end(), ::isdigit))
          throw HyperParseError("expected rank", rp);
        ++i_;
        rank = std::stoi(num);
        expect("]");
      }
    }
    expect(".");
    return mk(k, {parse_formula()}, v, {}, shape, rank);
  }

  HFormula parse_or() {
    HFormula f = parse_and();
    while (is_sym("|")) {
      ++i_;
      f = h_or(f, parse_and());
    }
    return f;
  }
  HFormula parse_and() {
    HFormula f = parse_uw();
    while (is_sym("&")) {
      ++i_;
      f = h_and(f, parse_uw());
    }
    return f;
  }
  HFormula parse_uw() {
    HFormula f = parse_unary();
    if (is_kw("U")) {
      ++i_;
      return h_until(f, parse_uw());
    }
    if (is_kw("W")) {
      ++i_;
      return h_weakuntil(f, parse_uw());
    }
    return f;
  }
  HFormula parse_unary() {
    if (is_sym("!")) {
      ++i_;
      auto [p, v] = parse_lit();
      return h_neglit(p, v);
    }
    if (is_kw("X")) { ++i_; return h_next(parse_unary()); }
    if (is_kw("F")) { ++i_; return h_eventually(parse_unary()); }
    if (is_kw("G")) { ++i_; return h_globally(parse_unary()); }
    return parse_atom();
  }
  std::pair<std::string, std::string> parse_lit() {
    std::string p = ident();
    std::string v;
    if (is_sym("@")) {
      ++i_;
      v = ident();
    }
    return {p, v};
  }
  HFormula parse_atom() {
    if (is_sym("(")) {
      ++i_;
      HFormula f = parse_formula();
      expect(")");
      return f;
    }
    if (quant_kind()) return parse_quant();
    if (is_kw("true")) { ++i_; return h_true(); }
    if (is_kw("false")) { ++i_; return h_false(); }
    auto [p, v] = parse_lit();
    return h_lit(p, v);
  }

  std::vector<HTok> toks_;
  std::size_t i_ = 0;
};

void hrender(const HFormula& f, std::string& out, bool top);

void hrender_operand(const HFormula& f, std::string& out) {
  if (h_is_quantifier(f->kind)) {
    out += "(";
    hrender(f, out, true);
    out += ")";
  } else {
    hrender(f, out, false);
  }
}

void hrender(const HFormula& f, std::string& out, bool top) {
  (void)top;
  auto bin = [&](const char* op) {
    out += "(";
    hrender_operand(f->kids[0], out);
    out += " ";
    out += op;
    out += " ";
    hrender_operand(f->kids[1], out);
    out += ")";
  };
  switch (f->kind) {
    case HKind::True: out += "true"; return;
    case HKind::False: out += "false"; return;
    case HKind::Lit:
    case HKind::NegLit:
      if (f->kind == HKind::NegLit) out += "!";
      out += f->name;
      if (!f->var.empty()) out += "@" + f->var;
      return;
    case HKind::And: bin("&"); return;
    case HKind::Or: bin("|"); return;
    case HKind::Next:
      out += "X ";
      hrender_operand(f->kids[0], out);
      return;
    case HKind::Until:
      if (is_ev(f)) {
        out += "F ";
        hrender_operand(f->kids[1], out);
      } else {
        bin("U");
      }
      return;
    case HKind::WeakUntil:
      if (is_gl(f)) {
        out += "G ";
        hrender_operand(f->kids[0], out);
      } else {
        bin("W");
      }
      return;
    default:
      out += quant_keyword(f->kind);
      out += " " + f->name;
      if (f->shape != Shape::None) {
        out += ":";
        out += shape_name(f->shape);
        if (f->rank >= 0) out += "[" + std::to_string(f->rank) + "]";
      }
      out += ". ";
      hrender(f->kids[0], out, true);
      return;
  }
}

}  // namespace

HFormula parse_hyper(const std::string& text) { return HParser(text).parse_all(); }

std::string render_hyper(const HFormula& f) {
  std::string out;
  hrender(f, out, true);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

thread_local HyperStats g_stats;

struct BitSeq {
  std::vector<uint8_t> stem, loop;
  bool operator<(const BitSeq& o) const { return std::tie(stem, loop) < std::tie(o.stem, o.loop); }
  bool at(std::size_t t) const {
    if (t < stem.size()) return stem[t];
    return loop[(t - stem.size()) % loop.size()];
  }
};

BitSeq canon_bits(BitSeq s) {
  const std::size_t n = s.loop.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = s.loop[i] == s.loop[i - d];
    if (ok) {
      s.loop.resize(d);
      break;
    }
  }
  while (!s.stem.empty() && s.stem.back() == s.loop.back()) {
    std::rotate(s.loop.begin(), s.loop.end() - 1, s.loop.end());
    s.stem.pop_back();
  }
  return s;
}

enum class SlotType { Trace, Uniform, NonUniform };

struct CNode {
  const HNode* src = nullptr;
  HKind kind = HKind::True;
  std::vector<int> kids;
  // Literals: exactly one source applies.
  int uslot = -1;      // uniform variable
  int nslot = -1;      // non-uniform variable (with tslot)
  int tslot = -1;      // trace variable
  int prop = -1;       // AP index (with tslot); -1 = absent proposition
  // Quantifiers.
  int slot = -1;
  int rank = 0;        // effective rank
  std::vector<int> free;  // sorted free slots
  bool solver_head = false;
};

struct SlotInfo {
  SlotType type;
  std::string name;
  int reach = 0;       // max X depth of occurrences
  bool unlimited = false;  // occurs under U/W
};

struct VecHash {
  std::size_t operator()(const std::vector<int32_t>& v) const {
    std::size_t h = v.size();
    for (int32_t x : v) h ^= std::size_t(uint32_t(x)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

class HyperEvaluator {
 public:
  HyperEvaluator(const Team& T, const TraceAssignment& pi, std::size_t i, const HFormula& phi,
                 const QuantBounds& b)
      : T_(T), i0_(i), bounds_(b) {
    n_ = T_.traces.size();
    if (n_ > 20) throw BoundsCapExceeded("team too large for hyper evaluation");
    if (n_ > 0) {
      Horizon h = horizon(T_.traces, 0);
      S_ = h.S;
      P_ = h.P;
    }
    // Pre-bound trace variables.
    std::vector<std::pair<std::string, int>> tscope;
    for (const auto& [v, idx] : pi) {
      if (idx >= n_) throw std::invalid_argument("trace assignment out of range");
      int s = new_slot(SlotType::Trace, v);
      tscope.push_back({v, s});
      preset_.push_back({s, int(idx)});
    }
    std::vector<std::pair<std::string, int>> pscope;
    root_ = compile(phi, tscope, pscope, 0, 0, false, 0);
    setup_bounds(phi);
  }

  bool run() {
    std::vector<int32_t> env(slots_.size(), -1);
    for (auto [s, v] : preset_) env[s] = v;
    return eval(root_, reduce(i0_), env);
  }

 private:
  int new_slot(SlotType t, const std::string& name) {
    slots_.push_back({t, name, 0, false});
    return int(slots_.size()) - 1;
  }

  static int lookup(const std::vector<std::pair<std::string, int>>& scope, const std::string& name) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == name) return it->second;
    return -1;
  }

  int compile(const HFormula& f, std::vector<std::pair<std::string, int>>& tscope,
              std::vector<std::pair<std::string, int>>& pscope, int xdepth, int levels, bool under_uw,
              int temporal) {
    holder_.push_back(f);
    CNode c;
    c.src = f.get();
    c.kind = f->kind;
    std::set<int> fr;
    switch (f->kind) {
      case HKind::True:
      case HKind::False:
        break;
      case HKind::Lit:
      case HKind::NegLit: {
        int ps = lookup(pscope, f->name);
        if (ps >= 0) {
          SlotInfo& si = slots_[ps];
          if (under_uw) si.unlimited = true;
          si.reach = std::max(si.reach, xdepth);
          if (si.type == SlotType::Uniform) {
            c.uslot = ps;
            fr.insert(ps);
            break;
          }
          if (f->var.empty())
            throw UnboundVariable("non-uniform variable '" + f->name + "' used without a trace variable");
          c.nslot = ps;
          fr.insert(ps);
        } else {
          if (f->var.empty()) throw UnboundVariable("unbound proposition variable '" + f->name + "'");
          c.prop = T_.prop_index(f->name);
        }
        int ts = lookup(tscope, f->var);
        if (ts < 0) throw UnboundVariable("unbound trace variable '" + f->var + "'");
        c.tslot = ts;
        fr.insert(ts);
        break;
      }
      case HKind::And:
      case HKind::Or:
        for (const auto& k : f->kids)
          c.kids.push_back(compile(k, tscope, pscope, xdepth, levels, under_uw, temporal));
        break;
      case HKind::Next:
        c.kids.push_back(compile(f->kids[0], tscope, pscope, xdepth + 1, levels, under_uw, temporal + 1));
        break;
      case HKind::Until:
      case HKind::WeakUntil:
        for (const auto& k : f->kids)
          c.kids.push_back(compile(k, tscope, pscope, xdepth, levels, true, temporal + 1));
        break;
      default: {
        if (temporal > 0) throw std::invalid_argument("quantifier under a temporal operator");
        const bool trace = f->kind == HKind::TraceForall || f->kind == HKind::TraceExists;
        const bool uniform = f->kind == HKind::UForall || f->kind == HKind::UExists;
        if (f->shape == Shape::Codes && uniform)
          throw std::invalid_argument("the codes shape applies to non-uniform quantifiers only");
        if (!uniform && !trace && f->shape != Shape::None && f->shape != Shape::Codes)
          throw std::invalid_argument("level shapes apply to uniform quantifiers only");
        int s = new_slot(trace ? SlotType::Trace : uniform ? SlotType::Uniform : SlotType::NonUniform, f->name);
        c.slot = s;
        const bool level = uniform && (f->shape == Shape::One || f->shape == Shape::AtMostOne ||
                                       f->shape == Shape::Interval);
        c.rank = f->rank >= 0 ? f->rank : levels;
        if (level) max_rank_ = std::max(max_rank_, c.rank);
        if (f->shape == Shape::Codes || f->shape == Shape::CodeLevel) uses_codes_ = true;
        auto& scope = trace ? tscope : pscope;
        scope.push_back({f->name, s});
        c.kids.push_back(compile(f->kids[0], tscope, pscope, xdepth, levels + (level ? 1 : 0), under_uw, temporal));
        scope.pop_back();
        break;
      }
    }
    for (int k : c.kids)
      for (int s : nodes_[std::size_t(k)].free) fr.insert(s);
    if (c.slot >= 0) fr.erase(c.slot);
    c.free.assign(fr.begin(), fr.end());
    nodes_.push_back(std::move(c));
    const int id = int(nodes_.size()) - 1;
    if (f->kind == HKind::UExists) mark_solver(id);
    return id;
  }

  void mark_solver(int id) {
    if (n_ > 6) return;
    int cur = id;
    while (nodes_[std::size_t(cur)].kind == HKind::UExists) cur = nodes_[std::size_t(cur)].kids[0];
    if (nodes_[std::size_t(cur)].kind != HKind::TraceForall) return;
    std::function<bool(int)> qfree = [&](int k) {
      const CNode& c = nodes_[std::size_t(k)];
      if (h_is_quantifier(c.kind)) return false;
      for (int x : c.kids)
        if (!qfree(x)) return false;
      return true;
    };
    if (!qfree(nodes_[std::size_t(cur)].kids[0])) return;
    nodes_[std::size_t(id)].solver_head = true;
  }

  void setup_bounds(const HFormula& phi) {
    std::function<int(const HFormula&)> tdepth = [&](const HFormula& f) {
      int d = 0;
      for (const auto& k : f->kids) d = std::max(d, tdepth(k));
      if (f->kind == HKind::Next || f->kind == HKind::Until || f->kind == HKind::WeakUntil) ++d;
      return d;
    };
    const std::size_t base = std::max(i0_, S_);
    stem_max_ = bounds_.stemMax ? *bounds_.stemMax : base + P_ * (1 + std::size_t(tdepth(phi)));
    loop_lcm_ = bounds_.loopLcm ? *bounds_.loopLcm : P_;
    if (loop_lcm_ == 0) throw std::invalid_argument("loopLcm must be positive");
    level_top_ = level_bound(i0_, max_rank_);
    Sj_ = std::max({S_, i0_ + 1, level_top_ + 1, stem_max_ + 1});
    for (const auto& s : slots_)
      if (s.type != SlotType::Trace && !s.unlimited) Sj_ = std::max(Sj_, i0_ + std::size_t(s.reach) + 1);
    if (uses_codes_) Sj_ = std::max(Sj_, i0_ + (std::size_t(1) << n_) + 1);
    Pj_ = std::lcm(P_, loop_lcm_);
    g_stats = HyperStats{};
    g_stats.level_bound = level_top_;
    g_stats.stem_max = stem_max_;
    g_stats.loop_lcm = loop_lcm_;
  }

  std::size_t level_bound(std::size_t t, int rank) const {
    std::size_t lb = std::max(t, S_) + P_ * std::size_t(rank) + 1 + bounds_.level_slack;
    if (bounds_.stemMax) lb = std::max(lb, *bounds_.stemMax);
    return lb;
  }

  std::size_t reduce(std::size_t t) const { return t < Sj_ ? t : Sj_ + (t - Sj_) % Pj_; }

  int intern_bits(BitSeq s) {
    s = canon_bits(std::move(s));
    auto it = bit_ids_.find(s);
    if (it != bit_ids_.end()) return it->second;
    bits_.push_back(s);
    int id = int(bits_.size()) - 1;
    bit_ids_.emplace(bits_.back(), id);
    return id;
  }

  int intern_labeling(const std::vector<int>& lab) {
    auto it = lab_ids_.find(lab);
    if (it != lab_ids_.end()) return it->second;
    labs_.push_back(lab);
    int id = int(labs_.size()) - 1;
    lab_ids_.emplace(lab, id);
    return id;
  }

  void check_cap(double size) const {
    if (size > double(bounds_.cap))
      throw BoundsCapExceeded("quantifier domain of size " + std::to_string(std::size_t(size)) +
                              " exceeds the cap " + std::to_string(bounds_.cap));
  }

  // Bit sequences a propositional variable ranges over when quantified at t.
  std::vector<int> bit_domain(const CNode& q, std::size_t t) {
    const SlotInfo& si = slots_[std::size_t(q.slot)];
    std::vector<int> out;
    auto level_seq = [&](std::size_t a) {
      BitSeq s;
      s.stem.assign(a + 1, 0);
      s.stem[a] = 1;
      s.loop = {0};
      return s;
    };
    const BitSeq zero{{}, {0}};
    switch (q.src->shape) {
      case Shape::One:
      case Shape::AtMostOne: {
        if (q.src->shape == Shape::AtMostOne) out.push_back(intern_bits(zero));
        const std::size_t lb = level_bound(t, q.rank);
        for (std::size_t a = t; a < lb; ++a) out.push_back(intern_bits(level_seq(a)));
        return out;
      }
      case Shape::CodeLevel: {
        for (std::size_t a = t; a < t + (std::size_t(1) << n_); ++a) out.push_back(intern_bits(level_seq(a)));
        return out;
      }
      case Shape::Interval: {
        const std::size_t lb = level_bound(t, q.rank);
        check_cap(double(lb - t) * double(lb - t + 1) / 2 + double(lb - t) + 1);
        out.push_back(intern_bits(zero));
        for (std::size_t a = t; a < lb; ++a) {
          for (std::size_t b = a + 1; b <= lb; ++b) {
            BitSeq s;
            s.stem.assign(b, 0);
            std::fill(s.stem.begin() + long(a), s.stem.end(), 1);
            s.loop = {0};
            out.push_back(intern_bits(s));
          }
          BitSeq s;
          s.stem.assign(a, 0);
          s.loop = {1};
          out.push_back(intern_bits(s));
        }
        return out;
      }
      default:
        break;
    }
    if (!si.unlimited) {
      const std::size_t m = std::size_t(si.reach) + 1;
      check_cap(std::ldexp(1.0, int(m)));
      for (uint64_t v = 0; v < (uint64_t(1) << m); ++v) {
        BitSeq s;
        s.stem.assign(t + m, 0);
        for (std::size_t j = 0; j < m; ++j) s.stem[t + j] = uint8_t(v >> j & 1);
        s.loop = {0};
        out.push_back(intern_bits(s));
      }
      return out;
    }
    const std::size_t sm = std::max(stem_max_, t);
    const std::size_t free_bits = sm - t + loop_lcm_;
    check_cap(std::ldexp(1.0, int(free_bits)));
    for (uint64_t v = 0; v < (uint64_t(1) << free_bits); ++v) {
      BitSeq s;
      s.stem.assign(sm, 0);
      for (std::size_t j = t; j < sm; ++j) s.stem[j] = uint8_t(v >> (j - t) & 1);
      for (std::size_t j = 0; j < loop_lcm_; ++j) s.loop.push_back(uint8_t(v >> (sm - t + j) & 1));
      out.push_back(intern_bits(s));
    }
    return out;
  }

  const std::vector<int>& domain(int node, std::size_t t) {
    auto key = std::make_pair(node, t);
    auto it = domains_.find(key);
    if (it != domains_.end()) return it->second;
    const CNode& q = nodes_[std::size_t(node)];
    std::vector<int> out;
    if (q.kind == HKind::UExists || q.kind == HKind::UForall) {
      out = bit_domain(q, t);
    } else if (q.src->shape == Shape::Codes) {
      // Position t + c codes the subteam full ^ c; later positions code the full team.
      const uint64_t full = (uint64_t(1) << n_) - 1;
      const std::size_t codes = std::size_t(1) << n_;
      std::vector<int> lab;
      for (std::size_t j = 0; j < n_; ++j) {
        BitSeq s;
        s.stem.assign(t + codes, 0);
        for (std::size_t c = 0; c < codes; ++c) s.stem[t + c] = uint8_t(((full ^ c) >> j) & 1);
        s.loop = {1};
        lab.push_back(intern_bits(s));
      }
      out.push_back(intern_labeling(lab));
    } else {
      auto base = bit_domain(q, t);
      check_cap(std::pow(double(base.size()), double(n_)));
      std::vector<int> lab(n_, 0);
      std::vector<std::size_t> idx(n_, 0);
      while (true) {
        for (std::size_t j = 0; j < n_; ++j) lab[j] = base[idx[j]];
        out.push_back(intern_labeling(lab));
        std::size_t j = 0;
        while (j < n_ && ++idx[j] == base.size()) idx[j++] = 0;
        if (j == n_) break;
      }
    }
    return domains_.emplace(key, std::move(out)).first->second;
  }

  void tick() {
    if (++g_stats.steps > bounds_.work_cap)
      throw BoundsCapExceeded("evaluation exceeded the work cap of " + std::to_string(bounds_.work_cap) + " steps");
  }

  std::vector<int32_t> make_key(const CNode& c, std::size_t t, const std::vector<int32_t>& env) const {
    std::vector<int32_t> key;
    key.reserve(c.free.size() + 1);
    key.push_back(int32_t(t));
    for (int s : c.free) key.push_back(env[std::size_t(s)]);
    return key;
  }

  bool literal(const CNode& c, std::size_t t, const std::vector<int32_t>& env) {
    bool v;
    if (c.uslot >= 0) {
      v = bits_[std::size_t(env[std::size_t(c.uslot)])].at(t);
    } else {
      const int32_t tr = env[std::size_t(c.tslot)];
      if (tr < 0) throw UnboundVariable("trace variable unassigned");
      if (c.nslot >= 0) {
        v = bits_[std::size_t(labs_[std::size_t(env[std::size_t(c.nslot)])][std::size_t(tr)])].at(t);
      } else {
        v = c.prop >= 0 && (letter_at(T_.traces[std::size_t(tr)], t) >> c.prop & 1);
      }
    }
    return c.kind == HKind::Lit ? v : !v;
  }

  bool eval(int id, std::size_t t, std::vector<int32_t>& env) {
    const CNode& c = nodes_[std::size_t(id)];
    switch (c.kind) {
      case HKind::True: return true;
      case HKind::False: return false;
      case HKind::Lit:
      case HKind::NegLit: return literal(c, t, env);
      default: break;
    }
    if (memo_.size() <= std::size_t(id)) memo_.resize(nodes_.size());
    auto key = make_key(c, t, env);
    auto& m = memo_[std::size_t(id)];
    auto it = m.find(key);
    if (it != m.end()) return it->second;
    tick();
    bool r = false;
    switch (c.kind) {
      case HKind::And:
        r = eval(c.kids[0], t, env) && eval(c.kids[1], t, env);
        break;
      case HKind::Or:
        r = eval(c.kids[0], t, env) || eval(c.kids[1], t, env);
        break;
      case HKind::Next:
        r = eval(c.kids[0], reduce(t + 1), env);
        break;
      case HKind::Until:
      case HKind::WeakUntil: {
        const std::size_t B = std::max(t, Sj_) + Pj_;
        bool found = false, always = true;
        for (std::size_t k = t; k < B; ++k) {
          const std::size_t kr = reduce(k);
          if (eval(c.kids[1], kr, env)) {
            found = true;
            break;
          }
          if (!eval(c.kids[0], kr, env)) {
            always = false;
            break;
          }
        }
        r = found || (c.kind == HKind::WeakUntil && always);
        break;
      }
      case HKind::TraceForall:
      case HKind::TraceExists: {
        const bool ex = c.kind == HKind::TraceExists;
        r = !ex;
        for (std::size_t j = 0; j < n_; ++j) {
          env[std::size_t(c.slot)] = int32_t(j);
          bool v = eval(c.kids[0], t, env);
          if (v == ex) {
            r = ex;
            break;
          }
        }
        env[std::size_t(c.slot)] = -1;
        break;
      }
      default: {
        if (c.solver_head) {
          g_stats.solver_used = true;
          r = solve_block(id, t, env);
          break;
        }
        const bool ex = c.kind == HKind::UExists || c.kind == HKind::PExists;
        r = !ex;
        const std::vector<int> dom = domain(id, t);
        for (int v : dom) {
          env[std::size_t(c.slot)] = v;
          bool b = eval(c.kids[0], t, env);
          if (b == ex) {
            r = ex;
            break;
          }
        }
        env[std::size_t(c.slot)] = -1;
        break;
      }
    }
    memo_[std::size_t(id)].emplace(std::move(key), r);
    return r;
  }

  // --- Subteam-set solver for blocks of uniform existentials followed by a
  // universal trace quantifier over a quantifier-free body. Each subformula
  // maps to the set of trace subsets it can be made to hold on.

  using SetOfSets = uint64_t;  // bit S set iff subset S is achievable

  static SetOfSets combine(SetOfSets a, SetOfSets b, bool conj) {
    SetOfSets r = 0;
    for (SetOfSets x = a; x; x &= x - 1) {
      const int s1 = __builtin_ctzll(x);
      for (SetOfSets y = b; y; y &= y - 1) {
        const int s2 = __builtin_ctzll(y);
        r |= SetOfSets(1) << (conj ? (s1 & s2) : (s1 | s2));
      }
    }
    return r;
  }

  bool solve_block(int head, std::size_t t, std::vector<int32_t>& env) {
    std::vector<int> vars;
    int cur = head;
    while (nodes_[std::size_t(cur)].kind == HKind::UExists) {
      vars.push_back(cur);
      cur = nodes_[std::size_t(cur)].kids[0];
    }
    const CNode& fa = nodes_[std::size_t(cur)];
    SolveCtx ctx;
    ctx.t = t;
    ctx.pi_slot = fa.slot;
    for (int q : vars) {
      const auto& dom = domain(q, t);
      if (dom.empty()) return false;
      ctx.domains[nodes_[std::size_t(q)].slot] = &dom;
    }
    const SetOfSets ach = solve(fa.kids[0], ctx, env);
    const uint64_t full = (uint64_t(1) << n_) - 1;
    return ach >> full & 1;
  }

  struct SolveCtx {
    std::size_t t = 0;
    int pi_slot = -1;
    std::map<int, const std::vector<int>*> domains;  // block slots
    std::unordered_map<std::vector<int32_t>, SetOfSets, VecHash> memo;
  };

  std::vector<int> open_vars(const CNode& c, const SolveCtx& ctx, const std::vector<int32_t>& env) const {
    std::vector<int> out;
    for (int s : c.free)
      if (ctx.domains.count(s) && env[std::size_t(s)] < 0) out.push_back(s);
    return out;
  }

  uint64_t trace_mask(int id, const SolveCtx& ctx, std::vector<int32_t>& env) {
    uint64_t m = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      env[std::size_t(ctx.pi_slot)] = int32_t(j);
      if (eval(id, ctx.t, env)) m |= uint64_t(1) << j;
    }
    env[std::size_t(ctx.pi_slot)] = -1;
    return m;
  }

  void flatten(int id, HKind kind, std::vector<int>& out) const {
    const CNode& c = nodes_[std::size_t(id)];
    if (c.kind == kind) {
      for (int k : c.kids) flatten(k, kind, out);
    } else {
      out.push_back(id);
    }
  }

  SetOfSets solve(int id, SolveCtx& ctx, std::vector<int32_t>& env) {
    const CNode& c = nodes_[std::size_t(id)];
    auto open = open_vars(c, ctx, env);
    if (open.empty()) return SetOfSets(1) << trace_mask(id, ctx, env);
    if (c.kind == HKind::And || c.kind == HKind::Or) {
      std::vector<int> kids;
      flatten(id, c.kind, kids);
      return solve_list(c.kind, kids, ctx, env);
    }
    // Leaf: enumerate its open variables.
    std::vector<int32_t> key{-2, int32_t(id)};
    for (int s : c.free)
      if (s != ctx.pi_slot) key.push_back(env[std::size_t(s)]);
    auto it = ctx.memo.find(key);
    if (it != ctx.memo.end()) return it->second;
    SetOfSets r = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == open.size()) {
        r |= SetOfSets(1) << trace_mask(id, ctx, env);
        return;
      }
      for (int v : *ctx.domains.at(open[k])) {
        env[std::size_t(open[k])] = v;
        rec(k + 1);
      }
      env[std::size_t(open[k])] = -1;
    };
    rec(0);
    ctx.memo.emplace(std::move(key), r);
    return r;
  }

  SetOfSets solve_list(HKind kind, const std::vector<int>& kids, SolveCtx& ctx, std::vector<int32_t>& env) {
    if (kids.size() == 1) return solve(kids[0], ctx, env);
    // Memo key: kind, children, values of their free slots.
    std::vector<int32_t> key{-1, int32_t(kind)};
    std::set<int> fs;
    for (int k : kids) {
      key.push_back(int32_t(k));
      for (int s : nodes_[std::size_t(k)].free)
        if (s != ctx.pi_slot) fs.insert(s);
    }
    key.push_back(-3);
    for (int s : fs) key.push_back(env[std::size_t(s)]);
    auto it = ctx.memo.find(key);
    if (it != ctx.memo.end()) return it->second;
    tick();

    // Connected components over shared open variables.
    std::vector<std::vector<int>> opens;
    for (int k : kids) opens.push_back(open_vars(nodes_[std::size_t(k)], ctx, env));
    std::vector<int> comp(kids.size());
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int x) { return comp[std::size_t(x)] == x ? x : comp[std::size_t(x)] = find(comp[std::size_t(x)]); };
    std::map<int, int> owner;
    for (std::size_t k = 0; k < kids.size(); ++k)
      for (int s : opens[k]) {
        auto o = owner.find(s);
        if (o == owner.end()) owner[s] = int(k);
        else comp[std::size_t(find(int(k)))] = find(o->second);
      }
    std::map<int, std::vector<int>> groups;
    for (std::size_t k = 0; k < kids.size(); ++k) groups[find(int(k))].push_back(kids[k]);

    const bool conj = kind == HKind::And;
    SetOfSets r;
    if (groups.size() > 1) {
      bool first = true;
      r = 0;
      for (auto& [g, members] : groups) {
        SetOfSets a = solve_list(kind, members, ctx, env);
        r = first ? a : combine(r, a, conj);
        first = false;
        if (r == 0) break;
      }
    } else {
      // Branch on the open variable shared by the most children.
      std::map<int, int> count;
      for (const auto& o : opens)
        for (int s : o) ++count[s];
      int best = -1, bc = -1;
      for (auto [s, k] : count)
        if (k > bc) {
          best = s;
          bc = k;
        }
      r = 0;
      for (int v : *ctx.domains.at(best)) {
        env[std::size_t(best)] = v;
        r |= solve_list(kind, kids, ctx, env);
      }
      env[std::size_t(best)] = -1;
    }
    ctx.memo.emplace(std::move(key), r);
    return r;
  }

  const Team& T_;
  std::size_t i0_;
  QuantBounds bounds_;
  std::size_t n_ = 0;
  std::size_t S_ = 0, P_ = 1;
  std::size_t Sj_ = 1, Pj_ = 1;
  std::size_t stem_max_ = 0, loop_lcm_ = 1, level_top_ = 0;
  int max_rank_ = 0;
  bool uses_codes_ = false;

  std::vector<HFormula> holder_;
  std::vector<CNode> nodes_;
  std::vector<SlotInfo> slots_;
  std::vector<std::pair<int, int>> preset_;
  int root_ = -1;

  std::vector<BitSeq> bits_;
  std::map<BitSeq, int> bit_ids_;
  std::vector<std::vector<int>> labs_;
  std::map<std::vector<int>, int> lab_ids_;
  std::map<std::pair<int, std::size_t>, std::vector<int>> domains_;
  std::vector<std::unordered_map<std::vector<int32_t>, bool, VecHash>> memo_;
};

}  // namespace

bool eval_hyper(const Team& T, const TraceAssignment& pi, std::size_t i, const HFormula& phi,
                const QuantBounds& bounds) {
  HyperEvaluator ev(T, pi, i, phi, bounds);
  return ev.run();
}

HyperStats last_hyper_stats() { return g_stats; }

}  // namespace teamltl
