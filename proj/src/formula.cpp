// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamltl/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace teamltl {

// ---------------------------------------------------------------------------
// Relation families

BoolRelationFamily BoolRelationFamily::make(std::string name, int arity,
                                            std::vector<std::vector<uint32_t>> rels) {
  if (arity < 0 || arity > 16) throw std::invalid_argument("relation arity out of range");
  if (rels.empty()) throw std::invalid_argument("relation family must be nonempty");
  const uint32_t limit = uint32_t(1) << arity;
  for (auto& r : rels) {
    for (uint32_t t : r)
      if (t >= limit) throw std::invalid_argument("tuple exceeds arity");
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
  }
  std::sort(rels.begin(), rels.end());
  rels.erase(std::unique(rels.begin(), rels.end()), rels.end());
  BoolRelationFamily f;
  f.name = std::move(name);
  f.arity = arity;
  f.relations = std::move(rels);
  return f;
}

bool BoolRelationFamily::contains(const std::vector<uint32_t>& rel) const {
  return std::binary_search(relations.begin(), relations.end(), rel);
}

bool BoolRelationFamily::downward_closed() const {
  for (const auto& r : relations) {
    // Removing any single tuple must stay inside; this implies all subsets.
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::vector<uint32_t> s = r;
      s.erase(s.begin() + long(i));
      if (!contains(s)) return false;
    }
  }
  return true;
}

BoolRelationFamily parse_relation_family(const std::string& name, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int arity = -1;
  std::vector<std::vector<uint32_t>> rels;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string s;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) continue;
    if (s.front() != '{' || s.back() != '}')
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected {tuples}");
    std::string body = s.substr(1, s.size() - 2);
    std::vector<uint32_t> rel;
    std::size_t start = 0;
    while (!body.empty() && start <= body.size()) {
      auto comma = body.find(',', start);
      std::string tup = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (tup.empty()) throw std::invalid_argument("line " + std::to_string(lineno) + ": empty tuple");
      if (arity < 0) arity = int(tup.size());
      if (int(tup.size()) != arity)
        throw std::invalid_argument("line " + std::to_string(lineno) + ": inconsistent arity");
      uint32_t bits = 0;
      for (std::size_t j = 0; j < tup.size(); ++j) {
        if (tup[j] == '1') bits |= uint32_t(1) << j;
        else if (tup[j] != '0')
          throw std::invalid_argument("line " + std::to_string(lineno) + ": bad bit");
      }
      rel.push_back(bits);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rels.push_back(rel);
  }
  if (arity < 0) arity = 0;
  return BoolRelationFamily::make(name, arity, std::move(rels));
}

// ---------------------------------------------------------------------------
// Constructors

namespace {

Formula node(Kind k, std::vector<Formula> kids = {}, std::string name = {}) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->kids = std::move(kids);
  n->name = std::move(name);
  return n;
}

bool valid_ident(const std::string& s);

}  // namespace

Formula mk_true() {
  static const Formula t = node(Kind::True);
  return t;
}
Formula mk_false() {
  static const Formula f = node(Kind::False);
  return f;
}
Formula mk_prop(const std::string& p) { return node(Kind::Prop, {}, p); }
Formula mk_negprop(const std::string& p) { return node(Kind::NegProp, {}, p); }
Formula mk_and(Formula a, Formula b) { return node(Kind::And, {std::move(a), std::move(b)}); }
Formula mk_or(Formula a, Formula b) { return node(Kind::Or, {std::move(a), std::move(b)}); }
Formula mk_boolor(Formula a, Formula b) { return node(Kind::BoolOr, {std::move(a), std::move(b)}); }
Formula mk_boolneg(Formula a) { return node(Kind::BoolNeg, {std::move(a)}); }
Formula mk_next(Formula a) { return node(Kind::Next, {std::move(a)}); }
Formula mk_until(Formula a, Formula b) { return node(Kind::Until, {std::move(a), std::move(b)}); }
Formula mk_weakuntil(Formula a, Formula b) { return node(Kind::WeakUntil, {std::move(a), std::move(b)}); }
Formula mk_eventually(Formula a) { return mk_until(mk_true(), std::move(a)); }
Formula mk_globally(Formula a) { return mk_weakuntil(std::move(a), mk_false()); }
Formula mk_flatall(Formula a) { return node(Kind::FlatAll, {std::move(a)}); }
Formula mk_subteamall(Formula a) { return node(Kind::SubteamAll, {std::move(a)}); }
Formula mk_ne() {
  static const Formula n = node(Kind::NE);
  return n;
}
Formula mk_leftor(Formula a, Formula b) { return node(Kind::LeftOr, {std::move(a), std::move(b)}); }

Formula mk_dep(std::vector<Formula> args, Formula target) {
  for (const auto& a : args)
    if (!is_ltl(a)) throw std::invalid_argument("dep arguments must be LTL formulae");
  if (!is_ltl(target)) throw std::invalid_argument("dep arguments must be LTL formulae");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Dep;
  n->split = args.size();
  n->kids = std::move(args);
  n->kids.push_back(std::move(target));
  return n;
}

Formula mk_inc(std::vector<Formula> left, std::vector<Formula> right) {
  if (left.size() != right.size()) throw std::invalid_argument("inclusion atom tuples differ in length");
  for (const auto& a : left)
    if (!is_ltl(a)) throw std::invalid_argument("inc arguments must be LTL formulae");
  for (const auto& a : right)
    if (!is_ltl(a)) throw std::invalid_argument("inc arguments must be LTL formulae");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Inc;
  n->split = left.size();
  n->kids = std::move(left);
  for (auto& r : right) n->kids.push_back(std::move(r));
  return n;
}

Formula mk_genatom(FamilyPtr family, std::vector<Formula> args) {
  if (!family) throw std::invalid_argument("generalized atom without family");
  if (int(args.size()) != family->arity)
    throw std::invalid_argument("generalized atom " + family->name + " expects " +
                                std::to_string(family->arity) + " arguments");
  for (const auto& a : args)
    if (!is_ltl(a)) throw std::invalid_argument("generalized atom arguments must be LTL formulae");
  auto n = std::make_shared<Node>();
  n->kind = Kind::GenAtom;
  n->kids = std::move(args);
  n->split = n->kids.size();
  n->family = std::move(family);
  return n;
}

Formula mk_and_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return mk_true();
  Formula r = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) r = mk_and(r, fs[i]);
  return r;
}

Formula mk_or_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return mk_false();
  Formula r = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) r = mk_or(r, fs[i]);
  return r;
}

Formula mk_boolor_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return mk_false();
  Formula r = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) r = mk_boolor(r, fs[i]);
  return r;
}

bool is_eventually(const Formula& f) {
  return f->kind == Kind::Until && f->kids[0]->kind == Kind::True;
}
bool is_globally(const Formula& f) {
  return f->kind == Kind::WeakUntil && f->kids[1]->kind == Kind::False;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"X", "U", "W", "F", "G", "A", "A1", "NE", "vv",
                                          "orl", "dep", "inc", "gen", "true", "false"};
  return k;
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool valid_ident(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!ident_char(c)) return false;
  return keywords().count(s) == 0;
}

struct Token {
  enum Type { Ident, Sym, End } type;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Token::Ident, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    if (std::string("()[],;&|!~").find(c) != std::string::npos) {
      out.push_back({Token::Sym, std::string(1, c), i});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, const FamilyRegistry& fams) : toks_(tokenize(text)), fams_(fams) {}

  Formula parse_all() {
    Formula f = parse_orl();
    if (peek().type != Token::End) throw ParseError("unexpected token '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  bool is_kw(const char* kw) const { return peek().type == Token::Ident && peek().text == kw; }
  bool is_sym(const char* s) const { return peek().type == Token::Sym && peek().text == s; }
  void expect_sym(const char* s) {
    if (!is_sym(s)) throw ParseError(std::string("expected '") + s + "'", peek().pos);
    ++i_;
  }

  Formula parse_orl() {
    Formula f = parse_vv();
    while (is_kw("orl")) {
      ++i_;
      f = mk_leftor(f, parse_vv());
    }
    return f;
  }
  Formula parse_vv() {
    Formula f = parse_or();
    while (is_kw("vv")) {
      ++i_;
      f = mk_boolor(f, parse_or());
    }
    return f;
  }
  Formula parse_or() {
    Formula f = parse_and();
    while (is_sym("|")) {
      ++i_;
      f = mk_or(f, parse_and());
    }
    return f;
  }
  Formula parse_and() {
    Formula f = parse_uw();
    while (is_sym("&")) {
      ++i_;
      f = mk_and(f, parse_uw());
    }
    return f;
  }
  Formula parse_uw() {
    Formula f = parse_unary();
    if (is_kw("U")) {
      ++i_;
      return mk_until(f, parse_uw());
    }
    if (is_kw("W")) {
      ++i_;
      return mk_weakuntil(f, parse_uw());
    }
    return f;
  }
  Formula parse_unary() {
    const Token& t = peek();
    if (t.type == Token::Sym && t.text == "!") {
      ++i_;
      const Token& a = peek();
      if (a.type != Token::Ident || !valid_ident(a.text))
        throw ParseError("negation applied to non-atom", a.pos);
      ++i_;
      return mk_negprop(a.text);
    }
    if (t.type == Token::Sym && t.text == "~") {
      ++i_;
      return mk_boolneg(parse_unary());
    }
    if (t.type == Token::Ident) {
      if (t.text == "X") { ++i_; return mk_next(parse_unary()); }
      if (t.text == "F") { ++i_; return mk_eventually(parse_unary()); }
      if (t.text == "G") { ++i_; return mk_globally(parse_unary()); }
      if (t.text == "A1") { ++i_; return mk_flatall(parse_unary()); }
      if (t.text == "A") { ++i_; return mk_subteamall(parse_unary()); }
    }
    return parse_atom();
  }

  std::vector<Formula> parse_args(const char* stop, bool allow_empty) {
    std::vector<Formula> out;
    if (is_sym(stop) && allow_empty) return out;
    while (true) {
      std::size_t pos = peek().pos;
      Formula a = parse_orl();
      if (!is_ltl(a)) throw ParseError("atom arguments must be LTL formulae", pos);
      out.push_back(a);
      if (is_sym(",")) {
        ++i_;
        continue;
      }
      break;
    }
    return out;
  }

  Formula parse_atom() {
    const Token t = peek();
    if (t.type == Token::Sym && t.text == "(") {
      ++i_;
      Formula f = parse_orl();
      expect_sym(")");
      return f;
    }
    if (t.type != Token::Ident) throw ParseError("expected formula", t.pos);
    if (t.text == "true") { ++i_; return mk_true(); }
    if (t.text == "false") { ++i_; return mk_false(); }
    if (t.text == "NE") { ++i_; return mk_ne(); }
    if (t.text == "dep") {
      ++i_;
      expect_sym("(");
      auto args = parse_args(";", true);
      expect_sym(";");
      std::size_t pos = peek().pos;
      Formula target = parse_orl();
      if (!is_ltl(target)) throw ParseError("atom arguments must be LTL formulae", pos);
      expect_sym(")");
      return mk_dep(std::move(args), target);
    }
    if (t.text == "inc") {
      ++i_;
      expect_sym("(");
      auto left = parse_args(";", false);
      expect_sym(";");
      auto right = parse_args(")", false);
      if (left.size() != right.size()) throw ParseError("inclusion atom tuples differ in length", t.pos);
      expect_sym(")");
      return mk_inc(std::move(left), std::move(right));
    }
    if (t.text == "gen") {
      ++i_;
      expect_sym("[");
      const Token nm = peek();
      if (nm.type != Token::Ident) throw ParseError("expected relation family name", nm.pos);
      ++i_;
      expect_sym("]");
      auto it = fams_.find(nm.text);
      if (it == fams_.end()) throw ParseError("unknown relation family '" + nm.text + "'", nm.pos);
      expect_sym("(");
      auto args = parse_args(")", true);
      expect_sym(")");
      if (int(args.size()) != it->second->arity)
        throw ParseError("wrong number of arguments for gen[" + nm.text + "]", nm.pos);
      return mk_genatom(it->second, std::move(args));
    }
    if (!valid_ident(t.text)) throw ParseError("unexpected keyword '" + t.text + "'", t.pos);
    ++i_;
    return mk_prop(t.text);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  const FamilyRegistry& fams_;
};

void render_to(const Formula& f, std::string& out);

void render_list(const std::vector<Formula>& fs, std::size_t from, std::size_t to, std::string& out) {
  for (std::size_t i = from; i < to; ++i) {
    if (i > from) out += ",";
    render_to(fs[i], out);
  }
}

void render_bin(const Formula& f, const char* op, std::string& out) {
  out += "(";
  render_to(f->kids[0], out);
  out += " ";
  out += op;
  out += " ";
  render_to(f->kids[1], out);
  out += ")";
}

void render_to(const Formula& f, std::string& out) {
  switch (f->kind) {
    case Kind::True: out += "true"; return;
    case Kind::False: out += "false"; return;
    case Kind::Prop: out += f->name; return;
    case Kind::NegProp: out += "!" + f->name; return;
    case Kind::And: render_bin(f, "&", out); return;
    case Kind::Or: render_bin(f, "|", out); return;
    case Kind::BoolOr: render_bin(f, "vv", out); return;
    case Kind::LeftOr: render_bin(f, "orl", out); return;
    case Kind::BoolNeg: out += "~"; render_to(f->kids[0], out); return;
    case Kind::Next: out += "X "; render_to(f->kids[0], out); return;
    case Kind::FlatAll: out += "A1 "; render_to(f->kids[0], out); return;
    case Kind::SubteamAll: out += "A "; render_to(f->kids[0], out); return;
    case Kind::NE: out += "NE"; return;
    case Kind::Until:
      if (is_eventually(f)) {
        out += "F ";
        render_to(f->kids[1], out);
      } else {
        render_bin(f, "U", out);
      }
      return;
    case Kind::WeakUntil:
      if (is_globally(f)) {
        out += "G ";
        render_to(f->kids[0], out);
      } else {
        render_bin(f, "W", out);
      }
      return;
    case Kind::Dep:
      out += "dep(";
      render_list(f->kids, 0, f->split, out);
      out += ";";
      render_to(f->kids.back(), out);
      out += ")";
      return;
    case Kind::Inc:
      out += "inc(";
      render_list(f->kids, 0, f->split, out);
      out += ";";
      render_list(f->kids, f->split, f->kids.size(), out);
      out += ")";
      return;
    case Kind::GenAtom:
      out += "gen[" + f->family->name + "](";
      render_list(f->kids, 0, f->kids.size(), out);
      out += ")";
      return;
  }
}

}  // namespace

Formula parse_team_formula(const std::string& text, const FamilyRegistry& families) {
  Parser p(text, families);
  return p.parse_all();
}

std::string render(const Formula& f) {
  std::string out;
  render_to(f, out);
  return out;
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name || a->split != b->split ||
      a->kids.size() != b->kids.size())
    return false;
  if (a->kind == Kind::GenAtom) {
    if (a->family->name != b->family->name || a->family->arity != b->family->arity ||
        a->family->relations != b->family->relations)
      return false;
  }
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!structurally_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Measures

std::size_t formula_size(const Formula& f) {
  std::size_t n = 1;
  for (const auto& k : f->kids) n += formula_size(k);
  return n;
}

int temporal_depth(const Formula& f) {
  int d = 0;
  for (const auto& k : f->kids) d = std::max(d, temporal_depth(k));
  if (f->kind == Kind::Next || f->kind == Kind::Until || f->kind == Kind::WeakUntil) ++d;
  return d;
}

int formula_depth(const Formula& f) {
  int d = 0;
  for (const auto& k : f->kids) d = std::max(d, 1 + formula_depth(k));
  return d;
}

std::set<std::string> props_of(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (g->kind == Kind::Prop || g->kind == Kind::NegProp) out.insert(g->name);
    for (const auto& k : g->kids) go(k);
  };
  go(f);
  return out;
}

std::size_t count_kind(const Formula& f, Kind k) {
  std::size_t n = f->kind == k ? 1 : 0;
  for (const auto& c : f->kids) n += count_kind(c, k);
  return n;
}

// ---------------------------------------------------------------------------
// LTL helpers

bool is_ltl(const Formula& f) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
    case Kind::Prop:
    case Kind::NegProp:
      return true;
    case Kind::And:
    case Kind::Or:
    case Kind::Next:
    case Kind::Until:
    case Kind::WeakUntil:
      for (const auto& k : f->kids)
        if (!is_ltl(k)) return false;
      return true;
    default:
      return false;
  }
}

Formula ltl_negate(const Formula& f) {
  switch (f->kind) {
    case Kind::True: return mk_false();
    case Kind::False: return mk_true();
    case Kind::Prop: return mk_negprop(f->name);
    case Kind::NegProp: return mk_prop(f->name);
    case Kind::And: return mk_or(ltl_negate(f->kids[0]), ltl_negate(f->kids[1]));
    case Kind::Or: return mk_and(ltl_negate(f->kids[0]), ltl_negate(f->kids[1]));
    case Kind::Next: return mk_next(ltl_negate(f->kids[0]));
    case Kind::Until: {
      if (is_eventually(f)) return mk_globally(ltl_negate(f->kids[1]));
      Formula na = ltl_negate(f->kids[0]);
      Formula nb = ltl_negate(f->kids[1]);
      return mk_weakuntil(nb, mk_and(na, nb));
    }
    case Kind::WeakUntil: {
      if (is_globally(f)) return mk_eventually(ltl_negate(f->kids[0]));
      Formula na = ltl_negate(f->kids[0]);
      Formula nb = ltl_negate(f->kids[1]);
      return mk_until(nb, mk_and(na, nb));
    }
    default:
      throw std::invalid_argument("ltl_negate: not an LTL formula: " + render(f));
  }
}

Formula ltl_iff(const Formula& a, const Formula& b) {
  return mk_or(mk_and(a, b), mk_and(ltl_negate(a), ltl_negate(b)));
}

Formula boolor_to_or(const Formula& f) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
    case Kind::Prop:
    case Kind::NegProp:
      return f;
    case Kind::BoolOr:
    case Kind::Or: return mk_or(boolor_to_or(f->kids[0]), boolor_to_or(f->kids[1]));
    case Kind::And: return mk_and(boolor_to_or(f->kids[0]), boolor_to_or(f->kids[1]));
    case Kind::Next: return mk_next(boolor_to_or(f->kids[0]));
    case Kind::Until: return mk_until(boolor_to_or(f->kids[0]), boolor_to_or(f->kids[1]));
    case Kind::WeakUntil: return mk_weakuntil(boolor_to_or(f->kids[0]), boolor_to_or(f->kids[1]));
    default:
      throw UnsupportedNode("boolor_to_or: unsupported node in " + render(f));
  }
}

// ---------------------------------------------------------------------------
// Generalized atoms

namespace {

constexpr std::size_t kMaxRecastRelations = 1u << 12;

FamilyPtr dep_family(std::size_t n) {
  if (n > 3) throw std::invalid_argument("dep recast supports at most 3 arguments");
  // Tuple bits 0..n-1 are the arguments, bit n the target. For each argument
  // pattern the target is absent, 0, or 1.
  const std::size_t prefixes = std::size_t(1) << n;
  std::size_t count = 1;
  for (std::size_t i = 0; i < prefixes; ++i) count *= 3;
  if (count > kMaxRecastRelations) throw std::invalid_argument("dep recast too large");
  std::vector<std::vector<uint32_t>> rels;
  for (std::size_t code = 0; code < count; ++code) {
    std::vector<uint32_t> rel;
    std::size_t c = code;
    for (std::size_t x = 0; x < prefixes; ++x) {
      std::size_t choice = c % 3;
      c /= 3;
      if (choice == 1) rel.push_back(uint32_t(x));
      if (choice == 2) rel.push_back(uint32_t(x | (std::size_t(1) << n)));
    }
    rels.push_back(rel);
  }
  return std::make_shared<const BoolRelationFamily>(
      BoolRelationFamily::make("dep" + std::to_string(n), int(n + 1), std::move(rels)));
}

FamilyPtr inc_family(std::size_t n) {
  const std::size_t tuples = std::size_t(1) << (2 * n);
  if (tuples > 12) {
    // 2^(4^n) candidate relations; only n <= 1 is tractable.
    throw std::invalid_argument("inc recast supports tuples of length at most 1");
  }
  const uint32_t lowmask = (uint32_t(1) << n) - 1;
  std::vector<std::vector<uint32_t>> rels;
  for (std::size_t code = 0; code < (std::size_t(1) << tuples); ++code) {
    std::vector<uint32_t> rel;
    std::set<uint32_t> left, right;
    for (std::size_t t = 0; t < tuples; ++t) {
      if (code >> t & 1) {
        rel.push_back(uint32_t(t));
        left.insert(uint32_t(t) & lowmask);
        right.insert(uint32_t(t) >> n);
      }
    }
    if (std::includes(right.begin(), right.end(), left.begin(), left.end())) rels.push_back(rel);
  }
  return std::make_shared<const BoolRelationFamily>(
      BoolRelationFamily::make("inc" + std::to_string(n), int(2 * n), std::move(rels)));
}

Formula expand_genatom(const BoolRelationFamily& fam, const std::vector<Formula>& args) {
  const bool dc = fam.downward_closed();
  std::vector<Formula> pos, neg;
  for (const auto& a : args) {
    pos.push_back(a);
    neg.push_back(ltl_negate(a));
  }
  std::vector<Formula> alts;
  for (const auto& rel : fam.relations) {
    std::vector<Formula> parts;
    for (uint32_t b : rel) {
      std::vector<Formula> lits;
      for (std::size_t j = 0; j < args.size(); ++j) lits.push_back((b >> j & 1) ? pos[j] : neg[j]);
      Formula part = mk_flatall(mk_and_all(lits));
      if (!dc) part = mk_and(part, mk_ne());
      parts.push_back(part);
    }
    alts.push_back(mk_or_all(parts));
  }
  return mk_boolor_all(alts);
}

}  // namespace

Formula dep_as_genatom(const Formula& dep) {
  if (dep->kind != Kind::Dep) throw std::invalid_argument("dep_as_genatom: not a dependence atom");
  return mk_genatom(dep_family(dep->split), dep->kids);
}

Formula inc_as_genatom(const Formula& inc) {
  if (inc->kind != Kind::Inc) throw std::invalid_argument("inc_as_genatom: not an inclusion atom");
  return mk_genatom(inc_family(inc->split), inc->kids);
}

Formula eliminate_generalized_atoms(const Formula& f) {
  switch (f->kind) {
    case Kind::Dep: {
      Formula g = dep_as_genatom(f);
      return expand_genatom(*g->family, g->kids);
    }
    case Kind::Inc: {
      Formula g = inc_as_genatom(f);
      return expand_genatom(*g->family, g->kids);
    }
    case Kind::GenAtom:
      return expand_genatom(*f->family, f->kids);
    default:
      break;
  }
  if (f->kids.empty()) return f;
  auto n = std::make_shared<Node>(*f);
  for (auto& k : n->kids) k = eliminate_generalized_atoms(k);
  return n;
}

// ---------------------------------------------------------------------------
// Elimination of Boolean disjunction and NE below a flattening quantifier

namespace {

struct NePair {
  bool ne;
  Formula ltl;
};

NePair flat_elim(const Formula& f) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
    case Kind::Prop:
    case Kind::NegProp:
      return {false, f};
    case Kind::NE:
      return {true, mk_true()};
    case Kind::FlatAll:
      return {false, flat_elim(f->kids[0]).ltl};
    case Kind::And: {
      NePair a = flat_elim(f->kids[0]), b = flat_elim(f->kids[1]);
      if (a.ltl->kind == Kind::True) return {a.ne || b.ne, b.ltl};
      if (b.ltl->kind == Kind::True) return {a.ne || b.ne, a.ltl};
      return {a.ne || b.ne, mk_and(a.ltl, b.ltl)};
    }
    case Kind::Or: {
      NePair a = flat_elim(f->kids[0]), b = flat_elim(f->kids[1]);
      if (a.ne && b.ne) return {true, mk_and(a.ltl, b.ltl)};
      if (a.ne) return {true, a.ltl};
      if (b.ne) return {true, b.ltl};
      return {false, mk_or(a.ltl, b.ltl)};
    }
    case Kind::BoolOr: {
      NePair a = flat_elim(f->kids[0]), b = flat_elim(f->kids[1]);
      return {a.ne && b.ne, mk_or(a.ltl, b.ltl)};
    }
    case Kind::Next: {
      NePair a = flat_elim(f->kids[0]);
      return {a.ne, mk_next(a.ltl)};
    }
    case Kind::Until: {
      NePair a = flat_elim(f->kids[0]), b = flat_elim(f->kids[1]);
      return {b.ne, mk_until(a.ltl, b.ltl)};
    }
    case Kind::WeakUntil: {
      NePair a = flat_elim(f->kids[0]), b = flat_elim(f->kids[1]);
      return {a.ne && b.ne, mk_weakuntil(a.ltl, b.ltl)};
    }
    default:
      throw UnsupportedNode("eliminate_flat_nonclassical: unsupported node in " + render(f));
  }
}

}  // namespace

Formula eliminate_flat_nonclassical(const Formula& f) { return flat_elim(f).ltl; }

bool is_syntactically_flat(const Formula& f) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
    case Kind::Prop:
    case Kind::NegProp:
      return true;
    case Kind::FlatAll:
      try {
        flat_elim(f->kids[0]);
        return true;
      } catch (const UnsupportedNode&) {
        return false;
      }
    case Kind::And:
    case Kind::Or:
      return is_syntactically_flat(f->kids[0]) && is_syntactically_flat(f->kids[1]);
    case Kind::Next:
      return is_syntactically_flat(f->kids[0]);
    default:
      return false;
  }
}

Formula flat_hat(const Formula& f) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
    case Kind::Prop:
    case Kind::NegProp:
      return f;
    case Kind::FlatAll: return eliminate_flat_nonclassical(f->kids[0]);
    case Kind::And: return mk_and(flat_hat(f->kids[0]), flat_hat(f->kids[1]));
    case Kind::Or: return mk_or(flat_hat(f->kids[0]), flat_hat(f->kids[1]));
    case Kind::Next: return mk_next(flat_hat(f->kids[0]));
    default:
      throw UnsupportedNode("flat_hat: not syntactically flat: " + render(f));
  }
}

// ---------------------------------------------------------------------------
// Fragments

namespace {

bool flat_operand_ok(const Formula& f) {
  try {
    flat_elim(f);
    return true;
  } catch (const UnsupportedNode&) {
    return false;
  }
}

bool check_plain(const Formula& f) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
    case Kind::Prop:
    case Kind::NegProp:
      return true;
    case Kind::And:
    case Kind::Or:
    case Kind::Next:
    case Kind::Until:
    case Kind::WeakUntil:
      for (const auto& k : f->kids)
        if (!check_plain(k)) return false;
      return true;
    default:
      return false;
  }
}

bool check_leftflat(const Formula& f, std::string& why) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
    case Kind::Prop:
    case Kind::NegProp:
      return true;
    case Kind::FlatAll:
      if (!flat_operand_ok(f->kids[0])) {
        why = "unsupported operand of A1";
        return false;
      }
      return true;
    case Kind::And:
    case Kind::Or:
    case Kind::BoolOr:
    case Kind::Next:
      for (const auto& k : f->kids)
        if (!check_leftflat(k, why)) return false;
      return true;
    case Kind::Until:
    case Kind::WeakUntil:
      if (!is_syntactically_flat(f->kids[0])) {
        why = "left operand of U/W is not flat: " + render(f->kids[0]);
        return false;
      }
      return check_leftflat(f->kids[1], why);
    default:
      why = "connective outside TeamLTL(vv, A1)";
      return false;
  }
}

bool check_borne(const Formula& f) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
    case Kind::Prop:
    case Kind::NegProp:
    case Kind::NE:
      return true;
    case Kind::FlatAll:
      return flat_operand_ok(f->kids[0]);
    case Kind::And:
    case Kind::Or:
    case Kind::BoolOr:
    case Kind::Next:
    case Kind::Until:
    case Kind::WeakUntil:
      for (const auto& k : f->kids)
        if (!check_borne(k)) return false;
      return true;
    default:
      return false;
  }
}

bool check_kcoherent(const Formula& f) {
  if (f->kind == Kind::LeftOr) return false;
  for (const auto& k : f->kids)
    if (!check_kcoherent(k)) return false;
  return true;
}

bool check_downward(const Formula& f) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
    case Kind::Prop:
    case Kind::NegProp:
    case Kind::Dep:
    case Kind::FlatAll:
    case Kind::SubteamAll:
      return true;
    case Kind::GenAtom:
      return f->family->downward_closed();
    case Kind::And:
    case Kind::Or:
    case Kind::BoolOr:
    case Kind::Next:
    case Kind::Until:
    case Kind::WeakUntil:
      for (const auto& k : f->kids)
        if (!check_downward(k)) return false;
      return true;
    default:
      return false;
  }
}

}  // namespace

FragmentInfo classify_fragment(const Formula& f) {
  FragmentInfo info;
  info.plain = check_plain(f);
  std::string why;
  info.leftflat = check_leftflat(f, why);
  info.borneflat = check_borne(f);
  info.kcoherent = check_kcoherent(f);
  info.downward_closed = check_downward(f);
  if (!info.kcoherent) info.reason = "contains orl";
  else if (!info.leftflat) info.reason = why;
  return info;
}

FragmentInfo::Primary FragmentInfo::primary() const {
  if (plain) return Primary::PlainTeamLTL;
  if (leftflat) return Primary::LeftFlat;
  if (borneflat) return Primary::GeneralBorNEFlat;
  if (kcoherent) return Primary::KCoherentEligible;
  return Primary::Unsupported;
}

const char* fragment_name(FragmentInfo::Primary p) {
  switch (p) {
    case FragmentInfo::Primary::PlainTeamLTL: return "PlainTeamLTL";
    case FragmentInfo::Primary::LeftFlat: return "LeftFlat";
    case FragmentInfo::Primary::GeneralBorNEFlat: return "GeneralBorNEFlat";
    case FragmentInfo::Primary::KCoherentEligible: return "KCoherentEligible";
    case FragmentInfo::Primary::Unsupported: return "Unsupported";
  }
  return "Unsupported";
}

}  // namespace teamltl
