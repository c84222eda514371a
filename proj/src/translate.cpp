// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamltl/translate.hpp"

#include <functional>
#include <map>
#include <set>

namespace teamltl {

namespace {

// Unit-simplifying connectives.
HFormula and2(const HFormula& a, const HFormula& b) {
  if (a->kind == HKind::True) return b;
  if (b->kind == HKind::True) return a;
  if (a->kind == HKind::False || b->kind == HKind::False) return h_false();
  return h_and(a, b);
}

HFormula or2(const HFormula& a, const HFormula& b) {
  if (a->kind == HKind::False) return b;
  if (b->kind == HKind::False) return a;
  if (a->kind == HKind::True || b->kind == HKind::True) return h_true();
  return h_or(a, b);
}

HFormula and_all(const std::vector<HFormula>& fs) {
  HFormula r = h_true();
  for (const auto& f : fs) r = and2(r, f);
  return r;
}

HFormula or_all(const std::vector<HFormula>& fs) {
  HFormula r = h_false();
  for (const auto& f : fs) r = or2(r, f);
  return r;
}

HFormula iff(const HFormula& a, const HFormula& b) { return h_iff(a, b); }

class Fresh {
 public:
  explicit Fresh(const Formula& phi) : taken_(props_of(phi)) {}
  std::string next(const std::string& prefix) {
    while (true) {
      std::string n = prefix + "__" + std::to_string(counters_[prefix]++);
      if (!taken_.count(n)) return n;
    }
  }

 private:
  std::set<std::string> taken_;
  std::map<std::string, int> counters_;
};

// ---------------------------------------------------------------------------
// k-coherent translation

class KCoherent {
 public:
  HFormula tr(const Formula& f, const std::vector<std::string>& phi) {
    switch (f->kind) {
      case Kind::True:
        return h_true();
      case Kind::False:
        return phi.empty() ? h_true() : h_false();
      case Kind::NE:
        return phi.empty() ? h_false() : h_true();
      case Kind::Prop:
      case Kind::NegProp: {
        std::vector<HFormula> cs;
        for (const auto& v : phi) cs.push_back(index_ltl(f, v));
        return and_all(cs);
      }
      case Kind::And:
        return and2(tr(f->kids[0], phi), tr(f->kids[1], phi));
      case Kind::Or: {
        // Covers phi = Phi0 u Phi1, digit 0: right only, 1: left only, 2: both.
        std::size_t covers = 1;
        for (std::size_t j = 0; j < phi.size(); ++j) covers *= 3;
        std::vector<HFormula> ds;
        for (std::size_t c = 0; c < covers; ++c) {
          std::vector<std::string> l, r;
          std::size_t x = c;
          for (const auto& v : phi) {
            const std::size_t d = x % 3;
            x /= 3;
            if (d != 0) l.push_back(v);
            if (d != 1) r.push_back(v);
          }
          ds.push_back(and2(tr(f->kids[0], l), tr(f->kids[1], r)));
        }
        return or_all(ds);
      }
      // Extension clauses below are not part of the published table.
      case Kind::BoolOr:
        return or2(tr(f->kids[0], phi), tr(f->kids[1], phi));
      case Kind::BoolNeg:
        return h_negate(tr(f->kids[0], phi));
      case Kind::Next:
        return h_next(tr(f->kids[0], phi));
      case Kind::Until:
        return h_until(tr(f->kids[0], phi), tr(f->kids[1], phi));
      case Kind::WeakUntil:
        return h_weakuntil(tr(f->kids[0], phi), tr(f->kids[1], phi));
      case Kind::FlatAll: {
        std::vector<HFormula> cs;
        for (const auto& v : phi) cs.push_back(tr(f->kids[0], {v}));
        return and_all(cs);
      }
      case Kind::SubteamAll: {
        std::vector<HFormula> cs;
        for (uint64_t m = 0; m < (uint64_t(1) << phi.size()); ++m) {
          std::vector<std::string> sub;
          for (std::size_t j = 0; j < phi.size(); ++j)
            if (m >> j & 1) sub.push_back(phi[j]);
          cs.push_back(tr(f->kids[0], sub));
        }
        return and_all(cs);
      }
      case Kind::Dep: {
        std::vector<HFormula> cs;
        for (std::size_t a = 0; a < phi.size(); ++a)
          for (std::size_t b = a + 1; b < phi.size(); ++b) {
            std::vector<HFormula> same;
            for (std::size_t j = 0; j < f->split; ++j)
              same.push_back(iff(index_ltl(f->kids[j], phi[a]), index_ltl(f->kids[j], phi[b])));
            const Formula& t = f->kids[f->split];
            cs.push_back(h_implies(and_all(same), iff(index_ltl(t, phi[a]), index_ltl(t, phi[b]))));
          }
        return and_all(cs);
      }
      case Kind::Inc: {
        const std::size_t n = f->split;
        std::vector<HFormula> cs;
        for (const auto& a : phi) {
          std::vector<HFormula> ds;
          for (const auto& b : phi) {
            std::vector<HFormula> eq;
            for (std::size_t j = 0; j < n; ++j)
              eq.push_back(iff(index_ltl(f->kids[j], a), index_ltl(f->kids[n + j], b)));
            ds.push_back(and_all(eq));
          }
          cs.push_back(or_all(ds));
        }
        return and_all(cs);
      }
      case Kind::GenAtom: {
        const auto& fam = *f->family;
        auto match = [&](const std::string& v, uint32_t tup) {
          std::vector<HFormula> cs;
          for (std::size_t j = 0; j < f->kids.size(); ++j) {
            HFormula x = index_ltl(f->kids[j], v);
            cs.push_back(tup >> j & 1 ? x : h_negate(x));
          }
          return and_all(cs);
        };
        std::vector<HFormula> ds;
        for (const auto& rel : fam.relations) {
          std::vector<HFormula> cs;
          for (const auto& v : phi) {
            std::vector<HFormula> in;
            for (uint32_t tup : rel) in.push_back(match(v, tup));
            cs.push_back(or_all(in));
          }
          for (uint32_t tup : rel) {
            std::vector<HFormula> some;
            for (const auto& v : phi) some.push_back(match(v, tup));
            cs.push_back(or_all(some));
          }
          ds.push_back(and_all(cs));
        }
        return or_all(ds);
      }
      case Kind::LeftOr:
        break;
    }
    throw FragmentMismatch("k-coherent translation: unsupported connective in " + render(f));
  }
};

// ---------------------------------------------------------------------------
// Left-flat translation

class LeftFlat {
 public:
  LeftFlat(const Formula& phi) : fresh_(phi), pi_("pi") {}

  struct Var {
    std::string name;
    Shape shape;
    int rank;
  };

  HFormula tr(const Formula& f, const std::string& r, int rank, bool atmost) {
    const HFormula R = h_lit(r);
    switch (f->kind) {
      case Kind::True:
        return h_true();
      case Kind::False:
        return h_globally(h_neglit(r));
      case Kind::Prop:
      case Kind::NegProp:
        return h_globally(h_implies(R, index_ltl(f, pi_)));
      case Kind::And:
        return and2(tr(f->kids[0], r, rank, atmost), tr(f->kids[1], r, rank, atmost));
      case Kind::Or:
        return or2(tr(f->kids[0], r, rank, atmost), tr(f->kids[1], r, rank, atmost));
      case Kind::BoolOr: {
        std::string d = fresh_.next("d");
        vars_.push_back({d, Shape::None, -1});
        return and2(h_implies(h_lit(d), tr(f->kids[0], r, rank, atmost)),
                    h_implies(h_neglit(d), tr(f->kids[1], r, rank, atmost)));
      }
      case Kind::Next: {
        std::string r1 = marker(rank + 1, atmost);
        return and2(h_globally(iff(R, h_next(h_lit(r1)))), tr(f->kids[0], r1, rank + 1, atmost));
      }
      case Kind::FlatAll:
        return h_globally(h_implies(R, index_ltl(eliminate_flat_nonclassical(f->kids[0]), pi_)));
      case Kind::Until:
      case Kind::WeakUntil: {
        const bool weak = f->kind == Kind::WeakUntil;
        std::string rphi = fresh_.next("r");
        vars_.push_back({rphi, Shape::Interval, rank + 1});
        std::string rpsi = marker(rank + 1, atmost || weak);
        HFormula once = h_and(h_lit(rpsi), h_next(h_globally(h_neglit(rpsi))));
        HFormula mark = weak ? h_weakuntil(h_lit(rphi), once) : h_until(h_lit(rphi), once);
        HFormula left = h_globally(h_implies(h_lit(rphi), index_ltl(flat_hat(f->kids[0]), pi_)));
        return and2(and2(h_globally(h_implies(R, mark)), left), tr(f->kids[1], rpsi, rank + 1, atmost || weak));
      }
      default:
        throw FragmentMismatch("left-flat translation: unsupported connective in " + render(f));
    }
  }

  std::string marker(int rank, bool atmost) {
    std::string r = fresh_.next("r");
    vars_.push_back({r, atmost ? Shape::AtMostOne : Shape::One, rank});
    return r;
  }

  Fresh fresh_;
  std::string pi_;
  std::vector<Var> vars_;
};

// ---------------------------------------------------------------------------
// Translation of TeamLTL(vv, NE, A1)

class Full {
 public:
  explicit Full(const Formula& phi) : fresh_(phi) {
    if (props_of(phi).count(qs_)) qs_ = fresh_.next(qs_);
  }

  HFormula in_sub(const std::string& q, const std::string& pi) {
    return h_eventually(h_and(h_lit(q), h_lit(qs_, pi)));
  }

  HFormula forall_in(const std::string& q, const std::function<HFormula(const std::string&)>& body) {
    std::string pi = fresh_.next("pi");
    return h_quant(HKind::TraceForall, pi, h_implies(in_sub(q, pi), body(pi)));
  }

  // r before-or-at r2, and r strictly before r2.
  static HFormula preceq(const std::string& r, const std::string& r2) {
    return h_globally(h_implies(h_lit(r), h_eventually(h_lit(r2))));
  }
  static HFormula prec(const std::string& r, const std::string& r2) {
    return h_globally(h_implies(h_lit(r), h_next(h_eventually(h_lit(r2)))));
  }

  HFormula tr(const Formula& f, const std::string& q, const std::string& r, int rank) {
    switch (f->kind) {
      case Kind::True:
        return h_true();
      case Kind::False: {
        std::string pi = fresh_.next("pi");
        return h_quant(HKind::TraceForall, pi, h_negate(in_sub(q, pi)));
      }
      case Kind::NE: {
        std::string pi = fresh_.next("pi");
        return h_quant(HKind::TraceExists, pi, in_sub(q, pi));
      }
      case Kind::Prop:
      case Kind::NegProp:
        return forall_in(q, [&](const std::string& pi) {
          return h_eventually(h_and(h_lit(r), index_ltl(f, pi)));
        });
      case Kind::FlatAll: {
        Formula star = eliminate_flat_nonclassical(f->kids[0]);
        return forall_in(q, [&](const std::string& pi) {
          return h_eventually(h_and(h_lit(r), index_ltl(star, pi)));
        });
      }
      case Kind::And:
        return h_and(tr(f->kids[0], q, r, rank), tr(f->kids[1], q, r, rank));
      case Kind::BoolOr:
        return h_or(tr(f->kids[0], q, r, rank), tr(f->kids[1], q, r, rank));
      case Kind::Next: {
        std::string r1 = fresh_.next("r");
        HFormula body = h_and(h_globally(iff(h_lit(r), h_next(h_lit(r1)))), tr(f->kids[0], q, r1, rank + 1));
        return h_quant(HKind::UExists, r1, body, Shape::One, rank + 1);
      }
      case Kind::Or: {
        std::string q1 = fresh_.next("q"), q2 = fresh_.next("q");
        std::string pi = fresh_.next("pi");
        HFormula cup = h_quant(
            HKind::TraceForall, pi,
            iff(in_sub(q, pi), h_eventually(h_and(h_or(h_lit(q1), h_lit(q2)), h_lit(qs_, pi)))));
        HFormula body = h_and(h_and(cup, tr(f->kids[0], q1, r, rank)), tr(f->kids[1], q2, r, rank));
        return h_quant(HKind::UExists, q1, h_quant(HKind::UExists, q2, body, Shape::CodeLevel),
                       Shape::CodeLevel);
      }
      case Kind::Until: {
        std::string r1 = fresh_.next("r"), r2 = fresh_.next("r");
        HFormula inner = h_quant(
            HKind::UForall, r2,
            h_implies(h_and(preceq(r, r2), prec(r2, r1)), tr(f->kids[0], q, r2, rank + 1)), Shape::One,
            rank + 1);
        HFormula body = h_and(h_and(preceq(r, r1), tr(f->kids[1], q, r1, rank + 1)), inner);
        return h_quant(HKind::UExists, r1, body, Shape::One, rank + 1);
      }
      case Kind::WeakUntil: {
        std::string r1 = fresh_.next("r"), r2 = fresh_.next("r");
        HFormula witness = h_quant(
            HKind::UExists, r2,
            h_and(h_and(preceq(r, r2), preceq(r2, r1)), tr(f->kids[1], q, r2, rank + 1)), Shape::One, rank + 1);
        HFormula body = h_implies(preceq(r, r1), h_or(tr(f->kids[0], q, r1, rank + 1), witness));
        return h_quant(HKind::UForall, r1, body, Shape::One, rank + 1);
      }
      default:
        throw FragmentMismatch("translation of TeamLTL(vv, NE, A1): unsupported connective in " + render(f));
    }
  }

  std::string qs_ = "qS";
  Fresh fresh_;
};

}  // namespace

HFormula index_ltl(const Formula& psi, const std::string& var) {
  switch (psi->kind) {
    case Kind::True: return h_true();
    case Kind::False: return h_false();
    case Kind::Prop: return h_lit(psi->name, var);
    case Kind::NegProp: return h_neglit(psi->name, var);
    case Kind::And: return h_and(index_ltl(psi->kids[0], var), index_ltl(psi->kids[1], var));
    case Kind::Or:
    case Kind::BoolOr: return h_or(index_ltl(psi->kids[0], var), index_ltl(psi->kids[1], var));
    case Kind::Next: return h_next(index_ltl(psi->kids[0], var));
    case Kind::Until: return h_until(index_ltl(psi->kids[0], var), index_ltl(psi->kids[1], var));
    case Kind::WeakUntil: return h_weakuntil(index_ltl(psi->kids[0], var), index_ltl(psi->kids[1], var));
    default: throw FragmentMismatch("not an LTL formula: " + render(psi));
  }
}

std::vector<std::string> kcoherent_vars(std::size_t k) {
  std::vector<std::string> vs;
  for (std::size_t j = 1; j <= k; ++j) vs.push_back("pi" + std::to_string(j));
  return vs;
}

HFormula kcoherent_body(const Formula& phi, const std::vector<std::string>& vars) {
  return KCoherent().tr(phi, vars);
}

HFormula kcoherent_translate(const Formula& phi, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k-coherent translation needs k >= 1");
  if (!classify_fragment(phi).kcoherent) throw FragmentMismatch("formula contains orl");
  auto vars = kcoherent_vars(k);
  HFormula f = kcoherent_body(phi, vars);
  for (std::size_t j = k; j-- > 0;) f = h_quant(HKind::TraceForall, vars[j], f);
  return f;
}

HFormula leftflat_translate(const Formula& phi) {
  auto info = classify_fragment(phi);
  if (!info.leftflat) throw FragmentMismatch("not left-flat: " + info.reason);
  LeftFlat lf(phi);
  std::string r = lf.fresh_.next("r");
  HFormula body = lf.tr(phi, r, 0, false);
  HFormula f = h_and(h_and(h_lit(r), h_next(h_globally(h_neglit(r)))), body);
  f = h_quant(HKind::TraceForall, lf.pi_, f);
  for (auto it = lf.vars_.rbegin(); it != lf.vars_.rend(); ++it)
    f = h_quant(HKind::UExists, it->name, f, it->shape, it->rank);
  return h_quant(HKind::UExists, r, f, Shape::One, 0);
}

HFormula full_translate(const Formula& phi) {
  if (!classify_fragment(phi).borneflat) throw FragmentMismatch("not in TeamLTL(vv, NE, A1)");
  Full t(phi);
  std::string q = t.fresh_.next("q"), r = t.fresh_.next("r");
  HFormula body = t.tr(phi, q, r, 0);
  std::string pi = t.fresh_.next("pi");
  HFormula aux = h_quant(HKind::TraceForall, pi, h_and(h_and(h_lit(t.qs_, pi), h_lit(q)), h_lit(r)));
  HFormula f = h_and(body, aux);
  f = h_quant(HKind::UExists, r, f, Shape::One, 0);
  f = h_quant(HKind::UExists, q, f, Shape::CodeLevel);
  return h_quant(HKind::PExists, t.qs_, f, Shape::Codes);
}

}  // namespace teamltl
