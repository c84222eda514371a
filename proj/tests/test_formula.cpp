// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "grid.hpp"
#include "teamltl/formula.hpp"
#include "teamltl/team_eval.hpp"

using namespace teamltl;

namespace {

// Truth-table equivalence over every team built from the lassos with stem <= 1,
// loop <= 2 over {p} (team sizes <= 3).
bool equivalent_on_small_teams(const Formula& a, const Formula& b) {
  auto pool = testing::all_lassos(1, 1, 2);
  for (const auto& ts : testing::all_subsets(pool, 3)) {
    Team T = make_team({"p"}, ts);
    if (eval(T, a) != eval(T, b)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("parse examples") {
  Formula f = parse_team_formula("G (a vv !a)");
  REQUIRE(is_globally(f));
  CHECK(f->kids[0]->kind == Kind::BoolOr);
  CHECK(f->kids[0]->kids[1]->kind == Kind::NegProp);

  CHECK(parse_team_formula("p")->kind == Kind::Prop);

  Formula inc = parse_team_formula("inc(o1,s ; o1, !s)");
  REQUIRE(inc->kind == Kind::Inc);
  CHECK(inc->split == 2);
  CHECK(inc->kids.size() == 4);
}

TEST_CASE("render examples") {
  CHECK(render(mk_prop("p")) == "p");
  CHECK(render(mk_eventually(mk_prop("p"))) == "F p");
  CHECK(render(mk_dep({mk_prop("a"), mk_prop("b")}, mk_prop("c"))) == "dep(a,b;c)");
}

TEST_CASE("precedence") {
  CHECK(render(parse_team_formula("a & b | c vv d orl e")) == "((((a & b) | c) vv d) orl e)");
  CHECK(render(parse_team_formula("a U b U c")) == "(a U (b U c))");
  CHECK(render(parse_team_formula("X a U b & c")) == "((X a U b) & c)");
  CHECK(render(parse_team_formula("~A1 F !q W r")) == "(~A1 F !q W r)");
}

TEST_CASE("round trip of hand-written formulas") {
  FamilyRegistry reg;
  reg["R"] = std::make_shared<const BoolRelationFamily>(parse_relation_family("R", "{}\n{01,11}\n"));
  for (const char* s : {"dep(;p)", "inc(a;b)", "A (p orl ~NE)", "gen[R](a, X b)", "G F 0", "(true U false) W true",
                        "A1 (p vv q) | NE"}) {
    Formula f = parse_team_formula(s, reg);
    Formula g = parse_team_formula(render(f), reg);
    CHECK_MESSAGE(structurally_equal(f, g), s);
  }
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_team_formula("!(a & b)"), ParseError);
  CHECK_THROWS_AS(parse_team_formula("a &"), ParseError);
  CHECK_THROWS_AS(parse_team_formula("dep(a vv b; c)"), ParseError);
  CHECK_THROWS_AS(parse_team_formula("inc(a,b;c)"), ParseError);
  CHECK_THROWS_AS(parse_team_formula("gen[Q](a)"), ParseError);
  try {
    parse_team_formula("a & $");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("relation family file") {
  auto f = parse_relation_family("R", "# comment\n{01, 11}\n{}\n");
  CHECK(f.arity == 2);
  CHECK(f.relations.size() == 2);
  // "01" is b1=0, b2=1.
  CHECK(f.contains({2, 3}));
  CHECK_FALSE(f.downward_closed());
  CHECK_THROWS(parse_relation_family("R", "{01,1}"));
}

TEST_CASE("generalized atom with G = {{}, {1}}") {
  auto fam = std::make_shared<const BoolRelationFamily>(BoolRelationFamily::make("G", 1, {{}, {1}}));
  Formula g = mk_genatom(fam, {mk_prop("p")});
  Formula e = eliminate_generalized_atoms(g);
  REQUIRE(e->kind == Kind::BoolOr);
  // The {1} disjunct is A1 p.
  CHECK(render(e->kids[1]) == "A1 p");
  CHECK(count_kind(e, Kind::NE) == 0);
  CHECK(equivalent_on_small_teams(g, e));
}

TEST_CASE("constancy atom eliminates to a constancy formula") {
  Formula d = parse_team_formula("dep(;p)");
  Formula e = eliminate_generalized_atoms(d);
  CHECK(count_kind(e, Kind::Dep) == 0);
  CHECK(count_kind(e, Kind::GenAtom) == 0);
  CHECK(equivalent_on_small_teams(d, e));
  CHECK(equivalent_on_small_teams(e, parse_team_formula("A1 p vv A1 !p")));
}

TEST_CASE("full relation family is trivially satisfied") {
  auto fam = std::make_shared<const BoolRelationFamily>(BoolRelationFamily::make("All", 1, {{}, {0}, {1}, {0, 1}}));
  Formula e = eliminate_generalized_atoms(mk_genatom(fam, {mk_prop("p")}));
  CHECK(equivalent_on_small_teams(e, mk_true()));
}

TEST_CASE("inclusion atom recast") {
  Formula i = parse_team_formula("inc(p;X p)");
  Formula e = eliminate_generalized_atoms(i);
  CHECK(count_kind(e, Kind::Inc) == 0);
  CHECK(count_kind(e, Kind::NE) > 0);
  CHECK(equivalent_on_small_teams(i, e));
}

TEST_CASE("flat elimination") {
  CHECK(render(eliminate_flat_nonclassical(parse_team_formula("(NE & a) vv b"))) == "(a | b)");
  CHECK(render(eliminate_flat_nonclassical(parse_team_formula("a vv X b"))) == "(a | X b)");
  CHECK(render(eliminate_flat_nonclassical(parse_team_formula("X (NE & a)"))) == "X a");
  CHECK_THROWS_AS(eliminate_flat_nonclassical(parse_team_formula("dep(;a)")), UnsupportedNode);
  Formula f = parse_team_formula("(NE & a) | b vv (NE W c)");
  CHECK(equivalent_on_small_teams(mk_flatall(f), mk_flatall(eliminate_flat_nonclassical(f))));
}

TEST_CASE("classify") {
  auto lf = classify_fragment(eliminate_generalized_atoms(parse_team_formula("F dep(a;b) | F dep(c;d)")));
  CHECK(lf.leftflat);
  CHECK(lf.primary() == FragmentInfo::Primary::LeftFlat);
  CHECK_FALSE(classify_fragment(parse_team_formula("(F p) U q")).leftflat);
  auto pq = classify_fragment(parse_team_formula("p U q"));
  CHECK(pq.leftflat);
  CHECK(pq.primary() == FragmentInfo::Primary::PlainTeamLTL);
  CHECK(classify_fragment(parse_team_formula("NE vv A1 (p vv NE)")).primary() ==
        FragmentInfo::Primary::GeneralBorNEFlat);
  CHECK(classify_fragment(parse_team_formula("~dep(;p)")).primary() ==
        FragmentInfo::Primary::KCoherentEligible);
  CHECK(classify_fragment(parse_team_formula("p orl q")).primary() == FragmentInfo::Primary::Unsupported);
  CHECK(classify_fragment(parse_team_formula("A dep(a;b) | G p")).downward_closed);
  CHECK_FALSE(classify_fragment(parse_team_formula("inc(a;b)")).downward_closed);
}
