#include <doctest.h>

#include "hornforge/clause.hpp"

using namespace hornforge;

namespace {

Term v(const std::string& n) { return Term::var(n, "V"); }
Term c(const std::string& n) { return Term::app(n, "V", {}); }
Term plus(Term a, Term b) { return Term::app("plus", "V", {std::move(a), std::move(b)}); }

}  // namespace

TEST_CASE("classify is total: definite iff the head is an atom") {
  // (-> a=b) is definite
  HornClause unit = HornClause::close({}, Head::make_atom(Atom::equation(c("a"), c("b"))));
  CHECK(unit.classify() == ClauseKind::kDefinite);

  // the paper's negated goal (0=u -> falsum) is a goal clause
  HornClause goal = HornClause::close({Atom::equation(c("ze"), c("u"))}, Head::falsum());
  CHECK(goal.classify() == ClauseKind::kGoal);

  // (P and Q -> R) is definite
  HornClause rule = HornClause::close(
      {Atom::predicate("P", {}), Atom::predicate("Q", {})},
      Head::make_atom(Atom::predicate("R", {})));
  CHECK(rule.classify() == ClauseKind::kDefinite);

  // boxed-goal heads classify as goal clauses
  HornClause boxed = HornClause::close({Atom::equation(c("ze"), c("u"))},
                                       Head::goal(Atom::equation(c("ze"), c("u"))));
  CHECK(boxed.classify() == ClauseKind::kGoal);
}

TEST_CASE("groundness of clauses") {
  // the paper's hypothesis v = u + v over constants
  HornClause hyp =
      HornClause::close({}, Head::make_atom(Atom::equation(c("v"), plus(c("u"), c("v")))));
  CHECK(hyp.is_ground());

  // forall x. 0 + x = x is not ground
  HornClause neutl =
      HornClause::close({}, Head::make_atom(Atom::equation(plus(c("ze"), v("x")), v("x"))));
  CHECK(!neutl.is_ground());

  // empty body: groundness of the head decides
  HornClause mixed = HornClause::close({}, Head::make_atom(Atom::equation(c("a"), v("y"))));
  CHECK(!mixed.is_ground());
}

TEST_CASE("equation orientations") {
  Atom ab = Atom::equation(c("a"), c("b"));
  auto both = equation_orientations(ab);
  REQUIRE(both.size() == 2);
  CHECK(both[0] == ab);
  CHECK(both[1] == Atom::equation(c("b"), c("a")));

  Atom pred = Atom::predicate("P", {c("a")});
  CHECK(equation_orientations(pred).size() == 1);

  Atom tt = Atom::equation(c("t"), c("t"));
  CHECK(equation_orientations(tt).size() == 1);  // symmetry degenerates
}

TEST_CASE("clause construction validates variable closure") {
  CHECK_THROWS(HornClause::make({}, {}, Head::make_atom(Atom::equation(v("x"), c("a")))));
  CHECK_THROWS(HornClause::make({{"x", "W"}}, {},
                                Head::make_atom(Atom::equation(v("x"), c("a")))));
  // goal-atom heads must be ground
  CHECK_THROWS(Head::goal(Atom::equation(v("x"), c("a"))));
}

TEST_CASE("variant matching with body permutation and orientation flips") {
  // derived: (P(x) and a=x -> Q), stated: (x0=a and P(x0) -> Q)
  HornClause derived = HornClause::close(
      {Atom::predicate("P", {v("x")}), Atom::equation(c("a"), v("x"))},
      Head::make_atom(Atom::predicate("Q", {})));
  HornClause stated = HornClause::close(
      {Atom::equation(Term::var("x0", "V"), c("a")), Atom::predicate("P", {Term::var("x0", "V")})},
      Head::make_atom(Atom::predicate("Q", {})));

  CHECK(!variant_match(derived, stated).has_value());  // strict: orientation differs
  auto m = variant_match_flex(derived, stated);
  REQUIRE(m.has_value());
  CHECK(m->body_perm == std::vector<size_t>{1, 0});
  CHECK(m->body_flipped == std::vector<bool>{false, true});
  CHECK(!m->head_flipped);
}

TEST_CASE("variant matching is bijective on variables") {
  // P(x, y) is not a variant of P(z, z)
  HornClause a = HornClause::close({}, Head::make_atom(Atom::predicate("P", {v("x"), v("y")})));
  HornClause b = HornClause::close({}, Head::make_atom(Atom::predicate("P", {v("z"), v("z")})));
  CHECK(!variant_match_flex(a, b).has_value());
  CHECK(!variant_match_flex(b, a).has_value());
}

TEST_CASE("canonicalize renames to first-occurrence order, swap-safely") {
  // vars already named v0, v1 but in swapped occurrence order
  Term v0 = Term::var("v0", "V");
  Term v1 = Term::var("v1", "V");
  HornClause swapped = HornClause::close({}, Head::make_atom(Atom::predicate("P", {v1, v0})));
  HornClause canon = canonicalize(swapped);
  CHECK(canon.head().atom->args()[0] == Term::var("v0", "V"));
  CHECK(canon.head().atom->args()[1] == Term::var("v1", "V"));
  CHECK(variant_match(swapped, canon).has_value());
}
