#include <doctest.h>

#include "hornforge/kbo.hpp"
#include "hornforge/rules.hpp"

using namespace hornforge;

namespace {

struct VecWorld {
  Signature sig;
  VecWorld() {
    sig.add_sort({"vec", false, {}});
    sig.add_function({"plus", {"vec", "vec"}, "vec", false, PrintStyle::kApplied});
    sig.add_function({"neg", {"vec"}, "vec", false, PrintStyle::kApplied});
    sig.add_function({"ze", {}, "vec", false, PrintStyle::kBare});
    sig.add_function({"u", {}, "vec", false, PrintStyle::kBare});
    sig.add_function({"v", {}, "vec", false, PrintStyle::kBare});
    sig.add_predicate({"P", {"vec"}});
    sig.add_predicate({"Q", {"vec"}});
    sig.add_predicate({"R", {}});
  }
  Term var(const std::string& n) const { return Term::var(n, "vec"); }
  Term c(const std::string& n) const { return Term::app(sig, n, {}); }
  Term plus(Term a, Term b) const { return Term::app(sig, "plus", {std::move(a), std::move(b)}); }
  Term neg(Term a) const { return Term::app(sig, "neg", {std::move(a)}); }
};

}  // namespace

TEST_CASE("resolution: the refutation's final step") {
  VecWorld w;
  FreshNames fresh;
  // left: -> ze = u; right: ze = u -> falsum
  HornClause left = HornClause::close({}, Head::make_atom(Atom::equation(w.c("ze"), w.c("u"))));
  HornClause right = HornClause::close({Atom::equation(w.c("ze"), w.c("u"))}, Head::falsum());
  auto app = resolution(left, right, 0, false, fresh);
  REQUIRE(app.has_value());
  CHECK(app->conclusion.is_empty_goal());
}

TEST_CASE("resolution: P(a) against P(x) -> Q(x)") {
  VecWorld w;
  FreshNames fresh;
  HornClause left = HornClause::close({}, Head::make_atom(Atom::predicate("P", {w.c("u")})));
  HornClause right = HornClause::close({Atom::predicate("P", {w.var("x")})},
                                       Head::make_atom(Atom::predicate("Q", {w.var("x")})));
  auto app = resolution(left, right, 0, false, fresh);
  REQUIRE(app.has_value());
  // hand-applied rule instance with sigma = {x -> u}
  HornClause expected = HornClause::close({}, Head::make_atom(Atom::predicate("Q", {w.c("u")})));
  CHECK(app->conclusion == expected);
}

TEST_CASE("resolution on identical ground atoms keeps the right head verbatim") {
  VecWorld w;
  FreshNames fresh;
  HornClause left = HornClause::close({}, Head::make_atom(Atom::predicate("P", {w.c("u")})));
  HornClause right = HornClause::close({Atom::predicate("P", {w.c("u")})},
                                       Head::make_atom(Atom::predicate("R", {})));
  auto app = resolution(left, right, 0, false, fresh);
  REQUIRE(app.has_value());
  CHECK(app->conclusion ==
        HornClause::close({}, Head::make_atom(Atom::predicate("R", {}))));
}

TEST_CASE("factoring merges unifiable body atoms") {
  VecWorld w;
  FreshNames fresh;
  // (P(x) and P(u) -> R) -> (P(u) -> R) under {x -> u}
  HornClause c = HornClause::close(
      {Atom::predicate("P", {w.var("x")}), Atom::predicate("P", {w.c("u")})},
      Head::make_atom(Atom::predicate("R", {})));
  auto app = factoring(c, 0, 1, false, fresh);
  REQUIRE(app.has_value());
  CHECK(app->conclusion == HornClause::close({Atom::predicate("P", {w.c("u")})},
                                             Head::make_atom(Atom::predicate("R", {}))));

  // duplicate ground atoms: (P and P -> Q) -> (P -> Q)
  HornClause dup = HornClause::close(
      {Atom::predicate("P", {w.c("u")}), Atom::predicate("P", {w.c("u")})},
      Head::make_atom(Atom::predicate("R", {})));
  auto app2 = factoring(dup, 0, 1, false, fresh);
  REQUIRE(app2.has_value());
  CHECK(app2->conclusion.body().size() == 1);

  // non-unifiable pair fails
  HornClause bad = HornClause::close(
      {Atom::predicate("P", {w.c("u")}), Atom::predicate("P", {w.c("v")})},
      Head::make_atom(Atom::predicate("R", {})));
  CHECK(!factoring(bad, 0, 1, false, fresh).has_value());
}

TEST_CASE("equality resolution removes a unified body equation") {
  VecWorld w;
  // (f-style) neg(x) = neg(u) -> P(x) becomes -> P(u)
  HornClause c = HornClause::close({Atom::equation(w.neg(w.var("x")), w.neg(w.c("u")))},
                                   Head::make_atom(Atom::predicate("P", {w.var("x")})));
  auto app = equality_resolution(c, 0);
  REQUIRE(app.has_value());
  CHECK(app->conclusion == HornClause::close({}, Head::make_atom(Atom::predicate("P", {w.c("u")}))));

  // ground t = t -> P becomes -> P
  HornClause tt = HornClause::close({Atom::equation(w.c("u"), w.c("u"))},
                                    Head::make_atom(Atom::predicate("R", {})));
  auto app2 = equality_resolution(tt, 0);
  REQUIRE(app2.has_value());
  CHECK(app2->conclusion.body().empty());

  // a predicate body atom violates the precondition
  HornClause pred = HornClause::close({Atom::predicate("P", {w.c("u")})},
                                      Head::make_atom(Atom::predicate("R", {})));
  CHECK(!equality_resolution(pred, 0).has_value());
}

TEST_CASE("superposition derives the paper's step 6") {
  VecWorld w;
  FreshNames fresh;
  // negl as stated by the prover: ze = neg(x) + x ; assoc: (x+y)+z = x+(y+z)
  HornClause negl = HornClause::close(
      {}, Head::make_atom(Atom::equation(w.c("ze"), w.plus(w.neg(w.var("x")), w.var("x")))));
  HornClause assoc = HornClause::close(
      {}, Head::make_atom(Atom::equation(
              w.plus(w.plus(w.var("x"), w.var("y")), w.var("z")),
              w.plus(w.var("x"), w.plus(w.var("y"), w.var("z"))))));
  // rewrite inside assoc's left side at the (x+y) subterm, flipped orientation
  Location loc;
  loc.in_head = true;
  loc.path = {0, 0};
  auto app = superposition(negl, /*eq_flip=*/true, assoc, loc, fresh, /*simultaneous=*/true);
  REQUIRE(app.has_value());
  // expected: ze + y' = neg(x') + (x' + y')   (step 6 up to orientation)
  HornClause step6 = HornClause::close(
      {}, Head::make_atom(Atom::equation(
              w.plus(w.neg(w.var("a")), w.plus(w.var("a"), w.var("b"))),
              w.plus(w.c("ze"), w.var("b")))));
  CHECK(variant_match_flex(app->conclusion, step6).has_value());
}

TEST_CASE("superposition derives the paper's step 7 from assoc and the hypothesis") {
  VecWorld w;
  FreshNames fresh;
  HornClause e = HornClause::close(
      {}, Head::make_atom(Atom::equation(w.c("v"), w.plus(w.c("u"), w.c("v")))));
  HornClause assoc = HornClause::close(
      {}, Head::make_atom(Atom::equation(
              w.plus(w.plus(w.var("x"), w.var("y")), w.var("z")),
              w.plus(w.var("x"), w.plus(w.var("y"), w.var("z"))))));
  Location loc;
  loc.in_head = true;
  loc.path = {0, 0};
  auto app = superposition(e, /*eq_flip=*/true, assoc, loc, fresh, true);
  REQUIRE(app.has_value());
  HornClause step7 = HornClause::close(
      {}, Head::make_atom(Atom::equation(w.plus(w.c("v"), w.var("x")),
                                         w.plus(w.c("u"), w.plus(w.c("v"), w.var("x"))))));
  CHECK(variant_match_flex(app->conclusion, step7).has_value());
}

TEST_CASE("simultaneous superposition rewrites every occurrence of the instance") {
  VecWorld w;
  FreshNames fresh;
  // eq: -> v + neg(v) = ze ; target: -> v + neg(v) = u + (v + neg(v))
  HornClause eq = HornClause::close(
      {}, Head::make_atom(Atom::equation(w.plus(w.c("v"), w.neg(w.c("v"))), w.c("ze"))));
  HornClause target = HornClause::close(
      {}, Head::make_atom(Atom::equation(
              w.plus(w.c("v"), w.neg(w.c("v"))),
              w.plus(w.c("u"), w.plus(w.c("v"), w.neg(w.c("v")))))));
  Location loc;
  loc.in_head = true;
  loc.path = {0};
  auto app = superposition(eq, false, target, loc, fresh, /*simultaneous=*/true);
  REQUIRE(app.has_value());
  // both occurrences replaced: ze = u + ze  (the paper's step 13 shape)
  HornClause expected = HornClause::close(
      {}, Head::make_atom(Atom::equation(w.c("ze"), w.plus(w.c("u"), w.c("ze")))));
  CHECK(variant_match_flex(app->conclusion, expected).has_value());
  CHECK(app->rewrites.size() == 2);
}

TEST_CASE("no superposition into variables") {
  VecWorld w;
  FreshNames fresh;
  HornClause eq = HornClause::close(
      {}, Head::make_atom(Atom::equation(w.c("u"), w.c("v"))));
  HornClause target = HornClause::close(
      {}, Head::make_atom(Atom::equation(w.plus(w.var("x"), w.c("u")), w.var("x"))));
  Location at_var;
  at_var.in_head = true;
  at_var.path = {0, 0};  // the variable x
  CHECK(!superposition(eq, false, target, at_var, fresh, true).has_value());
}

TEST_CASE("demodulation rewrites leftmost-innermost with an orientable instance") {
  VecWorld w;
  Kbo ord(w.sig);
  // unit: 0+x = x; target: -> neg(x) + (x + y) = 0 + y
  HornClause unit = HornClause::close(
      {}, Head::make_atom(Atom::equation(w.plus(w.c("ze"), w.var("x")), w.var("x"))));
  HornClause target = HornClause::close(
      {}, Head::make_atom(Atom::equation(
              w.plus(w.neg(w.var("x")), w.plus(w.var("x"), w.var("y"))),
              w.plus(w.c("ze"), w.var("y")))));
  auto app = demodulate(unit, target, ord);
  REQUIRE(app.has_value());
  HornClause expected = HornClause::close(
      {}, Head::make_atom(Atom::equation(
              w.plus(w.neg(w.var("x")), w.plus(w.var("x"), w.var("y"))), w.var("y"))));
  CHECK(app->conclusion == expected);

  // no matching subterm: NoChange
  HornClause no_match = HornClause::close(
      {}, Head::make_atom(Atom::equation(w.neg(w.c("u")), w.c("v"))));
  CHECK(!demodulate(unit, no_match, ord).has_value());

  // unorientable x = y cannot demodulate
  HornClause unorientable = HornClause::close(
      {}, Head::make_atom(Atom::equation(w.var("x"), w.var("y"))));
  CHECK(!demodulate(unorientable, target, ord).has_value());
}

TEST_CASE("subsumption") {
  VecWorld w;
  // (P(x) -> R) subsumes (P(u) and Q(v) -> R)
  HornClause general = HornClause::close({Atom::predicate("P", {w.var("x")})},
                                         Head::make_atom(Atom::predicate("R", {})));
  HornClause specific = HornClause::close(
      {Atom::predicate("P", {w.c("u")}), Atom::predicate("Q", {w.c("v")})},
      Head::make_atom(Atom::predicate("R", {})));
  CHECK(subsumes(general, specific));
  CHECK(subsumes(general, general));  // every clause subsumes itself
  CHECK(!subsumes(specific, general));

  HornClause pa = HornClause::close({Atom::predicate("P", {w.c("u")})},
                                    Head::make_atom(Atom::predicate("R", {})));
  HornClause pb = HornClause::close({Atom::predicate("P", {w.c("v")})},
                                    Head::make_atom(Atom::predicate("R", {})));
  CHECK(!subsumes(pa, pb));

  // equations subsume modulo orientation
  HornClause ab = HornClause::close({}, Head::make_atom(Atom::equation(w.c("u"), w.c("v"))));
  HornClause ba = HornClause::close({}, Head::make_atom(Atom::equation(w.c("v"), w.c("u"))));
  CHECK(subsumes(ab, ba));
}

TEST_CASE("KBO orients the vector-space axioms") {
  VecWorld w;
  Kbo ord(w.sig);
  // weight decides: ze + x > x
  CHECK(ord.compare(w.plus(w.c("ze"), w.var("x")), w.var("x")) == Kbo::Cmp::kGreater);
  // neg(x) + x > ze
  CHECK(ord.compare(w.plus(w.neg(w.var("x")), w.var("x")), w.c("ze")) == Kbo::Cmp::kGreater);
  // assoc: equal weights, lexicographic on the first argument
  Term lhs = w.plus(w.plus(w.var("x"), w.var("y")), w.var("z"));
  Term rhs = w.plus(w.var("x"), w.plus(w.var("y"), w.var("z")));
  CHECK(ord.compare(lhs, rhs) == Kbo::Cmp::kGreater);
  CHECK(ord.compare(rhs, lhs) == Kbo::Cmp::kLess);
  // commutativity is unorientable
  Term xy = w.plus(w.var("x"), w.var("y"));
  Term yx = w.plus(w.var("y"), w.var("x"));
  CHECK(ord.compare(xy, yx) == Kbo::Cmp::kIncomparable);
  CHECK(ord.compare(xy, xy) == Kbo::Cmp::kEqual);
  // the variable condition blocks x > f(y)
  CHECK(ord.compare(w.neg(w.var("x")), w.var("y")) == Kbo::Cmp::kIncomparable);
  CHECK(ord.compare(w.neg(w.var("x")), w.var("x")) == Kbo::Cmp::kGreater);
}
