#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "hornforge/saturation.hpp"
#include "hornforge/smtlib.hpp"
#include "hornforge/transform.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace hornforge;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Strategy quick(bool ordered, size_t clauses = 20000, double secs = 20.0) {
  Strategy s;
  s.age_ratio = 1;
  s.weight_ratio = 4;
  s.use_ordering = ordered;
  s.max_clauses = clauses;
  s.max_seconds = secs;
  return s;
}

}  // namespace

TEST_CASE("the vector-space problem is proved within the desk budget") {
  Problem p = parse_problem(slurp(std::string(HF_FIXTURES) + "/vectorspace.smt2"));
  ClausifyResult cl = clausify(p);
  Strategy s = quick(true, 10000, 5.0);
  SaturationResult r = saturate(cl.clauses, cl.goal_atom, p.signature, s);
  REQUIRE(r.outcome == SaturationResult::Outcome::kRefutation);
  CHECK(r.kept <= 10000);
  CHECK(r.seconds <= 5.0);
  CHECK(r.derivation.is_refutation());

  // every step of the refutation replays under validate_step
  Atom g = derivation_goal_atom(r.derivation);
  Derivation t = friedmanize(r.derivation, g);
  for (const Step& step : t.steps) {
    const auto* inf = std::get_if<JustInference>(&step.just);
    if (!inf) continue;
    std::vector<HornClause> premises;
    for (int pid : inf->premises) premises.push_back(t.find(pid)->clause);
    StepValidation v = validate_step(premises, step.clause, inf->rule);
    CHECK_MESSAGE(v.valid, "step ", step.id, " (", inf->rule, "): ", v.reason);
  }
}

TEST_CASE("a three-equation chain refutes, matching the congruence oracle") {
  Signature sig;
  sig.add_sort({"o", false, {}});
  for (const char* n : {"a", "b", "c"})
    sig.add_function({n, {}, "o", false, PrintStyle::kBare});
  auto k = [&](const char* n) { return Term::app(sig, n, {}); };
  std::vector<Step> inputs;
  inputs.push_back({1, HornClause::close({}, Head::make_atom(Atom::equation(k("a"), k("b")))),
                    JustInput{"ab"}, "axiom"});
  inputs.push_back({2, HornClause::close({}, Head::make_atom(Atom::equation(k("b"), k("c")))),
                    JustInput{"bc"}, "axiom"});
  Atom goal = Atom::equation(k("a"), k("c"));
  inputs.push_back({3, HornClause::close({goal}, Head::falsum()), JustNegatedConjecture{},
                    "negated_conjecture"});

  // the independent oracle agrees this is entailed
  std::vector<HornClause> definite = {inputs[0].clause, inputs[1].clause};
  CHECK(testing::ground_entails(definite, goal));

  SaturationResult r = saturate(inputs, goal, sig, quick(true));
  CHECK(r.outcome == SaturationResult::Outcome::kRefutation);
}

TEST_CASE("an unprovable goal saturates") {
  Signature sig;
  sig.add_sort({"o", false, {}});
  sig.add_function({"a", {}, "o", false, PrintStyle::kBare});
  sig.add_function({"b", {}, "o", false, PrintStyle::kBare});
  sig.add_predicate({"P", {"o"}});
  std::vector<Step> inputs;
  inputs.push_back(
      {1, HornClause::close({}, Head::make_atom(Atom::predicate("P", {Term::app(sig, "a", {})}))),
       JustInput{"pa"}, "axiom"});
  Atom goal = Atom::predicate("P", {Term::app(sig, "b", {})});
  inputs.push_back({2, HornClause::close({goal}, Head::falsum()), JustNegatedConjecture{},
                    "negated_conjecture"});
  CHECK(!testing::ground_entails({inputs[0].clause}, goal));
  SaturationResult r = saturate(inputs, goal, sig, quick(true));
  CHECK(r.outcome == SaturationResult::Outcome::kSaturated);
}

TEST_CASE("prover verdicts match the ground oracle (sampled)") {
  std::mt19937_64 rng(41);
  int proved = 0, saturated = 0;
  for (int i = 0; i < 30; ++i) {
    testing::RandomProblem rp = testing::random_ground_problem(rng);
    bool oracle = testing::ground_entails(rp.definite, rp.goal);
    SaturationResult r = saturate(rp.inputs, rp.goal, rp.sig, quick(true, 200000, 30.0));
    REQUIRE_MESSAGE(r.outcome != SaturationResult::Outcome::kBudget,
                    "ground saturation must terminate (seed ", i, ")");
    bool ours = r.outcome == SaturationResult::Outcome::kRefutation;
    CHECK_MESSAGE(ours == oracle, "verdict mismatch on seed problem ", i);
    (ours ? proved : saturated)++;
  }
  CHECK(proved > 0);
  CHECK(saturated > 0);
}

TEST_CASE("fairness: the age queue rescues heavy relevant clauses") {
  // Junk generators keep the weight queue busy with light clauses, while the
  // proof needs the heavy chain axiom picked by age.
  Signature sig;
  sig.add_sort({"o", false, {}});
  sig.add_function({"a", {}, "o", false, PrintStyle::kBare});
  sig.add_function({"f", {"o"}, "o", false, PrintStyle::kApplied});
  sig.add_function({"g", {"o", "o"}, "o", false, PrintStyle::kApplied});
  sig.add_predicate({"P", {"o"}});
  sig.add_predicate({"J", {"o"}});
  auto a = Term::app(sig, "a", {});
  auto x = Term::var("x", "o");
  auto y = Term::var("y", "o");
  std::vector<Step> inputs;
  // junk: J(a); J(x) -> J(f(x)); J(x) and J(y) -> J(g(x,y))
  inputs.push_back({1, HornClause::close({}, Head::make_atom(Atom::predicate("J", {a}))),
                    JustInput{"j0"}, "axiom"});
  inputs.push_back({2,
                    HornClause::close({Atom::predicate("J", {x})},
                                      Head::make_atom(Atom::predicate("J", {Term::app(sig, "f", {x})}))),
                    JustInput{"j1"}, "axiom"});
  inputs.push_back({3,
                    HornClause::close({Atom::predicate("J", {x}), Atom::predicate("J", {y})},
                                      Head::make_atom(Atom::predicate("J", {Term::app(sig, "g", {x, y})}))),
                    JustInput{"j2"}, "axiom"});
  // the relevant, heavy fact: P(g(g(f(f(a)), f(a)), g(a, f(a))))
  Term heavy = Term::app(
      sig, "g",
      {Term::app(sig, "g",
                 {Term::app(sig, "f", {Term::app(sig, "f", {a})}), Term::app(sig, "f", {a})}),
       Term::app(sig, "g", {a, Term::app(sig, "f", {a})})});
  Atom goal = Atom::predicate("P", {heavy});
  inputs.push_back({4, HornClause::close({}, Head::make_atom(goal)), JustInput{"key"}, "axiom"});
  inputs.push_back({5, HornClause::close({goal}, Head::falsum()), JustNegatedConjecture{},
                    "negated_conjecture"});

  Strategy fair = quick(true, 3000, 10.0);
  SaturationResult r = saturate(inputs, goal, sig, fair);
  CHECK_MESSAGE(r.outcome == SaturationResult::Outcome::kRefutation,
                "age:weight selection must reach the heavy clause");

  // with pure weight selection the junk starves the proof until the budget
  Strategy unfair = fair;
  unfair.age_ratio = 0;
  unfair.weight_ratio = 1;
  unfair.max_clauses = 1500;
  SaturationResult r2 = saturate(inputs, goal, sig, unfair);
  CHECK(r2.outcome == SaturationResult::Outcome::kBudget);
}

TEST_CASE("portfolio returns the first success deterministically") {
  Problem p = parse_problem(slurp(std::string(HF_FIXTURES) + "/vectorspace.smt2"));
  ClausifyResult cl = clausify(p);
  // first strategy succeeds: its result is returned with index 0
  SaturationResult r = run_portfolio(cl.clauses, cl.goal_atom, p.signature,
                                     default_portfolio(), 30.0, /*sequential=*/true);
  CHECK(r.outcome == SaturationResult::Outcome::kRefutation);
  CHECK(r.strategy_index == 0);

  // all strategies exhausted: the budget outcome survives
  Strategy starved;
  starved.age_ratio = 1;
  starved.weight_ratio = 1;
  starved.max_clauses = 3;
  starved.max_seconds = 0.5;
  SaturationResult r2 = run_portfolio(cl.clauses, cl.goal_atom, p.signature,
                                      {starved, starved}, 2.0, true);
  CHECK(r2.outcome == SaturationResult::Outcome::kBudget);

  // the parallel mode agrees on the winner
  SaturationResult r3 = run_portfolio(cl.clauses, cl.goal_atom, p.signature,
                                      default_portfolio(), 30.0, /*sequential=*/false);
  CHECK(r3.outcome == SaturationResult::Outcome::kRefutation);
  CHECK(r3.strategy_index == 0);
}

TEST_CASE("nat addition computes by rewriting") {
  Problem p = parse_problem(slurp(std::string(HF_FIXTURES) + "/nat_add.smt2"));
  ClausifyResult cl = clausify(p);
  SaturationResult r = saturate(cl.clauses, cl.goal_atom, p.signature, quick(true));
  CHECK(r.outcome == SaturationResult::Outcome::kRefutation);
}
