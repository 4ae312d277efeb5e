#include "corpus.hpp"

#include <algorithm>

namespace hornforge::testing {

namespace {

struct Gen {
  std::mt19937_64& rng;

  size_t pick(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); }
  bool chance(double p) { return std::uniform_real_distribution<>(0, 1)(rng) < p; }

  Signature make_signature(bool with_predicate) {
    Signature sig;
    sig.add_sort({"o", false, {}});
    size_t constants = 2 + pick(5);  // 2..6
    for (size_t i = 0; i < constants; ++i)
      sig.add_function({"c" + std::to_string(i), {}, "o", false, PrintStyle::kBare});
    size_t funcs = 1 + pick(4);  // 1..4
    for (size_t i = 0; i < funcs; ++i) {
      size_t arity = 1 + pick(2);
      std::vector<std::string> args(arity, "o");
      sig.add_function({"f" + std::to_string(i), args, "o", false, PrintStyle::kApplied});
    }
    if (with_predicate) sig.add_predicate({"p", {"o"}});
    return sig;
  }

  Term ground_term(const Signature& sig, int depth) {
    std::vector<const FunctionSymbol*> nullary, apps;
    for (const FunctionSymbol& f : sig.functions())
      (f.arity() == 0 ? nullary : apps).push_back(&f);
    if (depth == 0 || apps.empty() || chance(0.45)) {
      const FunctionSymbol* c = nullary[pick(nullary.size())];
      return Term::app(c->name, c->result_sort, {});
    }
    const FunctionSymbol* f = apps[pick(apps.size())];
    std::vector<Term> args;
    for (size_t i = 0; i < f->arity(); ++i) args.push_back(ground_term(sig, depth - 1));
    return Term::app(f->name, f->result_sort, std::move(args));
  }

  Term open_term(const Signature& sig, const std::vector<SortedVar>& vars, int depth) {
    if (!vars.empty() && chance(0.35)) {
      const auto& [n, s] = vars[pick(vars.size())];
      return Term::var(n, s);
    }
    std::vector<const FunctionSymbol*> nullary, apps;
    for (const FunctionSymbol& f : sig.functions())
      (f.arity() == 0 ? nullary : apps).push_back(&f);
    if (depth == 0 || apps.empty() || chance(0.4)) {
      if (!vars.empty() && chance(0.4)) {
        const auto& [n, s] = vars[pick(vars.size())];
        return Term::var(n, s);
      }
      const FunctionSymbol* c = nullary[pick(nullary.size())];
      return Term::app(c->name, c->result_sort, {});
    }
    const FunctionSymbol* f = apps[pick(apps.size())];
    std::vector<Term> args;
    for (size_t i = 0; i < f->arity(); ++i) args.push_back(open_term(sig, vars, depth - 1));
    return Term::app(f->name, f->result_sort, std::move(args));
  }

  Atom atom(const Signature& sig, const std::vector<SortedVar>& vars, int depth,
            bool allow_predicate) {
    if (allow_predicate && sig.find_predicate("p") && chance(0.3))
      return Atom::predicate("p", {open_term(sig, vars, depth)});
    return Atom::equation(open_term(sig, vars, depth), open_term(sig, vars, depth));
  }
};

RandomProblem finish(Gen& g, Signature sig, std::vector<HornClause> definite,
                     const std::vector<Atom>& fact_pool) {
  RandomProblem rp;
  rp.sig = std::move(sig);
  rp.definite = std::move(definite);
  // Goal: mostly an atom that has a chance of being derivable.
  Atom goal = fact_pool[g.pick(fact_pool.size())];
  rp.goal = goal;
  int id = 1;
  for (const HornClause& c : rp.definite) {
    Step s;
    s.id = id++;
    s.clause = c;
    s.just = JustInput{"ax" + std::to_string(s.id)};
    s.role = "axiom";
    rp.inputs.push_back(std::move(s));
  }
  Step gs;
  gs.id = id;
  gs.clause = HornClause::close({goal}, Head::falsum());
  gs.just = JustNegatedConjecture{};
  gs.role = "negated_conjecture";
  rp.inputs.push_back(std::move(gs));
  return rp;
}

}  // namespace

RandomProblem random_ground_problem(std::mt19937_64& rng) {
  Gen g{rng};
  // Lean signatures keep unprovable instances saturable: the spec bounds
  // (6 constants, 4 functions, 8 clauses) are upper bounds.
  Signature sig;
  sig.add_sort({"o", false, {}});
  size_t constants = 3 + g.pick(3);  // 3..5
  for (size_t i = 0; i < constants; ++i)
    sig.add_function({"c" + std::to_string(i), {}, "o", false, PrintStyle::kBare});
  sig.add_function({"f0", {"o"}, "o", false, PrintStyle::kApplied});
  if (g.chance(0.5)) sig.add_function({"f1", {"o", "o"}, "o", false, PrintStyle::kApplied});
  sig.add_predicate({"p", {"o"}});

  size_t n_clauses = 3 + g.pick(4);  // 3..6 definite clauses
  std::vector<HornClause> definite;
  std::vector<Atom> pool;
  for (size_t i = 0; i < n_clauses; ++i) {
    std::vector<Atom> body;
    if (g.chance(0.4)) {
      size_t body_n = 1 + g.pick(2);  // 1..2 shallow conditions
      for (size_t b = 0; b < body_n; ++b) body.push_back(g.atom(sig, {}, 1, true));
    }
    Atom head = g.atom(sig, {}, g.chance(0.6) ? 1 : 2, true);
    pool.push_back(head);
    definite.push_back(HornClause::close(std::move(body), Head::make_atom(head)));
  }
  // A few extra candidate goals that exercise congruence reasoning.
  pool.push_back(g.atom(sig, {}, 2, true));
  return finish(g, std::move(sig), std::move(definite), pool);
}

RandomProblem random_horn_problem(std::mt19937_64& rng) {
  Gen g{rng};
  Signature sig = g.make_signature(true);
  size_t n_clauses = 3 + g.pick(5);
  std::vector<HornClause> definite;
  std::vector<Atom> ground_pool;
  for (size_t i = 0; i < n_clauses; ++i) {
    std::vector<SortedVar> vars;
    size_t nv = g.pick(3);  // 0..2 variables
    for (size_t v = 0; v < nv; ++v) vars.emplace_back("x" + std::to_string(v), "o");
    size_t body_n = g.pick(2);  // 0..1 body atoms keep saturation tame
    std::vector<Atom> body;
    for (size_t b = 0; b < body_n; ++b) body.push_back(g.atom(sig, vars, 1, true));
    Atom head = g.atom(sig, vars, 1, true);
    // Clauses must be closed: collect vars from atoms themselves.
    definite.push_back(HornClause::close(std::move(body), Head::make_atom(head)));
  }
  for (int i = 0; i < 3; ++i) {
    Atom probe = g.atom(sig, {}, 2, true);
    ground_pool.push_back(probe);
  }
  return finish(g, std::move(sig), std::move(definite), ground_pool);
}

Problem random_surface_problem(std::mt19937_64& rng) {
  Gen g{rng};
  Problem p;
  p.signature.add_sort({"s", false, {}});
  p.layout.push_back({LayoutItem::Kind::kSort, "s"});
  size_t constants = 1 + g.pick(3);
  for (size_t i = 0; i < constants; ++i) {
    std::string name = "k" + std::to_string(i);
    p.signature.add_function({name, {}, "s", false, g.chance(0.5) ? PrintStyle::kBare
                                                                  : PrintStyle::kApplied});
    p.layout.push_back({LayoutItem::Kind::kFunction, name});
  }
  size_t funcs = 1 + g.pick(2);
  for (size_t i = 0; i < funcs; ++i) {
    std::vector<std::string> args(1 + g.pick(2), "s");
    std::string name = "g" + std::to_string(i);
    p.signature.add_function({name, args, "s", false, PrintStyle::kApplied});
    p.layout.push_back({LayoutItem::Kind::kFunction, name});
  }
  if (g.chance(0.5)) {
    p.signature.add_predicate({"q", {"s"}});
    p.layout.push_back({LayoutItem::Kind::kFunction, "q"});
  }
  size_t axioms = 1 + g.pick(3);
  for (size_t i = 0; i < axioms; ++i) {
    std::vector<SortedVar> vars;
    size_t nv = g.pick(3);
    for (size_t v = 0; v < nv; ++v) vars.emplace_back("x" + std::to_string(v), "s");
    std::vector<Atom> body;
    size_t nb = g.pick(3);
    for (size_t b = 0; b < nb; ++b)
      body.push_back(g.atom(p.signature, vars, 1, p.signature.find_predicate("q") != nullptr));
    Atom head = g.atom(p.signature, vars, 1, p.signature.find_predicate("q") != nullptr);
    // The prefix is exactly the occurring variables, in binder order.
    std::vector<SortedVar> used;
    for (const Atom& a : body) a.collect_vars(used);
    head.collect_vars(used);
    if (used.empty() && body.empty()) {
      // ground unit facts are hypotheses in the problem model
      std::string name = "fact-" + std::to_string(i);
      p.hypotheses.push_back({name, head});
      p.layout.push_back({LayoutItem::Kind::kHypothesis, name});
      continue;
    }
    std::string name = "axiom-" + std::to_string(i);
    p.axioms.push_back({name, HornClause::make(used, std::move(body), Head::make_atom(head))});
    p.layout.push_back({LayoutItem::Kind::kAxiom, name});
  }
  size_t hyps = g.pick(3);
  for (size_t i = 0; i < hyps; ++i) {
    std::string name = "hyp-" + std::to_string(i);
    Atom a = g.atom(p.signature, {}, 2, p.signature.find_predicate("q") != nullptr);
    p.hypotheses.push_back({name, a});
    p.layout.push_back({LayoutItem::Kind::kHypothesis, name});
  }
  p.goal = {"the-goal", g.atom(p.signature, {}, 2, p.signature.find_predicate("q") != nullptr)};
  p.layout.push_back({LayoutItem::Kind::kGoal, "the-goal"});
  return p;
}

}  // namespace hornforge::testing
