// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion numbers follow the table in the README.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "hornforge/pipeline.hpp"
#include "hornforge/reconstruct.hpp"
#include "hornforge/smtlib.hpp"
#include "hornforge/transform.hpp"
#include "hornforge/tstp.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace hornforge;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int n, const std::string& what, bool ok, const std::string& detail) {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << what;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!ok) ++failures;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const fs::path kFixtures = HF_FIXTURES;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1: vector-space round trip ---------------------------------

void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  Problem p = parse_problem(slurp(kFixtures / "vectorspace.smt2"));
  PipelineOptions opts;
  opts.max_clauses = 10000;
  opts.timeout_secs = 5.0;
  ProveArtifacts art = run_prove(p, opts);
  double secs = seconds_since(t0);
  bool ok = art.report.outcome == Outcome::kProved && secs <= 5.0 &&
            art.report.clauses_kept <= 10000;
  std::ostringstream d;
  d << outcome_name(art.report.outcome) << ", " << art.report.clauses_kept << " clauses, "
    << art.report.derivation_steps << " steps, " << art.report.proof_defs << " definitions, "
    << secs << "s";
  report(1, "vector-space round trip proves u = vec.ze", ok, d.str());
}

// ---- criterion 2: derivation replay ----------------------------------------

void criterion_2() {
  Problem p = parse_problem(slurp(kFixtures / "vectorspace_replay.smt2"));
  Derivation d = parse_tstp(slurp(kFixtures / "vectorspace_replay.tstp"), p.signature);
  bool ok = d.steps.size() == 15;
  std::string detail;

  Atom g = derivation_goal_atom(d);
  Derivation t = friedmanize(d, g);
  const Step* s5 = t.find(5);
  const Step* s15 = t.find(15);
  Term ze = Term::app(p.signature, "ze", {});
  Term u = Term::app(p.signature, "u", {});
  Atom zeu = Atom::equation(ze, u);
  ok = ok && s5 && s5->clause.body().size() == 1 && s5->clause.body()[0] == zeu &&
       s5->clause.head().is_goal() && *s5->clause.head().atom == zeu;
  ok = ok && s15 && s15->clause.body().empty() && s15->clause.head().is_goal() &&
       *s15->clause.head().atom == zeu;
  if (!ok) detail = "transformed step shapes do not match";

  ProveArtifacts art = run_reconstruct(p, d, {});
  if (art.report.outcome != Outcome::kProved) {
    ok = false;
    detail = art.report.detail;
  } else if (detail.empty()) {
    detail = "15/15 steps reconstructed, " + std::to_string(art.report.proof_defs) +
             " checked definitions";
  }
  report(2, "the paper's 15-step derivation replays with zero NoInstanceFound", ok, detail);
}

// ---- criterion 3: transformation validity on the random corpus -------------

void criterion_3() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(4242);
  int refuted = 0, attempts = 0, bad_steps = 0, exceptions = 0;
  while (refuted < 100 && attempts < 600) {
    ++attempts;
    testing::RandomProblem rp = testing::random_horn_problem(rng);
    Strategy st;
    st.max_clauses = 2000;
    st.max_seconds = 0.5;
    st.use_ordering = true;
    SaturationResult r = saturate(rp.inputs, rp.goal, rp.sig, st);
    if (r.outcome != SaturationResult::Outcome::kRefutation) continue;
    ++refuted;
    try {
      Atom g = derivation_goal_atom(r.derivation);
      Derivation t = friedmanize(r.derivation, g);
      for (const Step& s : t.steps) {
        const auto* inf = std::get_if<JustInference>(&s.just);
        if (!inf) continue;
        std::vector<HornClause> premises;
        for (int pid : inf->premises) premises.push_back(t.find(pid)->clause);
        if (!validate_step(premises, s.clause, inf->rule).valid) ++bad_steps;
      }
    } catch (const std::exception&) {
      ++exceptions;
    }
  }
  double secs = seconds_since(t0);
  bool ok = refuted >= 100 && bad_steps == 0 && exceptions == 0 && secs <= 60.0;
  std::ostringstream d;
  d << refuted << " refutations from " << attempts << " problems, " << bad_steps
    << " invalid transformed steps, " << secs << "s";
  report(3, "all transformed steps of 100 random refutations validate", ok, d.str());
}

// ---- criterion 4: ground-oracle equivalence ---------------------------------

void criterion_4() {
  std::mt19937_64 rng(41);
  int mismatches = 0, budget = 0, proved = 0, saturated = 0;
  for (int i = 0; i < 150; ++i) {
    testing::RandomProblem rp = testing::random_ground_problem(rng);
    bool oracle = testing::ground_entails(rp.definite, rp.goal);
    Strategy st;
    st.max_clauses = 50000;
    st.max_seconds = 15;
    st.use_ordering = true;
    SaturationResult r = saturate(rp.inputs, rp.goal, rp.sig, st);
    if (r.outcome == SaturationResult::Outcome::kBudget) {
      ++budget;
      continue;
    }
    bool ours = r.outcome == SaturationResult::Outcome::kRefutation;
    (ours ? proved : saturated)++;
    if (ours != oracle) ++mismatches;
  }
  bool ok = mismatches == 0 && budget == 0 && proved > 0 && saturated > 0;
  std::ostringstream d;
  d << "150 problems: " << proved << " proved, " << saturated << " saturated, " << budget
    << " over budget, " << mismatches << " disagreements";
  report(4, "prover verdicts match the forward-chaining + congruence oracle", ok, d.str());
}

// ---- criterion 5: MGU laws ---------------------------------------------------

void criterion_5() {
  Signature sig;
  sig.add_sort({"o", false, {}});
  sig.add_function({"a", {}, "o", false, PrintStyle::kBare});
  sig.add_function({"f", {"o"}, "o", false, PrintStyle::kApplied});
  sig.add_function({"g", {"o", "o"}, "o", false, PrintStyle::kApplied});
  std::vector<SortedVar> pool = {{"x", "o"}, {"y", "o"}};
  std::mt19937_64 rng(1000003);
  std::function<Term(int)> rnd = [&](int depth) -> Term {
    std::uniform_int_distribution<int> d(0, 5);
    int roll = d(rng);
    if (depth == 0 || roll < 2) return Term::var(roll % 2 ? "x" : "y", "o");
    if (roll == 2) return Term::app(sig, "a", {});
    if (roll < 5) return Term::app(sig, "f", {rnd(depth - 1)});
    return Term::app(sig, "g", {rnd(depth - 1), rnd(depth - 1)});
  };
  int cases = 0, violations = 0, unifiable = 0;
  while (cases < 1000) {
    ++cases;
    Term s = rnd(2);
    Term t = rnd(2);
    auto r = mgu(s, t);
    auto unifiers = testing::enumerate_unifiers(s, t, sig, pool, 2);
    if (!r) {
      if (!unifiers.empty()) ++violations;  // mgu failed but a unifier exists
      continue;
    }
    ++unifiable;
    if (!(r.unifier->apply(s) == r.unifier->apply(t))) ++violations;
    std::vector<SortedVar> vars;
    s.collect_vars(vars);
    t.collect_vars(vars);
    for (const Matcher& tau : unifiers)
      if (!testing::factors_through(*r.unifier, tau, vars)) ++violations;
  }
  bool ok = violations == 0 && unifiable > 100;
  std::ostringstream d;
  d << cases << " cases, " << unifiable << " unifiable, " << violations << " violations";
  report(5, "unifier correctness and most-generality vs brute force", ok, d.str());
}

// ---- criterion 6: kernel mutation soundness ----------------------------------

struct MutationCounter {
  std::vector<Term> witness_pool;
  int mutants = 0;
  int escapes = 0;
  std::vector<std::string> escape_notes;

  void mutate(const ProofTerm& t, const std::vector<std::string>& names,
              const std::function<void(ProofTerm)>& emit) {
    using K = ProofTerm::Kind;
    switch (t.kind()) {
      case K::kRef:
        for (const std::string& other : names)
          if (other != t.name()) emit(ProofTerm::ref(other));
        break;
      case K::kSym:
        emit(t.child(0));  // drop the sym
        mutate(t.child(0), names, [&](ProofTerm c) { emit(ProofTerm::sym(std::move(c))); });
        break;
      case K::kTrans:
        emit(t.child(0));                                // drop a leg
        emit(t.child(1));
        emit(ProofTerm::trans(t.child(1), t.child(0)));  // swap the legs
        mutate(t.child(0), names,
               [&](ProofTerm c) { emit(ProofTerm::trans(std::move(c), t.child(1))); });
        mutate(t.child(1), names,
               [&](ProofTerm c) { emit(ProofTerm::trans(t.child(0), std::move(c))); });
        break;
      case K::kCong:
        emit(t.child(0));  // drop the context
        mutate(t.child(0), names,
               [&](ProofTerm c) { emit(ProofTerm::cong(t.term_ctx(), std::move(c))); });
        break;
      case K::kRw:
        emit(t.child(1));
        mutate(t.child(0), names,
               [&](ProofTerm c) { emit(ProofTerm::rw(std::move(c), t.child(1), t.atom_ctx())); });
        mutate(t.child(1), names,
               [&](ProofTerm c) { emit(ProofTerm::rw(t.child(0), std::move(c), t.atom_ctx())); });
        break;
      case K::kApp:
        emit(t.child(0));
        mutate(t.child(0), names,
               [&](ProofTerm c) { emit(ProofTerm::app(std::move(c), t.child(1))); });
        mutate(t.child(1), names,
               [&](ProofTerm c) { emit(ProofTerm::app(t.child(0), std::move(c))); });
        break;
      case K::kAllElim:
        for (const Term& w : witness_pool)
          if (!(w == t.term()) && w.sort() == t.term().sort())
            emit(ProofTerm::all_elim(t.child(0), w));
        mutate(t.child(0), names,
               [&](ProofTerm c) { emit(ProofTerm::all_elim(std::move(c), t.term())); });
        break;
      case K::kRefl:
        for (const Term& w : witness_pool)
          if (!(w == t.term()) && w.sort() == t.term().sort()) emit(ProofTerm::refl(w));
        break;
      case K::kLam:
        emit(t.child(0));  // unbind the hypothesis
        mutate(t.child(0), names,
               [&](ProofTerm c) { emit(ProofTerm::lam(t.name(), std::move(c))); });
        break;
      case K::kAllIntro:
        mutate(t.child(0), names, [&](ProofTerm c) {
          emit(ProofTerm::all_intro(t.name(), t.var_sort(), std::move(c)));
        });
        break;
      case K::kHole:
        break;
    }
  }
};

void criterion_6() {
  Problem p = parse_problem(slurp(kFixtures / "vectorspace.smt2"));
  PipelineOptions opts;
  ProveArtifacts art = run_prove(p, opts);
  if (art.report.outcome != Outcome::kProved || !art.proof) {
    report(6, "kernel mutation soundness", false, "could not produce the base proof");
    return;
  }
  const Proof& proof = *art.proof;
  CheckContext base = CheckContext::for_problem(p, p.goal.atom);
  Formula goal = Formula::atom(p.goal.atom);
  if (!check_proof(base, proof, goal).ok()) {
    report(6, "kernel mutation soundness", false, "base proof does not check");
    return;
  }

  std::vector<std::string> names;
  for (const auto& ax : p.axioms) names.push_back(ax.name);
  for (const auto& h : p.hypotheses) names.push_back(h.name);
  for (const ProofDef& d : proof.defs) names.push_back(d.name);

  MutationCounter mc;
  mc.witness_pool = {Term::app(p.signature, "u", {}), Term::app(p.signature, "v", {}),
                     Term::app(p.signature, "vec.ze", {})};

  for (size_t di = 0; di < proof.defs.size(); ++di) {
    mc.mutate(proof.defs[di].term, names, [&](ProofTerm mutant_term) {
      if (mutant_term == proof.defs[di].term) return;
      ++mc.mutants;
      Proof mutant = proof;
      mutant.defs[di].term = std::move(mutant_term);
      CheckResult r = check_proof(base, mutant, goal);
      if (r.ok()) {
        ++mc.escapes;
        if (mc.escape_notes.size() < 5) mc.escape_notes.push_back("def " + proof.defs[di].name);
      }
    });
  }
  bool ok = mc.escapes == 0 && mc.mutants >= 200;
  std::ostringstream d;
  d << mc.mutants << " mutants, " << mc.escapes << " escapes";
  for (const std::string& n : mc.escape_notes) d << "; " << n;
  report(6, "every formula-changing mutation of the checked proof is rejected", ok, d.str());
}

// ---- criterion 7: the twelve complex-field goals -----------------------------

void criterion_7() {
  std::vector<std::string> fixtures;
  for (const auto& entry : fs::directory_iterator(kFixtures / "complex")) {
    if (entry.path().extension() == ".smt2") fixtures.push_back(entry.path().string());
  }
  std::sort(fixtures.begin(), fixtures.end());
  int proved_e2e = 0, replayed = 0, unchecked = 0;
  std::ostringstream d;
  for (const std::string& f : fixtures) {
    Problem p = parse_problem(slurp(f));
    auto t0 = std::chrono::steady_clock::now();
    PipelineOptions opts;
    opts.timeout_secs = 18.0;  // three strategies within the 60 s cap
    ProveArtifacts art = run_prove(p, opts);
    double secs = seconds_since(t0);
    std::string base = fs::path(f).stem().string();
    if (art.report.outcome == Outcome::kProved && secs <= 60.0) {
      ++proved_e2e;
      d << base << ":proved(" << static_cast<int>(secs) << "s) ";
      continue;
    }
    fs::path replay = fs::path(f).parent_path() / (base + ".replay.tstp");
    if (fs::exists(replay)) {
      Derivation der = parse_tstp(slurp(replay), p.signature);
      ProveArtifacts rart = run_reconstruct(p, der, {});
      if (rart.report.outcome == Outcome::kProved) {
        ++replayed;
        d << base << ":replayed ";
        continue;
      }
      d << base << ":REPLAY-FAILED(" << rart.report.detail << ") ";
      ++unchecked;
      continue;
    }
    ++unchecked;
    d << base << ":FAILED(" << art.report.detail << ") ";
  }
  bool ok = proved_e2e >= 8 && unchecked == 0 &&
            (proved_e2e + replayed) == static_cast<int>(fixtures.size()) && fixtures.size() == 12;
  std::ostringstream head;
  head << proved_e2e << "/12 proved end-to-end, " << replayed << " replayed; " << d.str();
  report(7, "the twelve complex-field goals yield kernel-checked proofs", ok, head.str());
}

// ---- criterion 8: format round trips -----------------------------------------

void criterion_8() {
  int checked = 0, failures_here = 0;
  // parse-emit identity on every fixture
  std::vector<fs::path> all;
  for (const auto& e : fs::directory_iterator(kFixtures))
    if (e.path().extension() == ".smt2") all.push_back(e.path());
  for (const auto& e : fs::directory_iterator(kFixtures / "complex"))
    if (e.path().extension() == ".smt2") all.push_back(e.path());
  for (const fs::path& f : all) {
    Problem p = parse_problem(slurp(f));
    std::string emitted = emit_problem(p);
    Problem q = parse_problem(emitted);
    if (emit_problem(q) != emitted) ++failures_here;
    ++checked;
  }
  // and on 200 randomized problems
  std::mt19937_64 rng(77);
  for (int i = 0; i < 200; ++i) {
    Problem p = testing::random_surface_problem(rng);
    std::string text = emit_problem(p);
    Problem q = parse_problem(text);
    bool same = emit_problem(q) == text && q.axioms.size() == p.axioms.size() &&
                q.hypotheses.size() == p.hypotheses.size() && q.goal.atom == p.goal.atom;
    for (size_t a = 0; same && a < p.axioms.size(); ++a)
      same = q.axioms[a].clause == p.axioms[a].clause;
    if (!same) ++failures_here;
    ++checked;
  }
  // surface-proof re-parse and re-check identity on pipeline output
  Problem p = parse_problem(slurp(kFixtures / "vectorspace.smt2"));
  ProveArtifacts art = run_prove(p, {});
  if (art.report.outcome == Outcome::kProved) {
    Proof back = parse_surface(art.proof_surface, p.signature);
    if (emit_surface(back, p.signature) != art.proof_surface) ++failures_here;
    CheckContext ctx = CheckContext::for_problem(p, p.goal.atom);
    if (!check_proof(ctx, back, Formula::atom(p.goal.atom)).ok()) ++failures_here;
    ++checked;
  } else {
    ++failures_here;
  }
  bool ok = failures_here == 0;
  std::ostringstream d;
  d << checked << " documents, " << failures_here << " failures";
  report(8, "parse/emit and surface-proof round trips are identities", ok, d.str());
}

}  // namespace

int main(int argc, char** argv) {
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  auto run = [&](int n, void (*fn)()) {
    if (only == 0 || only == n) fn();
  };
  run(1, criterion_1);
  run(2, criterion_2);
  run(3, criterion_3);
  run(4, criterion_4);
  run(5, criterion_5);
  run(6, criterion_6);
  run(7, criterion_7);
  run(8, criterion_8);
  if (failures == 0) {
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
  }
  std::cout << failures << " criteria failed" << std::endl;
  return 1;
}
