#include "hornforge/pipeline.hpp"

#include <chrono>

#include <nlohmann/json.hpp>

#include "hornforge/reconstruct.hpp"
#include "hornforge/transform.hpp"
#include "hornforge/tstp.hpp"

namespace hornforge {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kProved: return "proved";
    case Outcome::kSaturated: return "saturated";
    case Outcome::kReconstructionFailed: return "reconstruction-failed";
    case Outcome::kCheckFailed: return "check-failed";
    case Outcome::kBudgetExhausted: return "budget";
    case Outcome::kUsageError: return "usage-error";
  }
  return "?";
}

std::string RunReport::to_json() const {
  nlohmann::json j;
  j["outcome"] = outcome_name(outcome);
  j["timings"] = timings;
  j["clauses"] = {{"generated", clauses_generated}, {"kept", clauses_kept}};
  j["derivation_steps"] = derivation_steps;
  j["proof_defs"] = proof_defs;
  if (strategy_index >= 0) {
    j["strategy_index"] = strategy_index;
    j["strategy"] = strategy;
  }
  if (!detail.empty()) j["detail"] = detail;
  return j.dump(2) + "\n";
}

namespace {

struct PhaseTimer {
  std::map<std::string, double>& sink;
  std::string phase;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  PhaseTimer(std::map<std::string, double>& s, std::string p) : sink(s), phase(std::move(p)) {}
  ~PhaseTimer() {
    sink[phase] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

std::vector<Strategy> effective_strategies(const PipelineOptions& opts) {
  std::vector<Strategy> s = opts.strategies.empty() ? default_portfolio() : opts.strategies;
  for (Strategy& st : s) {
    if (opts.max_clauses) st.max_clauses = *opts.max_clauses;
    if (opts.timeout_secs) st.max_seconds = *opts.timeout_secs;
    if (opts.no_ordering) st.use_ordering = false;
  }
  return s;
}

// Transform + reconstruct + check; shared by prove and replay.
void finish_from_derivation(const Problem& problem, const Derivation& refutation,
                            const PipelineOptions& opts, ProveArtifacts& out) {
  RunReport& rep = out.report;
  rep.derivation_steps = refutation.steps.size();
  out.derivation = refutation;
  out.derivation_tstp = emit_tstp(refutation, problem.goal.name);

  Derivation transformed;
  Atom goal_atom = problem.goal.atom;
  {
    PhaseTimer t(rep.timings, "transform");
    goal_atom = derivation_goal_atom(refutation);
    transformed = friedmanize(refutation, goal_atom);
  }
  out.transformed_tstp = emit_tstp(transformed, problem.goal.name);

  Proof proof;
  {
    PhaseTimer t(rep.timings, "reconstruct");
    Reconstructor rec(problem, goal_atom);
    proof = rec.reconstruct_derivation(transformed);
  }
  if (opts.normalize) {
    for (ProofDef& d : proof.defs) d.term = normalize_light(d.term);
  }
  rep.proof_defs = proof.defs.size();

  {
    PhaseTimer t(rep.timings, "check");
    CheckContext ctx = CheckContext::for_problem(problem, goal_atom);
    CheckResult r = check_proof(ctx, proof, Formula::atom(problem.goal.atom));
    if (!r.ok()) {
      rep.outcome = Outcome::kCheckFailed;
      rep.detail = r.to_string();
      return;
    }
  }
  out.proof = proof;
  {
    PhaseTimer t(rep.timings, "emit");
    out.proof_surface = emit_surface(proof, problem.signature);
  }
  rep.outcome = Outcome::kProved;
}

}  // namespace

ProveArtifacts run_prove(const Problem& problem, const PipelineOptions& opts) {
  ProveArtifacts out;
  RunReport& rep = out.report;

  ClausifyResult cl = clausify(problem);
  std::vector<Strategy> strategies = effective_strategies(opts);
  double wall = 0;
  for (const Strategy& s : strategies) wall += s.max_seconds;

  SaturationResult sat;
  {
    PhaseTimer t(rep.timings, "saturate");
    sat = run_portfolio(cl.clauses, cl.goal_atom, problem.signature, strategies, wall,
                        opts.sequential);
  }
  rep.clauses_generated = sat.generated;
  rep.clauses_kept = sat.kept;
  rep.strategy_index = sat.strategy_index;
  if (sat.strategy_index >= 0 && sat.strategy_index < static_cast<int>(strategies.size()))
    rep.strategy = strategies[sat.strategy_index].to_string();

  if (sat.outcome == SaturationResult::Outcome::kSaturated) {
    rep.outcome = Outcome::kSaturated;
    rep.detail = "passive set exhausted; goal not derivable";
    return out;
  }
  if (sat.outcome == SaturationResult::Outcome::kBudget) {
    rep.outcome = Outcome::kBudgetExhausted;
    rep.detail = "clause or time budget exhausted";
    return out;
  }

  try {
    finish_from_derivation(problem, sat.derivation, opts, out);
  } catch (const ReconstructionFailure& f) {
    rep.outcome = Outcome::kReconstructionFailed;
    rep.detail = std::string(f.what()) +
                 (f.step_id ? " (step " + std::to_string(f.step_id) + ")" : "");
  } catch (const MalformedDerivation& m) {
    rep.outcome = Outcome::kReconstructionFailed;
    rep.detail = m.what();
  } catch (const std::exception& e) {
    rep.outcome = Outcome::kReconstructionFailed;
    rep.detail = e.what();
  }
  return out;
}

ProveArtifacts run_reconstruct(const Problem& problem, const Derivation& derivation,
                               const PipelineOptions& opts) {
  ProveArtifacts out;
  try {
    finish_from_derivation(problem, derivation, opts, out);
  } catch (const ReconstructionFailure& f) {
    out.report.outcome = Outcome::kReconstructionFailed;
    out.report.detail = std::string(f.what()) +
                        (f.step_id ? " (step " + std::to_string(f.step_id) + ")" : "");
  } catch (const MalformedDerivation& m) {
    out.report.outcome = Outcome::kReconstructionFailed;
    out.report.detail = m.what();
  }
  return out;
}

RunReport run_check(const Problem& problem, const Proof& proof) {
  RunReport rep;
  PhaseTimer t(rep.timings, "check");
  rep.proof_defs = proof.defs.size();
  // Accept proofs of either goal orientation source: the context's ambient
  // distinctness facts are keyed on the problem goal here.
  CheckContext ctx = CheckContext::for_problem(problem, problem.goal.atom);
  CheckResult r = check_proof(ctx, proof, Formula::atom(problem.goal.atom));
  if (r.ok()) {
    rep.outcome = Outcome::kProved;
  } else {
    rep.outcome = Outcome::kCheckFailed;
    rep.detail = r.to_string();
  }
  return rep;
}

}  // namespace hornforge
