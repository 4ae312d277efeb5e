#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hornforge/kernel.hpp"
#include "hornforge/problem.hpp"
#include "hornforge/saturation.hpp"

namespace hornforge {

/// Exit/outcome classes shared by the CLI and the bindings.
enum class Outcome : uint8_t {
  kProved = 0,
  kSaturated = 2,
  kReconstructionFailed = 3,
  kCheckFailed = 4,
  kBudgetExhausted = 5,
  kUsageError = 64,
};

const char* outcome_name(Outcome o);

struct PipelineOptions {
  std::vector<Strategy> strategies;  // empty -> default portfolio
  std::optional<size_t> max_clauses;
  std::optional<double> timeout_secs;
  bool sequential = true;
  bool no_ordering = false;
  bool normalize = false;
  uint64_t seed = 0;  // reserved for test-corpus generation; recorded only
};

struct RunReport {
  Outcome outcome = Outcome::kUsageError;
  std::map<std::string, double> timings;  // per phase, seconds
  size_t clauses_generated = 0;
  size_t clauses_kept = 0;
  size_t derivation_steps = 0;
  size_t proof_defs = 0;
  int strategy_index = -1;
  std::string strategy;
  std::string detail;  // human-readable failure detail

  std::string to_json() const;
};

struct ProveArtifacts {
  RunReport report;
  std::string derivation_tstp;    // refutation, when found
  std::string transformed_tstp;
  std::string proof_surface;
  std::optional<Derivation> derivation;
  std::optional<Proof> proof;
};

/// Full pipeline: clausify, saturate (portfolio), transform, reconstruct,
/// kernel-check, render. Never throws on prover-level failures; parse errors
/// propagate as exceptions.
ProveArtifacts run_prove(const Problem& problem, const PipelineOptions& opts);

/// Replay pipeline: transform + reconstruct + check an external derivation.
ProveArtifacts run_reconstruct(const Problem& problem, const Derivation& derivation,
                               const PipelineOptions& opts);

/// Kernel check of a surface proof against the problem's goal.
RunReport run_check(const Problem& problem, const Proof& proof);

}  // namespace hornforge
