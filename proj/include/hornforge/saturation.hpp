#pragma once

#include <atomic>
#include <string>
#include <vector>

#include "hornforge/problem.hpp"
#include "hornforge/rules.hpp"

namespace hornforge {

/// One prover configuration. The ratio alternates clause selection between
/// the age queue and the weight queue; use_ordering restricts superposition
/// to not-smaller rewrites under KBO.
struct Strategy {
  int age_ratio = 1;
  int weight_ratio = 4;
  bool use_ordering = true;
  size_t max_clauses = 10000;
  double max_seconds = 10.0;

  std::string to_string() const;
  /// "A:W[:ordered|:unordered]"
  static Strategy parse(const std::string& text);
};

/// {1:1 unordered, 1:4 ordered, 4:1 ordered}
std::vector<Strategy> default_portfolio();

struct SaturationResult {
  enum class Outcome : uint8_t { kRefutation, kSaturated, kBudget };
  Outcome outcome = Outcome::kBudget;
  Derivation derivation;      // pruned refutation when proved
  size_t generated = 0;       // clauses produced by inferences
  size_t kept = 0;            // clauses surviving simplification
  double seconds = 0.0;
  int strategy_index = -1;    // filled by run_portfolio
};

/// Given-clause saturation over Horn clauses. `inputs` carries the clausified
/// problem (axioms, hypotheses, exactly one goal clause). `cancel`, when set,
/// aborts with a budget outcome as soon as it becomes true.
SaturationResult saturate(const std::vector<Step>& inputs, const Atom& goal_atom,
                          const Signature& sig, const Strategy& strategy,
                          const std::atomic<bool>* cancel = nullptr);

/// Runs the strategies and returns the first success, deterministically by
/// strategy index: a success cancels strategies with larger indices only, and
/// the lowest-index success wins. `sequential` runs them in order instead.
SaturationResult run_portfolio(const std::vector<Step>& inputs, const Atom& goal_atom,
                               const Signature& sig, const std::vector<Strategy>& strategies,
                               double wall_budget_seconds, bool sequential);

}  // namespace hornforge
