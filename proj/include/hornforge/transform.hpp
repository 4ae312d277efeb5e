#pragma once

#include "hornforge/problem.hpp"

namespace hornforge {

struct MalformedDerivation : std::runtime_error {
  int step_id = 0;
  MalformedDerivation(std::string msg, int step) : std::runtime_error(std::move(msg)), step_id(step) {}
};

/// The bottom-to-goal transformation: every falsum head in the refutation is
/// replaced by the boxed ground atom G. The root goal clause G -> falsum
/// becomes the tautology G -> G; the final empty clause becomes -> G. Steps
/// whose premises include a former goal clause are re-validated, and a step
/// that cannot be re-concluded by the same rule raises MalformedDerivation.
Derivation friedmanize(const Derivation& d, const Atom& goal);

/// Idempotent on already-transformed derivations.

struct StepValidation {
  bool valid = false;
  std::string reason;
};

/// Valid iff some instantiation of the named rule (any literal choice,
/// position, orientation, unifier) concludes `conclusion` from `premises` up
/// to variable renaming and body-multiset equality. Input-like steps (no
/// premises) are valid as leaves. Unknown rule names are reported distinctly.
StepValidation validate_step(const std::vector<HornClause>& premises,
                             const HornClause& conclusion, const std::string& rule_name);

/// The goal atom stated by a refutation's root goal clause (the single
/// negated-conjecture step with body [G] and falsum head).
Atom derivation_goal_atom(const Derivation& d);

}  // namespace hornforge
