#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hornforge/kernel.hpp"
#include "hornforge/problem.hpp"
#include "hornforge/rules.hpp"

namespace hornforge {

/// A replayed inference: which rule, which premises, and the concrete choices
/// (indices, position, orientations, unifier) that reproduce the step.
struct RuleInstance {
  std::string rule;
  std::vector<int> premises;
  int main_premise = -1;   // index into `premises` of the target/right/main clause
  int side_premise = -1;   // the definite/equation/side clause, when the rule has one
  int body_index = -1;
  int body_index2 = -1;
  Location location;
  bool flipped = false;             // orientation of the unified atom / equation
  bool head_flipped = false;        // stated conclusion head is the flip of the derived one
  bool simultaneous = false;
  Substitution unifier;

  std::string to_string() const;
};

struct ReconstructionFailure : std::runtime_error {
  enum class Kind : uint8_t { kNoInstanceFound, kUnsupportedRule };
  Kind kind;
  int step_id = 0;
  ReconstructionFailure(Kind k, std::string msg, int step = 0)
      : std::runtime_error(std::move(msg)), kind(k), step_id(step) {}
};

/// Canonical spelling of an external rule name (lowercase, underscores).
std::string normalize_rule_name(const std::string& name);
bool rule_supported(const std::string& normalized);

/// Backtracking search for a rule instance deriving `conclusion` from
/// `premises` up to renaming, body-multiset equality, and equation
/// orientation. Enumeration order is fixed: premises in given order, body
/// atoms left to right, positions leftmost-outermost, stored orientation
/// before flipped; first success wins.
/// `sig` enables the constructor checks of the injectivity/distinctness
/// rules; without it those rules fall back to a structural shape check.
std::optional<RuleInstance> find_rule_instance(const std::vector<HornClause>& premises,
                                               const HornClause& conclusion,
                                               const std::string& rule_name,
                                               std::string* explored = nullptr,
                                               const Signature* sig = nullptr);

/// Witness search for universal instantiation with no constraint: prefers an
/// in-scope binder of the sort, then a nullary constant, then the smallest
/// ground term of depth <= 2. nullopt when the sort is uninhabited.
std::optional<Term> find_witness(const std::string& sort, const std::vector<SortedVar>& binders,
                                 const Signature& sig);

/// Rebuilds a transformed derivation as a checked proof document.
class Reconstructor {
 public:
  /// `derivation_goal` is the goal atom as stated by the derivation's root
  /// goal clause (its orientation may differ from the problem goal).
  Reconstructor(const Problem& problem, const Atom& derivation_goal);

  /// One step: returns the instance and a kernel-checked term whose formula
  /// is exactly the step clause. Throws ReconstructionFailure.
  std::pair<RuleInstance, ProofTerm> reconstruct_step(
      const std::vector<std::pair<HornClause, std::string>>& premises,
      const HornClause& conclusion, const std::string& rule_name);

  /// Whole (transformed) derivation -> proof ending in a def named "goal"
  /// whose formula is the problem's goal atom. Unused steps are pruned.
  Proof reconstruct_derivation(const Derivation& transformed);

  const CheckContext& context() const { return ctx_; }

 private:
  ProofTerm build_input_like(const HornClause& stated, const HornClause& premise_clause,
                             const std::string& premise_ref, const VariantMatch& m) const;

  const Problem* problem_;
  Atom goal_;
  CheckContext ctx_;
};

}  // namespace hornforge
