#pragma once

#include <string>
#include <variant>
#include <vector>

#include "hornforge/clause.hpp"

namespace hornforge {

struct NamedClause {
  std::string name;
  HornClause clause;
};

struct NamedAtom {
  std::string name;
  Atom atom;
};

/// Statement order of the surface file, so emission reproduces the input
/// layout (declarations may be interleaved with asserts).
struct LayoutItem {
  enum class Kind : uint8_t { kSort, kFunction, kDatatype, kAxiom, kHypothesis, kGoal };
  Kind kind;
  std::string name;
};

/// A parsed problem: signature, named universally quantified Horn axioms,
/// named ground hypotheses (goal premises turned into constants), and the
/// ground goal atom.
struct Problem {
  Signature signature;
  std::vector<NamedClause> axioms;
  std::vector<NamedAtom> hypotheses;
  NamedAtom goal;
  std::vector<LayoutItem> layout;

  const NamedClause* find_axiom(const std::string& name) const;
  const NamedAtom* find_hypothesis(const std::string& name) const;
};

struct JustInput {
  std::string name;
  bool operator==(const JustInput&) const = default;
};
struct JustNegatedConjecture {
  bool operator==(const JustNegatedConjecture&) const = default;
};
struct JustInference {
  std::string rule;
  std::vector<int> premises;  // step ids
  bool operator==(const JustInference&) const = default;
};
using Justification = std::variant<JustInput, JustNegatedConjecture, JustInference>;

struct Step {
  int id = 0;
  HornClause clause;
  Justification just;
  std::string role;  // TSTP role as read; informational except negated_conjecture
};

/// DAG of steps; premise ids strictly precede each step.
struct Derivation {
  std::vector<Step> steps;

  const Step* find(int id) const;
  const Step& last() const { return steps.back(); }
  bool is_refutation() const;
  /// Keeps only ancestors of the final step, renumbering 1..n in order.
  Derivation pruned_to_refutation() const;
};

/// Problem -> input clause set plus the goal atom. One clause per axiom, one
/// unit clause per hypothesis, then the goal clause (G -> falsum) last.
struct ClausifyResult {
  std::vector<Step> clauses;  // justifications prefilled, ids 1..n
  Atom goal_atom;
};
ClausifyResult clausify(const Problem& p);

}  // namespace hornforge
