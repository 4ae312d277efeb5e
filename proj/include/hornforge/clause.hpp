#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hornforge/term.hpp"

namespace hornforge {

/// Predicate application or equation. Equations carry the shared sort of
/// their sides and are stored in input orientation; symmetry is handled at
/// matching time, never by sorting.
class Atom {
 public:
  static Atom predicate(std::string name, std::vector<Term> args);
  static Atom equation(Term lhs, Term rhs);

  bool is_equation() const { return is_equation_; }
  const std::string& predicate_name() const { return name_; }
  std::span<const Term> args() const { return args_; }
  const Term& lhs() const { return args_[0]; }
  const Term& rhs() const { return args_[1]; }
  const std::string& sort() const { return sort_; }  // equations only

  bool is_ground() const;
  size_t weight() const;
  Atom apply(const Substitution& s) const;
  /// One-shot substitution by name (renamings, instantiation).
  Atom apply(const Matcher& m) const;
  Atom flipped() const;  // equations only
  void collect_vars(std::vector<std::pair<std::string, std::string>>& out) const;

  bool operator==(const Atom& other) const;
  bool operator!=(const Atom& other) const { return !(*this == other); }
  bool operator<(const Atom& other) const;

  /// Structural equality modulo equation orientation.
  bool equal_modulo_orientation(const Atom& other) const;

  std::string to_string() const;

 private:
  bool is_equation_ = false;
  std::string name_;  // predicate name; empty for equations
  std::string sort_;  // equation sort; empty for predicates
  std::vector<Term> args_;
};

/// Both orientations of an equation (deduped when degenerate); predicates map
/// to the singleton.
std::vector<Atom> equation_orientations(const Atom& a);

struct Head {
  enum class Kind : uint8_t { kAtom, kFalsum, kGoal };

  Kind kind = Kind::kFalsum;
  std::optional<Atom> atom;  // present for kAtom and kGoal

  static Head make_atom(Atom a) { return Head{Kind::kAtom, std::move(a)}; }
  static Head falsum() { return Head{Kind::kFalsum, std::nullopt}; }
  /// Substituted-bottom marker: the atom must be ground.
  static Head goal(Atom a);

  bool is_atom() const { return kind == Kind::kAtom; }
  bool is_falsum() const { return kind == Kind::kFalsum; }
  bool is_goal() const { return kind == Kind::kGoal; }

  bool operator==(const Head& other) const;
  std::string to_string() const;
};

using SortedVar = std::pair<std::string, std::string>;  // (name, sort)

enum class ClauseKind : uint8_t { kDefinite, kGoal };

/// body -> head with an explicit universal prefix. Construction validates
/// variable closure; goal-atom heads must be ground.
class HornClause {
 public:
  HornClause() = default;

  static HornClause make(std::vector<SortedVar> vars, std::vector<Atom> body, Head head);
  /// Computes the prefix from free variables in first-occurrence order.
  static HornClause close(std::vector<Atom> body, Head head);

  const std::vector<SortedVar>& vars() const { return vars_; }
  const std::vector<Atom>& body() const { return body_; }
  const Head& head() const { return head_; }

  ClauseKind classify() const { return head_.is_atom() ? ClauseKind::kDefinite : ClauseKind::kGoal; }
  bool is_ground() const;
  bool is_empty_goal() const { return head_.is_falsum() && body_.empty(); }
  /// Definite with empty body and an equation head.
  bool is_unit_equation() const;
  size_t weight() const;

  /// Applies a substitution to body and head; boxed (goal) heads are copied
  /// unchanged, which is sound because they are ground. Prefix recomputed.
  HornClause substituted(const Substitution& s) const;

  bool operator==(const HornClause& other) const;
  std::string to_string() const;

 private:
  std::vector<SortedVar> vars_;
  std::vector<Atom> body_;
  Head head_;
};

/// Result of a flexible variant match between a derived clause and a stated
/// one: a bijective renaming, a body permutation, and per-atom orientation
/// flips (head and body). Equations may match in either orientation.
struct VariantMatch {
  Matcher renaming;                   // derived vars -> stated vars (one-shot)
  std::vector<size_t> body_perm;      // derived body index -> stated body index
  std::vector<bool> body_flipped;     // per derived body atom
  bool head_flipped = false;
};

/// Exact variant: renaming + body multiset equality, equations matched only
/// in stored orientation.
std::optional<VariantMatch> variant_match(const HornClause& derived, const HornClause& stated);
/// Flexible variant: additionally allows per-equation orientation flips.
std::optional<VariantMatch> variant_match_flex(const HornClause& derived, const HornClause& stated);

/// Canonical renaming of the prefix to v0, v1, ... in first-occurrence order
/// (body left to right, then head). Used for clause-level deduplication.
HornClause canonicalize(const HornClause& c);

}  // namespace hornforge
