#pragma once

#include <functional>
#include <optional>

#include "hornforge/clause.hpp"
#include "hornforge/kbo.hpp"

namespace hornforge {

/// Where a superposition rewrite lands inside a clause.
struct Location {
  bool in_head = false;
  size_t body_index = 0;              // meaningful when !in_head
  std::vector<size_t> path;           // into the atom: path[0] selects the argument
};

/// A successful rule application together with the data reconstruction needs
/// to replay it as a proof term.
struct RuleApplication {
  HornClause conclusion;
  Substitution sigma;            // the unifier, over renamed copies
  Substitution renaming;         // renaming applied to the second premise (or the equation clause)
  std::vector<std::pair<size_t, std::vector<size_t>>> rewrites;  // (atom slot, path); slot 0..n-1 = body, n = head
  Term redex;                    // sigma(l'), for superposition
  Term replacement;              // sigma(r'), for superposition
};

/// Resolution of a definite `left` against body atom `body_index` of `right`.
/// `flip` unifies against the flipped orientation of the right-hand atom.
std::optional<RuleApplication> resolution(const HornClause& left, const HornClause& right,
                                          size_t body_index, bool flip, FreshNames& fresh);

/// Merges body atoms i and j (the j copy is dropped).
std::optional<RuleApplication> factoring(const HornClause& c, size_t i, size_t j, bool flip,
                                         FreshNames& fresh);

/// Removes body equation i after unifying its sides.
std::optional<RuleApplication> equality_resolution(const HornClause& c, size_t i);

/// Rewrites `target` at `loc` with the (possibly flipped) unit-oriented head
/// equation of `eq_clause`. When `simultaneous` is set, every occurrence of
/// the unified redex instance across the clause is replaced, matching the
/// behaviour of the prover this replays. Boxed goal heads are never rewritten.
std::optional<RuleApplication> superposition(const HornClause& eq_clause, bool eq_flip,
                                             const HornClause& target, const Location& loc,
                                             FreshNames& fresh, bool simultaneous);

/// Simplification: rewrites the leftmost-innermost subterm of `target` that
/// matches an instance of `unit`'s head with the instance strictly decreasing
/// under `ord`. Returns nullopt when nothing matches (NoChange).
std::optional<RuleApplication> demodulate(const HornClause& unit, const HornClause& target,
                                          const Kbo& ord);

/// True iff a substitution embeds `general`'s body into a sub-multiset of
/// `specific`'s body and maps its head onto `specific`'s head. Equations
/// match in either orientation.
bool subsumes(const HornClause& general, const HornClause& specific);

/// Pre-order (leftmost-outermost) enumeration of non-variable positions of an
/// atom. The callback returns true to keep going, false to stop.
void for_each_position(const Atom& a,
                       const std::function<bool(const Term&, const std::vector<size_t>&)>& fn);

}  // namespace hornforge
