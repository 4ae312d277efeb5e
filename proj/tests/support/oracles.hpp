#pragma once

#include <map>
#include <vector>

#include "hornforge/clause.hpp"
#include "hornforge/term.hpp"

namespace hornforge::testing {

/// Congruence closure over ground terms: union-find keyed by term identity
/// with naive congruence propagation to a fixed point. Test oracle only.
class CongruenceClosure {
 public:
  void assert_equal(const Term& a, const Term& b);
  bool equal(const Term& a, const Term& b);

 private:
  int node(const Term& t);
  int find(int i);
  void merge(int a, int b);
  void propagate();

  std::map<Term, int> ids_;
  std::vector<Term> terms_;
  std::vector<int> parent_;
};

/// Ground Horn entailment by forward chaining with congruence closure over
/// derived equations. All clauses must be ground.
bool ground_entails(const std::vector<HornClause>& clauses, const Atom& goal);

/// All simultaneous assignments over the variables of s and t whose ranges
/// are terms of depth <= max_depth over the signature's functions plus the
/// given variable pool, filtered to unifiers of s and t. Plain maps: swaps
/// like {x->y, y->x} are legitimate unifiers.
std::vector<Matcher> enumerate_unifiers(const Term& s, const Term& t, const Signature& sig,
                                        const std::vector<SortedVar>& var_pool, int max_depth);

/// Solves tau = rho . mgu variable by variable; true when a consistent rho
/// exists (i.e. tau factors through the mgu).
bool factors_through(const Substitution& mgu_subst, const Matcher& tau,
                     const std::vector<SortedVar>& vars);

}  // namespace hornforge::testing
