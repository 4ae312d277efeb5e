#include "hornforge/transform.hpp"

#include "hornforge/reconstruct.hpp"

namespace hornforge {

Atom derivation_goal_atom(const Derivation& d) {
  for (const Step& s : d.steps) {
    if (!std::holds_alternative<JustNegatedConjecture>(s.just)) continue;
    const HornClause& c = s.clause;
    if (c.body().size() == 1 && (c.head().is_falsum() || c.head().is_goal()) &&
        c.body()[0].is_ground())
      return c.body()[0];
    throw MalformedDerivation("negated-conjecture step is not a ground goal clause G -> falsum",
                              s.id);
  }
  throw MalformedDerivation("derivation has no negated-conjecture step", 0);
}

Derivation friedmanize(const Derivation& d, const Atom& goal) {
  if (!goal.is_ground())
    throw MalformedDerivation("goal atom must be ground: " + goal.to_string(), 0);
  if (d.steps.empty() || !(d.steps.back().clause.is_empty_goal() ||
                           (d.steps.back().clause.head().is_goal() &&
                            d.steps.back().clause.body().empty())))
    throw MalformedDerivation("derivation is not a refutation (final clause is not empty)", 0);

  Derivation out;
  out.steps.reserve(d.steps.size());
  for (const Step& s : d.steps) {
    Step ns = s;
    if (ns.clause.head().is_falsum())
      ns.clause = HornClause::make(ns.clause.vars(), ns.clause.body(), Head::goal(goal));
    out.steps.push_back(std::move(ns));
  }

  // Re-validate every inference that consumed a former goal clause: by the
  // case analysis behind the transformation the same rule instance must
  // re-conclude with the boxed atom in place of falsum.
  for (const Step& s : out.steps) {
    const auto* inf = std::get_if<JustInference>(&s.just);
    if (!inf) continue;
    bool touches_goal = s.clause.head().is_goal();
    std::vector<HornClause> premises;
    for (int pid : inf->premises) {
      const Step* p = out.find(pid);
      if (!p || pid >= s.id)
        throw MalformedDerivation("dangling or non-monotone premise " + std::to_string(pid),
                                  s.id);
      if (p->clause.head().is_goal()) touches_goal = true;
      premises.push_back(p->clause);
    }
    if (!touches_goal) continue;
    StepValidation v = validate_step(premises, s.clause, inf->rule);
    if (!v.valid)
      throw MalformedDerivation("step " + std::to_string(s.id) +
                                    " cannot be re-concluded after the transformation: " +
                                    v.reason,
                                s.id);
  }
  return out;
}

StepValidation validate_step(const std::vector<HornClause>& premises,
                             const HornClause& conclusion, const std::string& rule_name) {
  StepValidation out;
  std::string rule = normalize_rule_name(rule_name);
  if (!rule_supported(rule)) {
    out.reason = "unknown rule: " + rule_name;
    return out;
  }
  std::string explored;
  auto inst = find_rule_instance(premises, conclusion, rule, &explored);
  if (!inst) {
    out.reason = explored;
    return out;
  }
  out.valid = true;
  return out;
}

}  // namespace hornforge
