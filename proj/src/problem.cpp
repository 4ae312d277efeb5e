#include "hornforge/problem.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hornforge {

const NamedClause* Problem::find_axiom(const std::string& name) const {
  for (const auto& a : axioms)
    if (a.name == name) return &a;
  return nullptr;
}

const NamedAtom* Problem::find_hypothesis(const std::string& name) const {
  for (const auto& h : hypotheses)
    if (h.name == name) return &h;
  return nullptr;
}

const Step* Derivation::find(int id) const {
  for (const Step& s : steps)
    if (s.id == id) return &s;
  return nullptr;
}

bool Derivation::is_refutation() const {
  return !steps.empty() && steps.back().clause.is_empty_goal();
}

Derivation Derivation::pruned_to_refutation() const {
  if (steps.empty()) return {};
  std::set<int> keep;
  std::vector<int> work{steps.back().id};
  while (!work.empty()) {
    int id = work.back();
    work.pop_back();
    if (!keep.insert(id).second) continue;
    const Step* s = find(id);
    if (!s) throw std::runtime_error("dangling premise id " + std::to_string(id));
    if (const auto* inf = std::get_if<JustInference>(&s->just))
      for (int p : inf->premises) work.push_back(p);
  }
  Derivation out;
  std::map<int, int> remap;
  for (const Step& s : steps) {
    if (!keep.count(s.id)) continue;
    Step ns = s;
    ns.id = static_cast<int>(out.steps.size()) + 1;
    remap[s.id] = ns.id;
    if (auto* inf = std::get_if<JustInference>(&ns.just))
      for (int& p : inf->premises) p = remap.at(p);
    out.steps.push_back(std::move(ns));
  }
  return out;
}

ClausifyResult clausify(const Problem& p) {
  ClausifyResult r;
  int id = 1;
  for (const auto& ax : p.axioms) {
    Step s;
    s.id = id++;
    s.clause = ax.clause;
    s.just = JustInput{ax.name};
    s.role = "axiom";
    r.clauses.push_back(std::move(s));
  }
  for (const auto& hyp : p.hypotheses) {
    Step s;
    s.id = id++;
    s.clause = HornClause::close({}, Head::make_atom(hyp.atom));
    s.just = JustInput{hyp.name};
    s.role = "axiom";
    r.clauses.push_back(std::move(s));
  }
  Step goal_clause;
  goal_clause.id = id++;
  goal_clause.clause = HornClause::close({p.goal.atom}, Head::falsum());
  goal_clause.just = JustNegatedConjecture{};
  goal_clause.role = "negated_conjecture";
  r.clauses.push_back(std::move(goal_clause));
  r.goal_atom = p.goal.atom;
  return r;
}

}  // namespace hornforge
