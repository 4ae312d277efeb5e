#include "hornforge/rules.hpp"

#include <algorithm>

namespace hornforge {

namespace {

// Unifies two atoms; `flip` flips the second one first (equations only).
bool unify_atoms(const Atom& a, const Atom& b, bool flip, Substitution& acc) {
  UnifyFailure why;
  if (a.is_equation() != b.is_equation()) return false;
  if (a.is_equation()) {
    if (a.sort() != b.sort()) return false;
    const Term& bl = flip ? b.rhs() : b.lhs();
    const Term& br = flip ? b.lhs() : b.rhs();
    return unify_into(a.lhs(), bl, acc, why) && unify_into(a.rhs(), br, acc, why);
  }
  if (flip) return false;
  if (a.predicate_name() != b.predicate_name() || a.args().size() != b.args().size()) return false;
  for (size_t i = 0; i < a.args().size(); ++i)
    if (!unify_into(a.args()[i], b.args()[i], acc, why)) return false;
  return true;
}

std::vector<SortedVar> clause_vars(const HornClause& c) { return c.vars(); }

Head substituted_head(const Head& h, const Substitution& s) {
  Head out = h;
  if (out.is_atom()) out.atom = out.atom->apply(s);
  return out;  // falsum and ground boxed atoms are copied unchanged
}

}  // namespace

void for_each_position(const Atom& a,
                       const std::function<bool(const Term&, const std::vector<size_t>&)>& fn) {
  std::vector<size_t> path;
  std::function<bool(const Term&)> walk = [&](const Term& t) -> bool {
    if (t.is_var()) return true;
    if (!fn(t, path)) return false;
    for (size_t k = 0; k < t.args().size(); ++k) {
      path.push_back(k);
      bool keep = walk(t.args()[k]);
      path.pop_back();
      if (!keep) return false;
    }
    return true;
  };
  for (size_t i = 0; i < a.args().size(); ++i) {
    path.assign(1, i);
    if (!walk(a.args()[i])) return;
  }
}

std::optional<RuleApplication> resolution(const HornClause& left, const HornClause& right,
                                          size_t body_index, bool flip, FreshNames& fresh) {
  if (!left.head().is_atom()) return std::nullopt;
  if (body_index >= right.body().size()) return std::nullopt;
  Substitution ren = rename_apart(clause_vars(left), clause_vars(right), fresh);
  Atom target = right.body()[body_index].apply(ren);
  Substitution sigma;
  if (!unify_atoms(*left.head().atom, target, flip, sigma)) return std::nullopt;

  std::vector<Atom> body;
  for (const Atom& a : left.body()) body.push_back(a.apply(sigma));
  for (size_t i = 0; i < right.body().size(); ++i) {
    if (i == body_index) continue;
    body.push_back(right.body()[i].apply(ren).apply(sigma));
  }
  Head head = substituted_head(right.head(), Substitution::compose(sigma, ren));

  RuleApplication app;
  app.conclusion = HornClause::close(std::move(body), std::move(head));
  app.sigma = std::move(sigma);
  app.renaming = std::move(ren);
  return app;
}

std::optional<RuleApplication> factoring(const HornClause& c, size_t i, size_t j, bool flip,
                                         FreshNames&) {
  if (i == j || i >= c.body().size() || j >= c.body().size()) return std::nullopt;
  Substitution sigma;
  if (!unify_atoms(c.body()[i], c.body()[j], flip, sigma)) return std::nullopt;
  std::vector<Atom> body;
  for (size_t k = 0; k < c.body().size(); ++k) {
    if (k == j) continue;
    body.push_back(c.body()[k].apply(sigma));
  }
  RuleApplication app;
  app.conclusion = HornClause::close(std::move(body), substituted_head(c.head(), sigma));
  app.sigma = std::move(sigma);
  return app;
}

std::optional<RuleApplication> equality_resolution(const HornClause& c, size_t i) {
  if (i >= c.body().size() || !c.body()[i].is_equation()) return std::nullopt;
  Substitution sigma;
  UnifyFailure why;
  if (!unify_into(c.body()[i].lhs(), c.body()[i].rhs(), sigma, why)) return std::nullopt;
  std::vector<Atom> body;
  for (size_t k = 0; k < c.body().size(); ++k) {
    if (k == i) continue;
    body.push_back(c.body()[k].apply(sigma));
  }
  RuleApplication app;
  app.conclusion = HornClause::close(std::move(body), substituted_head(c.head(), sigma));
  app.sigma = std::move(sigma);
  return app;
}

std::optional<RuleApplication> superposition(const HornClause& eq_clause, bool eq_flip,
                                             const HornClause& target, const Location& loc,
                                             FreshNames& fresh, bool simultaneous) {
  if (!eq_clause.head().is_atom() || !eq_clause.head().atom->is_equation()) return std::nullopt;
  const Atom& eq_head = *eq_clause.head().atom;

  const Atom* atom = nullptr;
  if (loc.in_head) {
    if (!target.head().is_atom()) return std::nullopt;  // never rewrite falsum or boxed atoms
    atom = &*target.head().atom;
  } else {
    if (loc.body_index >= target.body().size()) return std::nullopt;
    atom = &target.body()[loc.body_index];
  }
  if (loc.path.empty()) return std::nullopt;
  size_t arg = loc.path[0];
  if (arg >= atom->args().size()) return std::nullopt;
  std::span<const size_t> rest(loc.path.data() + 1, loc.path.size() - 1);
  const Term* sub = nullptr;
  try {
    sub = &atom->args()[arg].at(rest);
  } catch (const std::runtime_error&) {
    return std::nullopt;
  }
  if (sub->is_var()) return std::nullopt;  // no superposition into variables

  Substitution ren = rename_apart(clause_vars(target), clause_vars(eq_clause), fresh);
  Term l = ren.apply(eq_flip ? eq_head.rhs() : eq_head.lhs());
  Term r = ren.apply(eq_flip ? eq_head.lhs() : eq_head.rhs());

  Substitution sigma;
  UnifyFailure why;
  if (!unify_into(l, *sub, sigma, why)) return std::nullopt;

  Term redex = sigma.apply(l);
  Term replacement = sigma.apply(r);

  RuleApplication app;
  app.sigma = sigma;
  app.renaming = ren;
  app.redex = redex;
  app.replacement = replacement;

  Substitution eq_subst = Substitution::compose(sigma, ren);
  std::vector<Atom> body;
  for (const Atom& a : eq_clause.body()) body.push_back(a.apply(eq_subst));
  size_t eq_body_count = body.size();

  auto rewrite_atom = [&](const Atom& original, size_t slot, bool is_located_atom) -> Atom {
    Atom inst = original.apply(sigma);
    if (simultaneous) {
      std::vector<Term> new_args;
      bool changed = false;
      for (size_t ai = 0; ai < inst.args().size(); ++ai) {
        size_t count = 0;
        Term res = inst.args()[ai].replace_all(redex, replacement, &count);
        if (count > 0) changed = true;
        new_args.push_back(std::move(res));
      }
      if (changed) {
        // Record every replaced position for proof-term construction.
        for_each_position(inst, [&](const Term& t, const std::vector<size_t>& p) {
          if (t == redex) app.rewrites.emplace_back(slot, p);
          return true;
        });
        if (inst.is_equation()) return Atom::equation(new_args[0], new_args[1]);
        return Atom::predicate(inst.predicate_name(), std::move(new_args));
      }
      return inst;
    }
    if (!is_located_atom) return inst;
    // Single-position rewrite at the located path.
    std::span<const size_t> tail(loc.path.data() + 1, loc.path.size() - 1);
    Term rewritten = inst.args()[loc.path[0]].replace_at(tail, replacement);
    app.rewrites.emplace_back(slot, loc.path);
    std::vector<Term> args(inst.args().begin(), inst.args().end());
    args[loc.path[0]] = rewritten;
    if (inst.is_equation()) return Atom::equation(args[0], args[1]);
    return Atom::predicate(inst.predicate_name(), std::move(args));
  };

  for (size_t i = 0; i < target.body().size(); ++i)
    body.push_back(rewrite_atom(target.body()[i], eq_body_count + i,
                                !loc.in_head && i == loc.body_index));

  Head head = target.head();
  if (head.is_atom()) {
    Atom h = rewrite_atom(*head.atom, eq_body_count + target.body().size(), loc.in_head);
    head = Head::make_atom(std::move(h));
  }
  // Sanity: the located position must actually have been rewritten.
  if (app.rewrites.empty()) return std::nullopt;

  app.conclusion = HornClause::close(std::move(body), std::move(head));
  return app;
}

std::optional<RuleApplication> demodulate(const HornClause& unit, const HornClause& target,
                                          const Kbo& ord) {
  if (!unit.is_unit_equation()) return std::nullopt;
  const Atom& eq = *unit.head().atom;

  // Scan body atoms left to right, then the head; within an atom, arguments
  // left to right, innermost subterms first.
  struct Slot {
    const Atom* atom;
    size_t index;  // body index, or body.size() for the head
    bool in_head;
  };
  std::vector<Slot> slots;
  for (size_t i = 0; i < target.body().size(); ++i)
    slots.push_back({&target.body()[i], i, false});
  if (target.head().is_atom())
    slots.push_back({&*target.head().atom, target.body().size(), true});

  for (const Slot& slot : slots) {
    // Collect positions in leftmost-innermost order (post-order).
    std::vector<std::vector<size_t>> positions;
    std::function<void(const Term&, std::vector<size_t>&)> post = [&](const Term& t,
                                                                      std::vector<size_t>& path) {
      if (t.is_var()) return;
      for (size_t i = 0; i < t.args().size(); ++i) {
        path.push_back(i);
        post(t.args()[i], path);
        path.pop_back();
      }
      positions.push_back(path);
    };
    for (size_t ai = 0; ai < slot.atom->args().size(); ++ai) {
      std::vector<size_t> path{ai};
      post(slot.atom->args()[ai], path);
    }
    for (const auto& pos : positions) {
      const Term& sub = slot.atom->args()[pos[0]].at(
          std::span<const size_t>(pos.data() + 1, pos.size() - 1));
      for (bool flip : {false, true}) {
        const Term& l = flip ? eq.rhs() : eq.lhs();
        const Term& r = flip ? eq.lhs() : eq.rhs();
        // Orientability requires every right-side variable to be bound by
        // the match; x = y rewrites in neither direction.
        std::vector<std::pair<std::string, std::string>> lv, rv;
        l.collect_vars(lv);
        r.collect_vars(rv);
        bool covered = true;
        for (const auto& [n, s] : rv) {
          bool found = false;
          for (const auto& [ln, ls] : lv) found = found || ln == n;
          covered = covered && found;
        }
        if (!covered) continue;
        Matcher theta;
        if (!match_into(l, sub, theta)) continue;
        Term lhs_inst = theta.apply(l);
        Term rhs_inst = theta.apply(r);
        if (!ord.greater(lhs_inst, rhs_inst)) continue;

        std::span<const size_t> tail(pos.data() + 1, pos.size() - 1);
        Term rewritten = slot.atom->args()[pos[0]].replace_at(tail, rhs_inst);
        std::vector<Term> args(slot.atom->args().begin(), slot.atom->args().end());
        args[pos[0]] = rewritten;
        Atom new_atom = slot.atom->is_equation()
                            ? Atom::equation(args[0], args[1])
                            : Atom::predicate(slot.atom->predicate_name(), std::move(args));

        std::vector<Atom> body = target.body();
        Head head = target.head();
        if (slot.in_head) {
          head = Head::make_atom(std::move(new_atom));
        } else {
          body[slot.index] = std::move(new_atom);
        }
        RuleApplication app;
        app.conclusion = HornClause::close(std::move(body), std::move(head));
        app.redex = lhs_inst;
        app.replacement = rhs_inst;
        app.rewrites.emplace_back(slot.index, pos);
        return app;
      }
    }
  }
  return std::nullopt;
}

namespace {

bool match_atoms_flex(const Atom& pat, const Atom& subj, Matcher& acc, bool* flipped) {
  if (pat.is_equation() != subj.is_equation()) return false;
  if (!pat.is_equation()) {
    if (pat.predicate_name() != subj.predicate_name() ||
        pat.args().size() != subj.args().size())
      return false;
    Matcher save = acc;
    for (size_t i = 0; i < pat.args().size(); ++i) {
      if (!match_into(pat.args()[i], subj.args()[i], acc)) {
        acc = save;
        return false;
      }
    }
    if (flipped) *flipped = false;
    return true;
  }
  if (pat.sort() != subj.sort()) return false;
  Matcher save = acc;
  if (match_into(pat.lhs(), subj.lhs(), acc) && match_into(pat.rhs(), subj.rhs(), acc)) {
    if (flipped) *flipped = false;
    return true;
  }
  acc = save;
  if (match_into(pat.lhs(), subj.rhs(), acc) && match_into(pat.rhs(), subj.lhs(), acc)) {
    if (flipped) *flipped = true;
    return true;
  }
  acc = save;
  return false;
}

bool embed_body(const HornClause& general, const HornClause& specific, size_t i,
                std::vector<bool>& used, Matcher& acc) {
  if (i == general.body().size()) return true;
  for (size_t j = 0; j < specific.body().size(); ++j) {
    if (used[j]) continue;
    Matcher save = acc;
    if (match_atoms_flex(general.body()[i], specific.body()[j], acc, nullptr)) {
      used[j] = true;
      if (embed_body(general, specific, i + 1, used, acc)) return true;
      used[j] = false;
    }
    acc = save;
  }
  return false;
}

}  // namespace

bool subsumes(const HornClause& general, const HornClause& specific) {
  if (general.body().size() > specific.body().size()) return false;
  if (general.head().kind != specific.head().kind) return false;
  Matcher acc;
  if (general.head().atom) {
    if (!match_atoms_flex(*general.head().atom, *specific.head().atom, acc, nullptr))
      return false;
  }
  std::vector<bool> used(specific.body().size(), false);
  return embed_body(general, specific, 0, used, acc);
}

}  // namespace hornforge
