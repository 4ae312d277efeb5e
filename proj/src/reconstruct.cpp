#include "hornforge/reconstruct.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "hornforge/rules.hpp"

namespace hornforge {

std::string RuleInstance::to_string() const {
  std::ostringstream os;
  os << rule << "(";
  for (size_t i = 0; i < premises.size(); ++i) {
    if (i) os << ',';
    os << premises[i];
  }
  os << ")";
  if (body_index >= 0) os << " body=" << body_index;
  if (body_index2 >= 0) os << "," << body_index2;
  if (flipped) os << " flipped";
  if (simultaneous) os << " simultaneous";
  return os.str();
}

std::string normalize_rule_name(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (c == ' ' || c == '-') {
      out.push_back('_');
    } else {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

bool rule_supported(const std::string& r) {
  static const std::set<std::string> kRules = {
      "resolution",         "factoring",
      "equality_resolution", "superposition",
      "demodulation",       "forward_demodulation",
      "backward_demodulation", "subsumption_resolution",
      "cnf_transformation", "flattening",
      "injectivity",        "distinctness",
      "input",              "negated_conjecture",
  };
  return kRules.count(r) > 0;
}

namespace {

// A matched rule application: the raw application plus the variant match
// against the stated conclusion, and the choices that produced it.
struct Candidate {
  std::string rule;  // canonical reading that matched
  RuleApplication app;
  VariantMatch match;
  int main_premise = -1;
  int side_premise = -1;
  int body_index = -1;
  int body_index2 = -1;
  Location loc;
  bool flipped = false;
  bool simultaneous = false;
  // Subsumption resolution extras: where each side-body atom embedded.
  std::vector<size_t> sr_embedding;
  std::vector<bool> sr_flips;
  bool sr_head_flip = false;
  Matcher sr_sigma;
  // Injectivity / distinctness extras.
  int component = -1;
  bool premise_head_flip = false;
};

std::vector<std::pair<size_t, size_t>> role_orders(size_t n) {
  if (n == 1) return {{0, 0}};
  if (n == 2) return {{0, 1}, {1, 0}};
  return {};
}

std::optional<Candidate> search_resolution(const std::vector<HornClause>& premises,
                                           const HornClause& stated) {
  FreshNames fresh;
  for (auto [li, ri] : role_orders(premises.size())) {
    const HornClause& left = premises[li];
    const HornClause& right = premises[ri];
    if (!left.head().is_atom()) continue;
    for (size_t bi = 0; bi < right.body().size(); ++bi) {
      for (bool flip : {false, true}) {
        auto app = resolution(left, right, bi, flip, fresh);
        if (!app) continue;
        auto m = variant_match_flex(app->conclusion, stated);
        if (!m) continue;
        Candidate c;
        c.rule = "resolution";
        c.app = std::move(*app);
        c.match = std::move(*m);
        c.side_premise = static_cast<int>(li);
        c.main_premise = static_cast<int>(ri);
        c.body_index = static_cast<int>(bi);
        c.flipped = flip;
        return c;
      }
    }
  }
  return std::nullopt;
}

std::optional<Candidate> search_factoring(const std::vector<HornClause>& premises,
                                          const HornClause& stated) {
  if (premises.size() != 1) return std::nullopt;
  FreshNames fresh;
  const HornClause& c0 = premises[0];
  for (size_t i = 0; i < c0.body().size(); ++i) {
    for (size_t j = 0; j < c0.body().size(); ++j) {
      if (i == j) continue;
      for (bool flip : {false, true}) {
        auto app = factoring(c0, i, j, flip, fresh);
        if (!app) continue;
        auto m = variant_match_flex(app->conclusion, stated);
        if (!m) continue;
        Candidate c;
        c.rule = "factoring";
        c.app = std::move(*app);
        c.match = std::move(*m);
        c.main_premise = 0;
        c.body_index = static_cast<int>(i);
        c.body_index2 = static_cast<int>(j);
        c.flipped = flip;
        return c;
      }
    }
  }
  return std::nullopt;
}

std::optional<Candidate> search_equality_resolution(const std::vector<HornClause>& premises,
                                                    const HornClause& stated) {
  if (premises.size() != 1) return std::nullopt;
  for (size_t i = 0; i < premises[0].body().size(); ++i) {
    auto app = equality_resolution(premises[0], i);
    if (!app) continue;
    auto m = variant_match_flex(app->conclusion, stated);
    if (!m) continue;
    Candidate c;
    c.rule = "equality_resolution";
    c.app = std::move(*app);
    c.match = std::move(*m);
    c.main_premise = 0;
    c.body_index = static_cast<int>(i);
    return c;
  }
  return std::nullopt;
}

std::optional<Candidate> search_superposition(const std::vector<HornClause>& premises,
                                              const HornClause& stated) {
  FreshNames fresh;
  for (auto [ti, ei] : role_orders(premises.size())) {
    const HornClause& target = premises[ti];
    const HornClause& eq = premises[ei];
    if (!eq.head().is_atom() || !eq.head().atom->is_equation()) continue;
    for (bool flip : {false, true}) {
      // Enumerate rewrite positions: body atoms left to right, then head.
      std::vector<Location> locations;
      auto collect = [&](const Atom& a, bool in_head, size_t body_index) {
        for_each_position(a, [&](const Term&, const std::vector<size_t>& path) {
          Location loc;
          loc.in_head = in_head;
          loc.body_index = body_index;
          loc.path = path;
          locations.push_back(std::move(loc));
          return true;
        });
      };
      for (size_t bi = 0; bi < target.body().size(); ++bi)
        collect(target.body()[bi], false, bi);
      if (target.head().is_atom()) collect(*target.head().atom, true, 0);
      for (const Location& loc : locations) {
        for (bool simultaneous : {false, true}) {
          auto app = superposition(eq, flip, target, loc, fresh, simultaneous);
          if (!app) continue;
          auto m = variant_match_flex(app->conclusion, stated);
          if (!m) continue;
          Candidate c;
          c.rule = "superposition";
          c.app = std::move(*app);
          c.match = std::move(*m);
          c.main_premise = static_cast<int>(ti);
          c.side_premise = static_cast<int>(ei);
          c.loc = loc;
          c.flipped = flip;
          c.simultaneous = simultaneous;
          return c;
        }
      }
    }
  }
  return std::nullopt;
}

// Subsumption resolution proper: drop one body atom of the main premise that
// the side premise's head matches, with the side's body embedding into the
// remaining body atoms.
std::optional<Candidate> search_subsumption_resolution(const std::vector<HornClause>& premises,
                                                       const HornClause& stated) {
  if (premises.size() != 2) return std::nullopt;
  for (auto [mi, si] : role_orders(premises.size())) {
    const HornClause& main = premises[mi];
    const HornClause& side = premises[si];
    if (!side.head().is_atom()) continue;
    for (size_t bi = 0; bi < main.body().size(); ++bi) {
      for (bool head_flip : {false, true}) {
        const Atom& target = main.body()[bi];
        Atom side_head = *side.head().atom;
        if (head_flip) {
          if (!side_head.is_equation()) continue;
          side_head = side_head.flipped();
        }
        Matcher sigma;
        // Match (not unify): the main premise stays fully general.
        auto match_atom = [&](const Atom& pat, const Atom& subj, Matcher& acc) {
          if (pat.is_equation() != subj.is_equation()) return false;
          if (!pat.is_equation() &&
              (pat.predicate_name() != subj.predicate_name() ||
               pat.args().size() != subj.args().size()))
            return false;
          for (size_t k = 0; k < pat.args().size(); ++k)
            if (!match_into(pat.args()[k], subj.args()[k], acc)) return false;
          return true;
        };
        if (!match_atom(side_head, target, sigma)) continue;

        // Embed side body atoms into the remaining main body (injectively).
        std::vector<size_t> embedding(side.body().size());
        std::vector<bool> flips(side.body().size(), false);
        std::vector<bool> used(main.body().size(), false);
        used[bi] = true;
        std::function<bool(size_t, Matcher&)> embed = [&](size_t k, Matcher& acc) {
          if (k == side.body().size()) return true;
          for (size_t j = 0; j < main.body().size(); ++j) {
            if (used[j]) continue;
            for (bool f : {false, true}) {
              Atom pat = side.body()[k];
              if (f) {
                if (!pat.is_equation()) break;
                pat = pat.flipped();
              }
              Matcher save = acc;
              if (match_atom(pat, main.body()[j], acc)) {
                used[j] = true;
                embedding[k] = j;
                flips[k] = f;
                if (embed(k + 1, acc)) return true;
                used[j] = false;
              }
              acc = save;
            }
          }
          return false;
        };
        if (!embed(0, sigma)) continue;

        std::vector<Atom> body;
        for (size_t j = 0; j < main.body().size(); ++j)
          if (j != bi) body.push_back(main.body()[j]);
        HornClause conclusion = HornClause::close(std::move(body), main.head());
        auto m = variant_match_flex(conclusion, stated);
        if (!m) continue;
        Candidate c;
        c.rule = "subsumption_resolution";
        c.app.conclusion = std::move(conclusion);
        c.match = std::move(*m);
        c.main_premise = static_cast<int>(mi);
        c.side_premise = static_cast<int>(si);
        c.body_index = static_cast<int>(bi);
        c.sr_embedding = std::move(embedding);
        c.sr_flips = std::move(flips);
        c.sr_head_flip = head_flip;
        c.sr_sigma = std::move(sigma);
        return c;
      }
    }
  }
  return std::nullopt;
}

// cnf_transformation / flattening: the conclusion is the premise up to
// renaming, body permutation, and per-equation orientation flips.
std::optional<Candidate> search_identity(const std::vector<HornClause>& premises,
                                         const HornClause& stated) {
  if (premises.size() != 1) return std::nullopt;
  auto m = variant_match_flex(premises[0], stated);
  if (!m) return std::nullopt;
  Candidate c;
  c.rule = "identity";
  c.app.conclusion = premises[0];
  c.match = std::move(*m);
  c.main_premise = 0;
  return c;
}

std::optional<Candidate> search_injectivity(const std::vector<HornClause>& premises,
                                            const HornClause& stated, const Signature* sig) {
  if (premises.size() != 1) return std::nullopt;
  const HornClause& p = premises[0];
  if (!p.head().is_atom() || !p.head().atom->is_equation()) return std::nullopt;
  for (bool head_flip : {false, true}) {
    Atom eq = head_flip ? p.head().atom->flipped() : *p.head().atom;
    const Term& l = eq.lhs();
    const Term& r = eq.rhs();
    if (l.is_var() || r.is_var() || l.name() != r.name()) continue;
    if (l.args().size() != r.args().size()) continue;
    if (sig) {
      const FunctionSymbol* f = sig->find_function(l.name());
      if (!f || !f->is_constructor) continue;
    }
    for (size_t k = 0; k < l.args().size(); ++k) {
      HornClause conclusion =
          HornClause::close(p.body(), Head::make_atom(Atom::equation(l.args()[k], r.args()[k])));
      auto m = variant_match_flex(conclusion, stated);
      if (!m) continue;
      Candidate c;
      c.rule = "injectivity";
      c.app.conclusion = std::move(conclusion);
      c.match = std::move(*m);
      c.main_premise = 0;
      c.component = static_cast<int>(k);
      c.premise_head_flip = head_flip;
      return c;
    }
  }
  return std::nullopt;
}

std::optional<Candidate> search_distinctness(const std::vector<HornClause>& premises,
                                             const HornClause& stated, const Signature* sig) {
  if (premises.size() != 1) return std::nullopt;
  const HornClause& p = premises[0];
  if (!p.head().is_atom() || !p.head().atom->is_equation()) return std::nullopt;
  // The stated conclusion keeps the premise body; its head is falsum before
  // the transformation and the boxed goal atom after it.
  for (bool head_flip : {false, true}) {
    Atom eq = head_flip ? p.head().atom->flipped() : *p.head().atom;
    const Term& l = eq.lhs();
    const Term& r = eq.rhs();
    if (l.is_var() || r.is_var() || l.name() == r.name()) continue;
    if (sig) {
      const FunctionSymbol* fl = sig->find_function(l.name());
      const FunctionSymbol* fr = sig->find_function(r.name());
      if (!fl || !fr || !fl->is_constructor || !fr->is_constructor) continue;
      if (fl->result_sort != fr->result_sort) continue;
    }
    Head h = stated.head();  // falsum or boxed goal, copied as stated
    HornClause conclusion = HornClause::close(p.body(), h);
    auto m = variant_match_flex(conclusion, stated);
    if (!m) continue;
    Candidate c;
    c.rule = "distinctness";
    c.app.conclusion = std::move(conclusion);
    c.match = std::move(*m);
    c.main_premise = 0;
    c.premise_head_flip = head_flip;
    return c;
  }
  return std::nullopt;
}

std::optional<Candidate> find_candidate(const std::vector<HornClause>& premises,
                                        const HornClause& stated, const std::string& rule,
                                        const Signature* sig) {
  std::string r = normalize_rule_name(rule);
  if (r == "resolution") return search_resolution(premises, stated);
  if (r == "factoring") return search_factoring(premises, stated);
  if (r == "equality_resolution") return search_equality_resolution(premises, stated);
  if (r == "superposition" || r == "demodulation" || r == "forward_demodulation" ||
      r == "backward_demodulation") {
    // Rule-name aliasing: demodulation steps are superposition instances and
    // external "superposition" labels may cover simplifications.
    return search_superposition(premises, stated);
  }
  if (r == "subsumption_resolution") {
    if (auto c = search_resolution(premises, stated)) return c;
    return search_subsumption_resolution(premises, stated);
  }
  if (r == "cnf_transformation" || r == "flattening") return search_identity(premises, stated);
  if (r == "injectivity") return search_injectivity(premises, stated, sig);
  if (r == "distinctness") return search_distinctness(premises, stated, sig);
  return std::nullopt;
}

}  // namespace

std::optional<RuleInstance> find_rule_instance(const std::vector<HornClause>& premises,
                                               const HornClause& conclusion,
                                               const std::string& rule_name,
                                               std::string* explored, const Signature* sig) {
  std::string r = normalize_rule_name(rule_name);
  if (r == "input" || r == "negated_conjecture") {
    RuleInstance inst;
    inst.rule = r;
    return inst;  // leaves; nothing to search
  }
  auto c = find_candidate(premises, conclusion, r, sig);
  if (!c) {
    if (explored) {
      std::ostringstream os;
      os << "no " << r << " instance: premises";
      for (const HornClause& p : premises) os << " {" << p.to_string() << "}";
      os << " conclusion {" << conclusion.to_string() << "}";
      *explored = os.str();
    }
    return std::nullopt;
  }
  RuleInstance inst;
  inst.rule = c->rule;
  inst.main_premise = c->main_premise;
  inst.side_premise = c->side_premise;
  inst.body_index = c->body_index;
  inst.body_index2 = c->body_index2;
  inst.location = c->loc;
  inst.flipped = c->flipped;
  inst.head_flipped = c->match.head_flipped;
  inst.simultaneous = c->simultaneous;
  inst.unifier = c->app.sigma;
  return inst;
}

std::optional<Term> find_witness(const std::string& sort, const std::vector<SortedVar>& binders,
                                 const Signature& sig) {
  for (const auto& [n, s] : binders)
    if (s == sort) return Term::var(n, s);
  for (const FunctionSymbol& f : sig.functions())
    if (f.arity() == 0 && f.result_sort == sort) return Term::app(f.name, f.result_sort, {});
  // Smallest ground term up to depth 2: grow a smallest-term-per-sort pool.
  std::map<std::string, Term> pool;
  for (const FunctionSymbol& f : sig.functions())
    if (f.arity() == 0 && !pool.count(f.result_sort))
      pool.emplace(f.result_sort, Term::app(f.name, f.result_sort, {}));
  for (int round = 0; round < 2; ++round) {
    for (const FunctionSymbol& f : sig.functions()) {
      if (f.arity() == 0) continue;
      std::vector<Term> args;
      size_t w = 1;
      bool ok = true;
      for (const std::string& as : f.arg_sorts) {
        auto it = pool.find(as);
        if (it == pool.end()) {
          ok = false;
          break;
        }
        args.push_back(it->second);
        w += it->second.weight();
      }
      if (!ok) continue;
      auto it = pool.find(f.result_sort);
      if (it == pool.end() || it->second.weight() > w)
        pool.insert_or_assign(f.result_sort, Term::app(f.name, f.result_sort, std::move(args)));
    }
  }
  auto it = pool.find(sort);
  if (it == pool.end()) return std::nullopt;
  return it->second;
}

namespace {

struct WitnessUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Maps joint-space terms (premise copies + unifier) into the stated clause's
// variable scope; variables that vanished from the conclusion are closed
// with deterministic witnesses.
struct StepScope {
  const Signature& sig;
  const HornClause& stated;
  const VariantMatch& mu;
  std::map<std::string, Term> witnesses;
  std::string hole_name;

  explicit StepScope(const Signature& s, const HornClause& k, const VariantMatch& m)
      : sig(s), stated(k), mu(m) {
    std::set<std::string> taken;
    for (const auto& [n, srt] : k.vars()) taken.insert(n);
    hole_name = "h";
    int i = 0;
    while (taken.count(hole_name)) hole_name = "h" + std::to_string(i++);
  }

  Term close_vars(const Term& t) {
    if (t.is_var()) {
      for (const auto& [n, s] : stated.vars())
        if (n == t.name()) return t;
      auto it = witnesses.find(t.name());
      if (it != witnesses.end()) return it->second;
      auto w = find_witness(t.sort(), stated.vars(), sig);
      if (!w)
        throw WitnessUnavailable("no witness of sort " + t.sort() + " for dropped variable " +
                                 t.name());
      witnesses.emplace(t.name(), *w);
      return *w;
    }
    if (t.args().empty()) return t;
    std::vector<Term> args;
    for (const Term& a : t.args()) args.push_back(close_vars(a));
    return Term::app(t.name(), t.sort(), std::move(args));
  }

  Term map_term(const Term& t) { return close_vars(mu.renaming.apply(t)); }
  Atom map_atom(const Atom& a) {
    if (a.is_equation()) return Atom::equation(map_term(a.lhs()), map_term(a.rhs()));
    std::vector<Term> args;
    for (const Term& t : a.args()) args.push_back(map_term(t));
    return Atom::predicate(a.predicate_name(), std::move(args));
  }

  std::string hyp_name(size_t stated_body_index) const {
    return "l" + std::to_string(stated_body_index);
  }

  ProofTerm hyp(size_t derived_slot) const {
    size_t k = mu.body_perm[derived_slot];
    ProofTerm h = ProofTerm::ref(hyp_name(k));
    return mu.body_flipped[derived_slot] ? ProofTerm::sym(std::move(h)) : std::move(h);
  }

  // Wraps a core proof in the stated clause's binders and hypotheses.
  ProofTerm close_term(ProofTerm core) const {
    for (size_t i = stated.body().size(); i-- > 0;)
      core = ProofTerm::lam(hyp_name(i), std::move(core));
    for (size_t i = stated.vars().size(); i-- > 0;)
      core = ProofTerm::all_intro(stated.vars()[i].first, stated.vars()[i].second,
                                  std::move(core));
    return core;
  }

  ProofTerm maybe_sym(ProofTerm p, bool flip) const {
    return flip ? ProofTerm::sym(std::move(p)) : std::move(p);
  }
};

Term term_with_hole(const Term& t, std::span<const size_t> path, const std::string& hole) {
  if (path.empty()) return Term::var(hole, t.sort());
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[path[0]] = term_with_hole(args[path[0]], path.subspan(1), hole);
  return Term::app(t.name(), t.sort(), std::move(args));
}

// Rewrites inside an equation proof: from pcur : cur_lhs = cur_rhs and
// eqp : from_term = to_term, replaces `from_term` at `path` (within the lhs
// when path[0]==0, the rhs otherwise) producing the updated atom and proof.
void rewrite_equation_step(Atom& cur, ProofTerm& pcur, const ProofTerm& eqp, const Term& from,
                           const Term& to, std::span<const size_t> path,
                           const std::string& hole) {
  size_t side = path[0];
  std::span<const size_t> inner = path.subspan(1);
  Term side_term = side == 0 ? cur.lhs() : cur.rhs();
  Term new_side = side_term.replace_at(inner, to);
  TermContext ctx{term_with_hole(side_term, inner, hole), hole, from.sort()};
  ProofTerm cong = ProofTerm::cong(ctx, eqp);  // ctx[from] = ctx[to]
  if (side == 0) {
    // cong : cur_lhs = new_lhs; want new_lhs = cur_rhs
    pcur = ProofTerm::trans(ProofTerm::sym(std::move(cong)), std::move(pcur));
    cur = Atom::equation(new_side, cur.rhs());
  } else {
    // cong : cur_rhs = new_rhs; want cur_lhs = new_rhs
    pcur = ProofTerm::trans(std::move(pcur), std::move(cong));
    cur = Atom::equation(cur.lhs(), new_side);
  }
}

void rewrite_predicate_step(Atom& cur, ProofTerm& pcur, const ProofTerm& eqp, const Term& from,
                            const Term& to, std::span<const size_t> path,
                            const std::string& hole) {
  std::vector<Term> args(cur.args().begin(), cur.args().end());
  Term with_hole = term_with_hole(args[path[0]], path.subspan(1), hole);
  std::vector<Term> ctx_args = args;
  ctx_args[path[0]] = with_hole;
  AtomContext ctx{Atom::predicate(cur.predicate_name(), ctx_args), hole, from.sort()};
  args[path[0]] = args[path[0]].replace_at(path.subspan(1), to);
  Atom next = Atom::predicate(cur.predicate_name(), args);
  pcur = ProofTerm::rw(eqp, std::move(pcur), std::move(ctx));
  cur = std::move(next);
}

// Applies eqp : from = to at each path, rewriting forward through the proof.
ProofTerm rewrite_atom_forward(Atom& cur, ProofTerm pcur, const ProofTerm& eqp, const Term& from,
                               const Term& to,
                               const std::vector<std::vector<size_t>>& paths,
                               const std::string& hole) {
  for (const auto& path : paths) {
    if (cur.is_equation()) {
      rewrite_equation_step(cur, pcur, eqp, from, to, path, hole);
    } else {
      rewrite_predicate_step(cur, pcur, eqp, from, to, path, hole);
    }
  }
  return pcur;
}

}  // namespace

Reconstructor::Reconstructor(const Problem& problem, const Atom& derivation_goal)
    : problem_(&problem), goal_(derivation_goal),
      ctx_(CheckContext::for_problem(problem, derivation_goal)) {}

ProofTerm Reconstructor::build_input_like(const HornClause& stated,
                                          const HornClause& premise_clause,
                                          const std::string& premise_ref,
                                          const VariantMatch& m) const {
  StepScope scope(problem_->signature, stated, m);
  ProofTerm elim = ProofTerm::ref(premise_ref);
  for (const auto& [v, s] : premise_clause.vars()) {
    Term w = scope.map_term(Term::var(v, s));
    elim = ProofTerm::all_elim(std::move(elim), std::move(w));
  }
  for (size_t j = 0; j < premise_clause.body().size(); ++j)
    elim = ProofTerm::app(std::move(elim), scope.hyp(j));
  elim = scope.maybe_sym(std::move(elim), m.head_flipped);
  return scope.close_term(std::move(elim));
}

std::pair<RuleInstance, ProofTerm> Reconstructor::reconstruct_step(
    const std::vector<std::pair<HornClause, std::string>>& premises_named,
    const HornClause& stated, const std::string& rule_name) {
  std::string rule = normalize_rule_name(rule_name);
  if (!rule_supported(rule))
    throw ReconstructionFailure(ReconstructionFailure::Kind::kUnsupportedRule,
                                "unsupported inference: " + rule_name);

  // Rename every premise variable to a private name disjoint from the stated
  // clause's: witnesses for dropped variables are keyed by name, and the
  // rules' internal renamings derive from these bases.
  std::set<std::string> avoid;
  for (const auto& [n, s] : stated.vars()) avoid.insert(n);
  std::vector<HornClause> premises;
  std::vector<std::string> names;
  for (size_t pi = 0; pi < premises_named.size(); ++pi) {
    const auto& [cl, nm] = premises_named[pi];
    Substitution ren;
    std::vector<SortedVar> vars;
    for (size_t vi = 0; vi < cl.vars().size(); ++vi) {
      const auto& [v, s] = cl.vars()[vi];
      std::string nn = "p" + std::to_string(pi) + "v" + std::to_string(vi);
      while (avoid.count(nn)) nn += "x";
      ren.bind(v, s, Term::var(nn, s));
      vars.emplace_back(nn, s);
    }
    std::vector<Atom> body;
    for (const Atom& a : cl.body()) body.push_back(a.apply(ren));
    Head h = cl.head();
    if (h.is_atom()) h.atom = h.atom->apply(ren);
    premises.push_back(HornClause::make(std::move(vars), std::move(body), std::move(h)));
    names.push_back(nm);
  }

  auto cand = find_candidate(premises, stated, rule, &problem_->signature);
  if (!cand) {
    std::string explored;
    find_rule_instance(premises, stated, rule, &explored);
    throw ReconstructionFailure(ReconstructionFailure::Kind::kNoInstanceFound, explored);
  }

  RuleInstance inst;
  inst.rule = cand->rule;
  inst.main_premise = cand->main_premise;
  inst.side_premise = cand->side_premise;
  inst.body_index = cand->body_index;
  inst.body_index2 = cand->body_index2;
  inst.location = cand->loc;
  inst.flipped = cand->flipped;
  inst.head_flipped = cand->match.head_flipped;
  inst.simultaneous = cand->simultaneous;
  inst.unifier = cand->app.sigma;

  StepScope scope(problem_->signature, stated, cand->match);
  const Substitution& sigma = cand->app.sigma;
  const Substitution& rho = cand->app.renaming;

  // Instance of a premise variable inside the stated clause's scope.
  auto inst_var = [&](const SortedVar& v, bool renamed) {
    Term t = Term::var(v.first, v.second);
    if (renamed) t = rho.apply(t);
    return scope.map_term(sigma.apply(t));
  };
  auto elim_vars = [&](const HornClause& p, const std::string& ref, bool renamed) {
    ProofTerm e = ProofTerm::ref(ref);
    for (const auto& v : p.vars()) e = ProofTerm::all_elim(std::move(e), inst_var(v, renamed));
    return e;
  };

  ProofTerm core;
  try {
    if (cand->rule == "resolution") {
      const HornClause& left = premises[cand->side_premise];
      const HornClause& right = premises[cand->main_premise];
      size_t bi = static_cast<size_t>(cand->body_index);
      // Derived body layout: sigma(left.body) ++ sigma(rho(right.body \ bi)).
      ProofTerm left_elim = elim_vars(left, names[cand->side_premise], false);
      for (size_t j = 0; j < left.body().size(); ++j)
        left_elim = ProofTerm::app(std::move(left_elim), scope.hyp(j));
      left_elim = scope.maybe_sym(std::move(left_elim), cand->flipped);

      ProofTerm right_elim = elim_vars(right, names[cand->main_premise], true);
      size_t offset = left.body().size();
      size_t adj = 0;
      for (size_t j = 0; j < right.body().size(); ++j) {
        if (j == bi) {
          right_elim = ProofTerm::app(std::move(right_elim), left_elim);
        } else {
          right_elim = ProofTerm::app(std::move(right_elim), scope.hyp(offset + adj++));
        }
      }
      core = scope.maybe_sym(std::move(right_elim), cand->match.head_flipped);
    } else if (cand->rule == "factoring") {
      const HornClause& p = premises[0];
      size_t i = static_cast<size_t>(cand->body_index);
      size_t j = static_cast<size_t>(cand->body_index2);
      ProofTerm elim = elim_vars(p, names[0], false);
      // Derived slots: premise body indices with j skipped.
      auto slot_of = [&](size_t k) { return k < j ? k : k - 1; };
      for (size_t k = 0; k < p.body().size(); ++k) {
        if (k == j) {
          ProofTerm merged = scope.hyp(slot_of(i));
          elim = ProofTerm::app(std::move(elim), scope.maybe_sym(std::move(merged), cand->flipped));
        } else {
          elim = ProofTerm::app(std::move(elim), scope.hyp(slot_of(k)));
        }
      }
      core = scope.maybe_sym(std::move(elim), cand->match.head_flipped);
    } else if (cand->rule == "equality_resolution") {
      const HornClause& p = premises[0];
      size_t i = static_cast<size_t>(cand->body_index);
      ProofTerm elim = elim_vars(p, names[0], false);
      for (size_t k = 0; k < p.body().size(); ++k) {
        if (k == i) {
          Term lhs = scope.map_term(sigma.apply(p.body()[i].lhs()));
          elim = ProofTerm::app(std::move(elim), ProofTerm::refl(std::move(lhs)));
        } else {
          elim = ProofTerm::app(std::move(elim), scope.hyp(k < i ? k : k - 1));
        }
      }
      core = scope.maybe_sym(std::move(elim), cand->match.head_flipped);
    } else if (cand->rule == "superposition") {
      const HornClause& target = premises[cand->main_premise];
      const HornClause& eq = premises[cand->side_premise];
      size_t eq_body_count = eq.body().size();

      // Equation proof oriented so it proves redex = replacement.
      ProofTerm eq_elim = elim_vars(eq, names[cand->side_premise], true);
      for (size_t j = 0; j < eq_body_count; ++j)
        eq_elim = ProofTerm::app(std::move(eq_elim), scope.hyp(j));
      ProofTerm eqp = scope.maybe_sym(std::move(eq_elim), cand->flipped);
      Term from = scope.map_term(cand->app.redex);
      Term to = scope.map_term(cand->app.replacement);

      // Group recorded rewrite positions by derived slot.
      std::map<size_t, std::vector<std::vector<size_t>>> rewrites;
      for (const auto& [slot, path] : cand->app.rewrites) rewrites[slot].push_back(path);
      size_t head_slot = eq_body_count + target.body().size();

      ProofTerm target_elim = elim_vars(target, names[cand->main_premise], false);
      for (size_t j = 0; j < target.body().size(); ++j) {
        size_t slot = eq_body_count + j;
        auto it = rewrites.find(slot);
        if (it == rewrites.end()) {
          target_elim = ProofTerm::app(std::move(target_elim), scope.hyp(slot));
          continue;
        }
        // The stated hypothesis holds the rewritten atom; rewrite backwards
        // (replacement -> redex) to recover the premise's body atom.
        Atom cur = scope.map_atom(target.body()[j].apply(sigma));
        for (const auto& path : it->second) {
          std::span<const size_t> sp(path.data() + 1, path.size() - 1);
          std::vector<Term> args(cur.args().begin(), cur.args().end());
          args[path[0]] = args[path[0]].replace_at(sp, to);
          cur = cur.is_equation() ? Atom::equation(args[0], args[1])
                                  : Atom::predicate(cur.predicate_name(), args);
        }
        ProofTerm pcur = scope.hyp(slot);
        ProofTerm back = rewrite_atom_forward(cur, std::move(pcur),
                                              ProofTerm::sym(eqp), to, from, it->second,
                                              scope.hole_name);
        target_elim = ProofTerm::app(std::move(target_elim), std::move(back));
      }
      core = std::move(target_elim);
      auto hit = rewrites.find(head_slot);
      if (hit != rewrites.end()) {
        Atom cur = scope.map_atom(target.head().atom->apply(sigma));
        core = rewrite_atom_forward(cur, std::move(core), eqp, from, to, hit->second,
                                    scope.hole_name);
      }
      core = scope.maybe_sym(std::move(core), cand->match.head_flipped);
    } else if (cand->rule == "subsumption_resolution") {
      const HornClause& main = premises[cand->main_premise];
      const HornClause& side = premises[cand->side_premise];
      size_t bi = static_cast<size_t>(cand->body_index);
      const Matcher& sg = cand->sr_sigma;

      ProofTerm side_elim = ProofTerm::ref(names[cand->side_premise]);
      for (const auto& v : side.vars())
        side_elim = ProofTerm::all_elim(std::move(side_elim),
                                        scope.map_term(sg.apply(Term::var(v.first, v.second))));
      auto derived_slot = [&](size_t j) { return j < bi ? j : j - 1; };
      for (size_t k = 0; k < side.body().size(); ++k) {
        ProofTerm h = scope.hyp(derived_slot(cand->sr_embedding[k]));
        side_elim = ProofTerm::app(std::move(side_elim),
                                   scope.maybe_sym(std::move(h), cand->sr_flips[k]));
      }
      side_elim = scope.maybe_sym(std::move(side_elim), cand->sr_head_flip);

      ProofTerm main_elim = ProofTerm::ref(names[cand->main_premise]);
      for (const auto& v : main.vars())
        main_elim = ProofTerm::all_elim(std::move(main_elim),
                                        scope.map_term(Term::var(v.first, v.second)));
      for (size_t j = 0; j < main.body().size(); ++j) {
        if (j == bi) {
          main_elim = ProofTerm::app(std::move(main_elim), side_elim);
        } else {
          main_elim = ProofTerm::app(std::move(main_elim), scope.hyp(derived_slot(j)));
        }
      }
      core = scope.maybe_sym(std::move(main_elim), cand->match.head_flipped);
    } else if (cand->rule == "identity") {
      return {inst, build_input_like(stated, premises[0], names[0], cand->match)};
    } else if (cand->rule == "injectivity") {
      const HornClause& p = premises[0];
      Atom eq = cand->premise_head_flip ? p.head().atom->flipped() : *p.head().atom;
      const std::string& ctor = eq.lhs().name();
      ProofTerm prem = elim_vars(p, names[0], false);
      for (size_t j = 0; j < p.body().size(); ++j)
        prem = ProofTerm::app(std::move(prem), scope.hyp(j));
      prem = scope.maybe_sym(std::move(prem), cand->premise_head_flip);
      ProofTerm inj = ProofTerm::ref(ctor + "-inj-" + std::to_string(cand->component));
      for (const Term& a : eq.lhs().args())
        inj = ProofTerm::all_elim(std::move(inj), scope.map_term(a));
      for (const Term& a : eq.rhs().args())
        inj = ProofTerm::all_elim(std::move(inj), scope.map_term(a));
      inj = ProofTerm::app(std::move(inj), std::move(prem));
      core = scope.maybe_sym(std::move(inj), cand->match.head_flipped);
    } else if (cand->rule == "distinctness") {
      const HornClause& p = premises[0];
      Atom eq = cand->premise_head_flip ? p.head().atom->flipped() : *p.head().atom;
      ProofTerm prem = elim_vars(p, names[0], false);
      for (size_t j = 0; j < p.body().size(); ++j)
        prem = ProofTerm::app(std::move(prem), scope.hyp(j));
      prem = scope.maybe_sym(std::move(prem), cand->premise_head_flip);
      ProofTerm dist = ProofTerm::ref(eq.lhs().name() + "-" + eq.rhs().name() + "-distinct");
      for (const Term& a : eq.lhs().args())
        dist = ProofTerm::all_elim(std::move(dist), scope.map_term(a));
      for (const Term& a : eq.rhs().args())
        dist = ProofTerm::all_elim(std::move(dist), scope.map_term(a));
      dist = ProofTerm::app(std::move(dist), std::move(prem));
      core = std::move(dist);
    } else {
      throw ReconstructionFailure(ReconstructionFailure::Kind::kUnsupportedRule,
                                  "unsupported inference: " + rule_name);
    }
  } catch (const WitnessUnavailable& w) {
    // Uninhabited instantiation sort: degrade the step to a hole.
    return {inst, ProofTerm::hole(Formula::from_clause(stated))};
  }

  return {inst, scope.close_term(std::move(core))};
}

Proof Reconstructor::reconstruct_derivation(const Derivation& transformed) {
  Proof proof;
  CheckContext running = ctx_;
  std::map<int, const Step*> by_id;
  for (const Step& s : transformed.steps) by_id[s.id] = &s;

  for (const Step& step : transformed.steps) {
    std::string name = "step-" + std::to_string(step.id);
    ProofTerm term;
    if (const auto* in = std::get_if<JustInput>(&step.just)) {
      HornClause source;
      if (const NamedClause* ax = problem_->find_axiom(in->name)) {
        source = ax->clause;
      } else if (const NamedAtom* hyp = problem_->find_hypothesis(in->name)) {
        source = HornClause::close({}, Head::make_atom(hyp->atom));
      } else {
        throw ReconstructionFailure(ReconstructionFailure::Kind::kNoInstanceFound,
                                    "input step names unknown clause " + in->name, step.id);
      }
      // Unused axiom binders must not collide with the stated variables.
      FreshNames fresh;
      Substitution ren = rename_apart(step.clause.vars(), source.vars(), fresh);
      if (!ren.empty()) {
        std::vector<SortedVar> vars;
        for (const auto& [v, s] : source.vars()) {
          const Term* t = ren.lookup(v);
          vars.emplace_back(t ? t->name() : v, s);
        }
        std::vector<Atom> body;
        for (const Atom& a : source.body()) body.push_back(a.apply(ren));
        Head h = source.head();
        if (h.is_atom()) h.atom = h.atom->apply(ren);
        source = HornClause::make(std::move(vars), std::move(body), std::move(h));
      }
      auto m = variant_match_flex(source, step.clause);
      if (!m)
        throw ReconstructionFailure(ReconstructionFailure::Kind::kNoInstanceFound,
                                    "input step " + std::to_string(step.id) +
                                        " does not match clause " + in->name,
                                    step.id);
      term = build_input_like(step.clause, source, in->name, *m);
    } else if (std::holds_alternative<JustNegatedConjecture>(step.just)) {
      // After the transformation the root goal clause is the tautology G -> G.
      if (step.clause.body().size() != 1 || !step.clause.head().is_goal() ||
          !(step.clause.body()[0] == *step.clause.head().atom))
        throw ReconstructionFailure(ReconstructionFailure::Kind::kNoInstanceFound,
                                    "negated-conjecture step is not the goal tautology", step.id);
      term = ProofTerm::lam("l0", ProofTerm::ref("l0"));
    } else {
      const auto& inf = std::get<JustInference>(step.just);
      std::vector<std::pair<HornClause, std::string>> premises;
      for (int pid : inf.premises) {
        auto it = by_id.find(pid);
        if (it == by_id.end() || pid >= step.id)
          throw ReconstructionFailure(ReconstructionFailure::Kind::kNoInstanceFound,
                                      "dangling premise " + std::to_string(pid), step.id);
        premises.emplace_back(it->second->clause, "step-" + std::to_string(pid));
      }
      try {
        auto [instance, t] = reconstruct_step(premises, step.clause, inf.rule);
        term = std::move(t);
      } catch (ReconstructionFailure& f) {
        f.step_id = step.id;
        throw;
      }
    }

    Formula formula = Formula::from_clause(step.clause);
    CheckResult r = check(running, term, formula);
    if (r.status == CheckResult::Status::kTypeError) {
      Proof dump;
      dump.defs.push_back({name, formula, term});
      dump.qed = name;
      throw std::runtime_error("internal: reconstructed step " + std::to_string(step.id) +
                               " fails the kernel: " + r.to_string() + "\n" +
                               emit_surface(dump, problem_->signature));
    }
    running.define(name, formula);
    proof.defs.push_back({name, std::move(formula), std::move(term)});
  }

  // Bridge the derivation's goal orientation to the problem's goal.
  const Step& final = transformed.steps.back();
  if (!final.clause.body().empty() || !final.clause.head().is_goal())
    throw std::runtime_error("transformed derivation does not end in -> G");
  const Atom& derived = *final.clause.head().atom;
  const Atom& wanted = problem_->goal.atom;
  ProofTerm bridge = ProofTerm::ref("step-" + std::to_string(final.id));
  if (derived == wanted) {
    // as is
  } else if (derived.is_equation() && derived.flipped() == wanted) {
    bridge = ProofTerm::sym(std::move(bridge));
  } else {
    throw std::runtime_error("derivation proves " + derived.to_string() +
                             ", problem goal is " + wanted.to_string());
  }
  proof.defs.push_back({"goal", Formula::atom(wanted), std::move(bridge)});
  proof.qed = "goal";
  return proof.pruned();
}

}  // namespace hornforge
