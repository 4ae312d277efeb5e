#include "hornforge/kernel.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hornforge {

Formula Formula::from_clause(const HornClause& c) {
  if (c.head().is_falsum())
    throw std::runtime_error("falsum head has no formula; transform the derivation first");
  return Formula{c.vars(), c.body(), *c.head().atom};
}

std::string Formula::to_string() const {
  std::ostringstream os;
  if (!vars.empty()) {
    os << "![";
    for (size_t i = 0; i < vars.size(); ++i) {
      if (i) os << ',';
      os << vars[i].first << ':' << vars[i].second;
    }
    os << "] ";
  }
  for (const Atom& a : body) os << a.to_string() << " -> ";
  os << head.to_string();
  return os.str();
}

namespace {

// Positional correspondence of bound names; free names must agree literally.
struct AlphaCmp {
  std::map<std::string, std::string> fwd, bwd;

  bool terms(const Term& a, const Term& b) {
    if (a.is_var() != b.is_var()) return false;
    if (a.is_var()) {
      if (a.sort() != b.sort()) return false;
      auto f = fwd.find(a.name());
      auto g = bwd.find(b.name());
      if (f != fwd.end() || g != bwd.end())
        return f != fwd.end() && g != bwd.end() && f->second == b.name() &&
               g->second == a.name();
      return a.name() == b.name();  // both free
    }
    if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
    for (size_t i = 0; i < a.args().size(); ++i)
      if (!terms(a.args()[i], b.args()[i])) return false;
    return true;
  }

  bool atoms(const Atom& a, const Atom& b) {
    if (a.is_equation() != b.is_equation()) return false;
    if (!a.is_equation() && a.predicate_name() != b.predicate_name()) return false;
    if (a.args().size() != b.args().size()) return false;
    for (size_t i = 0; i < a.args().size(); ++i)
      if (!terms(a.args()[i], b.args()[i])) return false;
    return true;
  }
};

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  if (a.vars.size() != b.vars.size() || a.body.size() != b.body.size()) return false;
  AlphaCmp cmp;
  for (size_t i = 0; i < a.vars.size(); ++i) {
    if (a.vars[i].second != b.vars[i].second) return false;
    cmp.fwd[a.vars[i].first] = b.vars[i].first;
    cmp.bwd[b.vars[i].first] = a.vars[i].first;
  }
  for (size_t i = 0; i < a.body.size(); ++i)
    if (!cmp.atoms(a.body[i], b.body[i])) return false;
  return cmp.atoms(a.head, b.head);
}

Term TermContext::fill(const Term& t) const {
  Matcher s;
  s.bind(hole, t.sort(), t);
  return s.apply(body);
}

Atom AtomContext::fill(const Term& t) const {
  Matcher s;
  s.bind(hole, t.sort(), t);
  return body.apply(s);
}

ProofTerm ProofTerm::ref(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kRef;
  n->name = std::move(name);
  return ProofTerm(std::move(n));
}
ProofTerm ProofTerm::lam(std::string hyp, ProofTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kLam;
  n->name = std::move(hyp);
  n->children = {std::move(body)};
  return ProofTerm(std::move(n));
}
ProofTerm ProofTerm::app(ProofTerm fun, ProofTerm arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kApp;
  n->children = {std::move(fun), std::move(arg)};
  return ProofTerm(std::move(n));
}
ProofTerm ProofTerm::all_intro(std::string var, std::string sort, ProofTerm body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kAllIntro;
  n->name = std::move(var);
  n->sort = std::move(sort);
  n->children = {std::move(body)};
  return ProofTerm(std::move(n));
}
ProofTerm ProofTerm::all_elim(ProofTerm fun, Term witness) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kAllElim;
  n->children = {std::move(fun)};
  n->term = std::move(witness);
  return ProofTerm(std::move(n));
}
ProofTerm ProofTerm::refl(Term t) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kRefl;
  n->term = std::move(t);
  return ProofTerm(std::move(n));
}
ProofTerm ProofTerm::sym(ProofTerm p) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kSym;
  n->children = {std::move(p)};
  return ProofTerm(std::move(n));
}
ProofTerm ProofTerm::trans(ProofTerm p, ProofTerm q) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kTrans;
  n->children = {std::move(p), std::move(q)};
  return ProofTerm(std::move(n));
}
ProofTerm ProofTerm::cong(TermContext ctx, ProofTerm p) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kCong;
  n->tctx = std::move(ctx);
  n->children = {std::move(p)};
  return ProofTerm(std::move(n));
}
ProofTerm ProofTerm::rw(ProofTerm eq, ProofTerm target, AtomContext ctx) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kRw;
  n->children = {std::move(eq), std::move(target)};
  n->actx = std::move(ctx);
  return ProofTerm(std::move(n));
}
ProofTerm ProofTerm::hole(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kHole;
  n->formula = std::move(f);
  return ProofTerm(std::move(n));
}

bool ProofTerm::operator==(const ProofTerm& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::kRef: return name() == other.name();
    case Kind::kLam: return name() == other.name() && child(0) == other.child(0);
    case Kind::kApp:
    case Kind::kTrans:
      return child(0) == other.child(0) && child(1) == other.child(1);
    case Kind::kAllIntro:
      return name() == other.name() && var_sort() == other.var_sort() &&
             child(0) == other.child(0);
    case Kind::kAllElim: return child(0) == other.child(0) && term() == other.term();
    case Kind::kRefl: return term() == other.term();
    case Kind::kSym: return child(0) == other.child(0);
    case Kind::kCong:
      return term_ctx().hole == other.term_ctx().hole &&
             term_ctx().body == other.term_ctx().body && child(0) == other.child(0);
    case Kind::kRw:
      return atom_ctx().hole == other.atom_ctx().hole &&
             atom_ctx().body == other.atom_ctx().body && child(0) == other.child(0) &&
             child(1) == other.child(1);
    case Kind::kHole: return alpha_equal(hole_formula(), other.hole_formula());
  }
  return false;
}

CheckContext CheckContext::for_problem(const Problem& p, const std::optional<Atom>& goal) {
  CheckContext ctx(p.signature);
  for (const auto& ax : p.axioms) ctx.define(ax.name, Formula::from_clause(ax.clause));
  for (const auto& h : p.hypotheses) ctx.define(h.name, Formula::atom(h.atom));
  // Ambient datatype facts. Injectivity is what Agda gets from pattern
  // matching on constructors; distinctness is translated to conclude the
  // goal atom (the bottom-free reading of an absurd constructor equation).
  for (const DatatypeDecl& d : p.signature.datatypes()) {
    for (const ConstructorDecl& c : d.constructors) {
      const FunctionSymbol* f = p.signature.find_function(c.name);
      std::vector<SortedVar> xs, ys;
      std::vector<Term> xargs, yargs;
      for (size_t i = 0; i < f->arity(); ++i) {
        xs.emplace_back("x" + std::to_string(i), f->arg_sorts[i]);
        ys.emplace_back("y" + std::to_string(i), f->arg_sorts[i]);
        xargs.push_back(Term::var(xs.back().first, xs.back().second));
        yargs.push_back(Term::var(ys.back().first, ys.back().second));
      }
      Term cx = Term::app(c.name, d.sort, xargs);
      Term cy = Term::app(c.name, d.sort, yargs);
      for (size_t k = 0; k < f->arity(); ++k) {
        Formula inj;
        inj.vars = xs;
        inj.vars.insert(inj.vars.end(), ys.begin(), ys.end());
        inj.body = {Atom::equation(cx, cy)};
        inj.head = Atom::equation(xargs[k], yargs[k]);
        ctx.define(c.name + "-inj-" + std::to_string(k), std::move(inj));
      }
      if (goal) {
        for (const ConstructorDecl& other : d.constructors) {
          if (other.name == c.name) continue;
          const FunctionSymbol* g = p.signature.find_function(other.name);
          std::vector<SortedVar> zs;
          std::vector<Term> zargs;
          for (size_t i = 0; i < g->arity(); ++i) {
            zs.emplace_back("z" + std::to_string(i), g->arg_sorts[i]);
            zargs.push_back(Term::var(zs.back().first, zs.back().second));
          }
          Formula dist;
          dist.vars = xs;
          dist.vars.insert(dist.vars.end(), zs.begin(), zs.end());
          dist.body = {Atom::equation(cx, Term::app(other.name, d.sort, zargs))};
          dist.head = *goal;
          ctx.define(c.name + "-" + other.name + "-distinct", std::move(dist));
        }
      }
    }
  }
  return ctx;
}

void CheckContext::define(const std::string& name, Formula f) {
  if (index_.count(name)) throw std::runtime_error("duplicate name in context: " + name);
  index_[name] = entries_.size();
  entries_.emplace_back(name, std::move(f));
}

const Formula* CheckContext::lookup(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &entries_[it->second].second;
}

std::string CheckResult::to_string() const {
  switch (status) {
    case Status::kOk: return "ok";
    case Status::kTypeError: return "type error at " + path + ": " + reason;
    case Status::kIncomplete: {
      std::string s = "incomplete proof; holes:";
      for (const Formula& f : holes) s += "\n  " + f.to_string();
      return s;
    }
  }
  return "?";
}

namespace {

struct Checker {
  const CheckContext& ctx;
  std::vector<std::pair<std::string, Formula>> hyps;  // local hypotheses, innermost last
  std::map<std::string, std::string> tvars;           // in-scope term variables
  std::vector<std::string> path;
  std::vector<Formula> holes;

  CheckResult fail(const std::string& reason) {
    CheckResult r;
    r.status = CheckResult::Status::kTypeError;
    std::string p;
    for (const std::string& s : path) {
      if (!p.empty()) p += '.';
      p += s;
    }
    r.path = p.empty() ? "<root>" : p;
    r.reason = reason;
    return r;
  }

  const Formula* lookup(const std::string& name) const {
    for (auto it = hyps.rbegin(); it != hyps.rend(); ++it)
      if (it->first == name) return &it->second;
    return ctx.lookup(name);
  }

  // Structural well-sortedness of a term against the signature and the
  // in-scope variables. The kernel re-verifies; it trusts nothing upstream.
  bool sort_check(const Term& t, std::string* err) const {
    if (t.is_var()) {
      auto it = tvars.find(t.name());
      if (it == tvars.end()) {
        *err = "unbound term variable " + t.name();
        return false;
      }
      if (it->second != t.sort()) {
        *err = "variable " + t.name() + " has sort " + it->second + ", used at " + t.sort();
        return false;
      }
      return true;
    }
    const FunctionSymbol* f = ctx.signature().find_function(t.name());
    if (!f) {
      *err = "unknown function symbol " + t.name();
      return false;
    }
    if (f->arity() != t.args().size() || f->result_sort != t.sort()) {
      *err = "ill-formed application of " + t.name();
      return false;
    }
    for (size_t i = 0; i < t.args().size(); ++i) {
      if (t.args()[i].sort() != f->arg_sorts[i]) {
        *err = "argument " + std::to_string(i) + " of " + t.name() + " has wrong sort";
        return false;
      }
      if (!sort_check(t.args()[i], err)) return false;
    }
    return true;
  }

  bool atom_check(const Atom& a, std::string* err) const {
    if (a.is_equation()) {
      if (a.lhs().sort() != a.rhs().sort()) {
        *err = "equation sides differ in sort";
        return false;
      }
      return sort_check(a.lhs(), err) && sort_check(a.rhs(), err);
    }
    const PredicateSymbol* p = ctx.signature().find_predicate(a.predicate_name());
    if (!p) {
      *err = "unknown predicate " + a.predicate_name();
      return false;
    }
    if (p->arg_sorts.size() != a.args().size()) {
      *err = "ill-formed predicate application " + a.predicate_name();
      return false;
    }
    for (size_t i = 0; i < a.args().size(); ++i) {
      if (a.args()[i].sort() != p->arg_sorts[i]) {
        *err = "argument " + std::to_string(i) + " of " + a.predicate_name() + " has wrong sort";
        return false;
      }
      if (!sort_check(a.args()[i], err)) return false;
    }
    return true;
  }

  // Substitutes `w` for the first prefix variable of `f`, alpha-renaming
  // later prefix variables when they would capture a variable of `w`. The
  // renaming and the witness substitution are separate passes: folding them
  // into one map would rewrite the witness's free variables.
  Formula instantiate(const Formula& f, const Term& w) const {
    Formula out;
    std::vector<std::pair<std::string, std::string>> wvars;
    w.collect_vars(wvars);
    std::set<std::string> captured;
    for (const auto& [n, s] : wvars) captured.insert(n);
    std::set<std::string> avoid = captured;
    for (size_t i = 1; i < f.vars.size(); ++i) avoid.insert(f.vars[i].first);
    Matcher rename;
    int fresh_counter = 0;
    for (size_t i = 1; i < f.vars.size(); ++i) {
      std::string name = f.vars[i].first;
      if (captured.count(name)) {
        std::string nn;
        do {
          nn = name + "'" + std::to_string(fresh_counter++);
        } while (avoid.count(nn));
        avoid.insert(nn);
        rename.bind(name, f.vars[i].second, Term::var(nn, f.vars[i].second));
        name = nn;
      }
      out.vars.emplace_back(name, f.vars[i].second);
    }
    Matcher wit;
    wit.bind(f.vars[0].first, f.vars[0].second, w);
    for (const Atom& a : f.body) out.body.push_back(a.apply(rename).apply(wit));
    out.head = f.head.apply(rename).apply(wit);
    return out;
  }

  // Infers the formula of an elimination-form or leaf term.
  std::optional<Formula> infer(const ProofTerm& t, CheckResult& err) {
    switch (t.kind()) {
      case ProofTerm::Kind::kRef: {
        const Formula* f = lookup(t.name());
        if (!f) {
          err = fail("unresolved reference " + t.name());
          return std::nullopt;
        }
        return *f;
      }
      case ProofTerm::Kind::kApp: {
        path.push_back("app.fun");
        auto gf = infer(t.child(0), err);
        path.pop_back();
        if (!gf) return std::nullopt;
        if (!gf->vars.empty()) {
          err = fail("applied a proof with a remaining universal prefix");
          return std::nullopt;
        }
        if (gf->body.empty()) {
          err = fail("applied a proof of an atom");
          return std::nullopt;
        }
        path.push_back("app.arg");
        CheckResult sub = check_against(t.child(1), Formula::atom(gf->body.front()));
        path.pop_back();
        if (!sub.ok()) {
          err = sub;
          return std::nullopt;
        }
        Formula rest;
        rest.body.assign(gf->body.begin() + 1, gf->body.end());
        rest.head = gf->head;
        return rest;
      }
      case ProofTerm::Kind::kAllElim: {
        path.push_back("inst.fun");
        auto gf = infer(t.child(0), err);
        path.pop_back();
        if (!gf) return std::nullopt;
        if (gf->vars.empty()) {
          err = fail("instantiated a proof without a universal prefix");
          return std::nullopt;
        }
        std::string why;
        if (!sort_check(t.term(), &why)) {
          err = fail("bad witness: " + why);
          return std::nullopt;
        }
        if (t.term().sort() != gf->vars[0].second) {
          err = fail("witness has sort " + t.term().sort() + ", expected " + gf->vars[0].second);
          return std::nullopt;
        }
        return instantiate(*gf, t.term());
      }
      case ProofTerm::Kind::kRefl: {
        std::string why;
        if (!sort_check(t.term(), &why)) {
          err = fail("bad refl term: " + why);
          return std::nullopt;
        }
        return Formula::atom(Atom::equation(t.term(), t.term()));
      }
      case ProofTerm::Kind::kSym: {
        path.push_back("sym");
        auto g = infer_equation(t.child(0), err);
        path.pop_back();
        if (!g) return std::nullopt;
        return Formula::atom(g->flipped());
      }
      case ProofTerm::Kind::kTrans: {
        path.push_back("trans.0");
        auto g1 = infer_equation(t.child(0), err);
        path.pop_back();
        if (!g1) return std::nullopt;
        path.push_back("trans.1");
        auto g2 = infer_equation(t.child(1), err);
        path.pop_back();
        if (!g2) return std::nullopt;
        if (!(g1->rhs() == g2->lhs())) {
          err = fail("trans legs do not meet: " + g1->rhs().to_string() + " vs " +
                     g2->lhs().to_string());
          return std::nullopt;
        }
        return Formula::atom(Atom::equation(g1->lhs(), g2->rhs()));
      }
      case ProofTerm::Kind::kCong: {
        path.push_back("cong");
        auto g = infer_equation(t.child(0), err);
        path.pop_back();
        if (!g) return std::nullopt;
        const TermContext& c = t.term_ctx();
        if (c.hole_sort != g->lhs().sort()) {
          err = fail("context hole sort " + c.hole_sort + " does not match equation sort " +
                     g->lhs().sort());
          return std::nullopt;
        }
        std::string why;
        if (!context_check(c, &why)) {
          err = fail(why);
          return std::nullopt;
        }
        return Formula::atom(Atom::equation(c.fill(g->lhs()), c.fill(g->rhs())));
      }
      case ProofTerm::Kind::kRw: {
        path.push_back("rw.eq");
        auto ge = infer_equation(t.child(0), err);
        path.pop_back();
        if (!ge) return std::nullopt;
        const AtomContext& c = t.atom_ctx();
        if (c.hole_sort != ge->lhs().sort()) {
          err = fail("rw context hole sort does not match equation sort");
          return std::nullopt;
        }
        std::string why;
        if (!atom_context_check(c, &why)) {
          err = fail(why);
          return std::nullopt;
        }
        path.push_back("rw.target");
        CheckResult sub = check_against(t.child(1), Formula::atom(c.fill(ge->lhs())));
        path.pop_back();
        if (!sub.ok()) {
          err = sub;
          return std::nullopt;
        }
        return Formula::atom(c.fill(ge->rhs()));
      }
      default:
        err = fail("introduction form where an inference was required");
        return std::nullopt;
    }
  }

  std::optional<Atom> infer_equation(const ProofTerm& t, CheckResult& err) {
    auto g = infer(t, err);
    if (!g) return std::nullopt;
    if (!g->is_plain_atom() || !g->head.is_equation()) {
      err = fail("expected a proof of an equation, got " + g->to_string());
      return std::nullopt;
    }
    return g->head;
  }

  bool context_check(const TermContext& c, std::string* why) const {
    size_t occurrences = 0;
    count_holes_term(c.body, c.hole, occurrences);
    if (occurrences != 1) {
      *why = "context must contain exactly one hole, found " + std::to_string(occurrences);
      return false;
    }
    Checker probe = *this;
    probe.tvars[c.hole] = c.hole_sort;
    return probe.sort_check(c.body, why);
  }

  bool atom_context_check(const AtomContext& c, std::string* why) const {
    size_t occurrences = 0;
    for (const Term& t : c.body.args()) count_holes_term(t, c.hole, occurrences);
    if (occurrences != 1) {
      *why = "atom context must contain exactly one hole, found " + std::to_string(occurrences);
      return false;
    }
    Checker probe = *this;
    probe.tvars[c.hole] = c.hole_sort;
    return probe.atom_check(c.body, why);
  }

  static void count_holes_term(const Term& t, const std::string& hole, size_t& n) {
    if (t.is_var()) {
      if (t.name() == hole) ++n;
      return;
    }
    for (const Term& a : t.args()) count_holes_term(a, hole, n);
  }

  CheckResult check_against(const ProofTerm& t, const Formula& expected) {
    switch (t.kind()) {
      case ProofTerm::Kind::kAllIntro: {
        if (expected.vars.empty()) return fail("universal introduction against " + expected.to_string());
        if (expected.vars[0].second != t.var_sort())
          return fail("binder sort " + t.var_sort() + ", expected " + expected.vars[0].second);
        if (tvars.count(t.name())) return fail("binder shadows a variable in scope: " + t.name());
        Formula inner = instantiate(expected, Term::var(t.name(), t.var_sort()));
        tvars[t.name()] = t.var_sort();
        path.push_back("\\" + t.name());
        CheckResult r = check_against(t.child(0), inner);
        path.pop_back();
        tvars.erase(t.name());
        return r;
      }
      case ProofTerm::Kind::kLam: {
        if (!expected.vars.empty())
          return fail("hypothesis lambda against a universal formula");
        if (expected.body.empty()) return fail("hypothesis lambda against an atom");
        Formula rest;
        rest.body.assign(expected.body.begin() + 1, expected.body.end());
        rest.head = expected.head;
        hyps.emplace_back(t.name(), Formula::atom(expected.body.front()));
        path.push_back("\\" + t.name());
        CheckResult r = check_against(t.child(0), rest);
        path.pop_back();
        hyps.pop_back();
        return r;
      }
      case ProofTerm::Kind::kHole: {
        if (!alpha_equal(t.hole_formula(), expected))
          return fail("hole annotated with " + t.hole_formula().to_string() + ", expected " +
                      expected.to_string());
        holes.push_back(expected);
        CheckResult r;
        r.status = CheckResult::Status::kIncomplete;
        r.holes = holes;
        return r;
      }
      default: {
        CheckResult err;
        auto g = infer(t, err);
        if (!g) return err;
        if (!alpha_equal(*g, expected))
          return fail("proves " + g->to_string() + ", expected " + expected.to_string());
        CheckResult ok;
        return ok;
      }
    }
  }
};

}  // namespace

CheckResult check(const CheckContext& ctx, const ProofTerm& t, const Formula& expected) {
  Checker c{ctx};
  return c.check_against(t, expected);
}

namespace {

ProofTerm normalize_once(const ProofTerm& t, bool& changed) {
  using K = ProofTerm::Kind;
  switch (t.kind()) {
    case K::kLam: {
      ProofTerm b = normalize_once(t.child(0), changed);
      return ProofTerm::lam(t.name(), std::move(b));
    }
    case K::kAllIntro: {
      ProofTerm b = normalize_once(t.child(0), changed);
      return ProofTerm::all_intro(t.name(), t.var_sort(), std::move(b));
    }
    case K::kApp: {
      ProofTerm f = normalize_once(t.child(0), changed);
      ProofTerm a = normalize_once(t.child(1), changed);
      return ProofTerm::app(std::move(f), std::move(a));
    }
    case K::kAllElim: {
      ProofTerm f = normalize_once(t.child(0), changed);
      return ProofTerm::all_elim(std::move(f), t.term());
    }
    case K::kSym: {
      ProofTerm p = normalize_once(t.child(0), changed);
      if (p.kind() == K::kSym) {
        changed = true;
        return p.child(0);
      }
      if (p.kind() == K::kRefl) {
        changed = true;
        return p;
      }
      return ProofTerm::sym(std::move(p));
    }
    case K::kTrans: {
      ProofTerm p = normalize_once(t.child(0), changed);
      ProofTerm q = normalize_once(t.child(1), changed);
      if (p.kind() == K::kRefl) {
        changed = true;
        return q;
      }
      if (q.kind() == K::kRefl) {
        changed = true;
        return p;
      }
      return ProofTerm::trans(std::move(p), std::move(q));
    }
    case K::kCong: {
      ProofTerm p = normalize_once(t.child(0), changed);
      if (t.term_ctx().is_identity()) {
        changed = true;
        return p;
      }
      return ProofTerm::cong(t.term_ctx(), std::move(p));
    }
    case K::kRw: {
      ProofTerm e = normalize_once(t.child(0), changed);
      ProofTerm p = normalize_once(t.child(1), changed);
      return ProofTerm::rw(std::move(e), std::move(p), t.atom_ctx());
    }
    default:
      return t;
  }
}

}  // namespace

ProofTerm normalize_light(const ProofTerm& t) {
  ProofTerm cur = t;
  for (;;) {
    bool changed = false;
    cur = normalize_once(cur, changed);
    if (!changed) return cur;
  }
}

const ProofDef* Proof::find(const std::string& name) const {
  for (const ProofDef& d : defs)
    if (d.name == name) return &d;
  return nullptr;
}

namespace {

void collect_refs(const ProofTerm& t, std::set<std::string>& out) {
  if (t.kind() == ProofTerm::Kind::kRef) {
    out.insert(t.name());
    return;
  }
  for (size_t i = 0; i < t.child_count(); ++i) collect_refs(t.child(i), out);
}

}  // namespace

Proof Proof::pruned() const {
  std::set<std::string> live;
  std::vector<std::string> work{qed};
  while (!work.empty()) {
    std::string n = work.back();
    work.pop_back();
    if (!live.insert(n).second) continue;
    if (const ProofDef* d = find(n)) {
      std::set<std::string> refs;
      collect_refs(d->term, refs);
      for (const std::string& r : refs) work.push_back(r);
    }
  }
  Proof out;
  out.qed = qed;
  for (const ProofDef& d : defs)
    if (live.count(d.name)) out.defs.push_back(d);
  return out;
}

CheckResult check_proof(const CheckContext& base, const Proof& proof, const Formula& goal) {
  CheckContext ctx = base;
  std::vector<Formula> holes;
  for (const ProofDef& d : proof.defs) {
    if (ctx.defined(d.name)) {
      CheckResult r;
      r.status = CheckResult::Status::kTypeError;
      r.path = d.name;
      r.reason = "name already defined";
      return r;
    }
    CheckResult r = check(ctx, d.term, d.formula);
    if (r.status == CheckResult::Status::kTypeError) {
      r.path = d.name + "." + r.path;
      return r;
    }
    if (r.status == CheckResult::Status::kIncomplete)
      holes.insert(holes.end(), r.holes.begin(), r.holes.end());
    ctx.define(d.name, d.formula);
  }
  const ProofDef* last = proof.find(proof.qed);
  CheckResult r;
  if (!last) {
    r.status = CheckResult::Status::kTypeError;
    r.path = proof.qed;
    r.reason = "qed names an undefined step";
    return r;
  }
  if (!alpha_equal(last->formula, goal)) {
    r.status = CheckResult::Status::kTypeError;
    r.path = proof.qed;
    r.reason = "final formula " + last->formula.to_string() + " does not match the goal " +
               goal.to_string();
    return r;
  }
  if (!holes.empty()) {
    r.status = CheckResult::Status::kIncomplete;
    r.holes = std::move(holes);
  }
  return r;
}

}  // namespace hornforge
