#include <functional>
#include <sstream>

#include "hornforge/kernel.hpp"
#include "hornforge/sexpr.hpp"
#include "hornforge/smtlib.hpp"

namespace hornforge {

namespace {

std::string emit_formula(const Formula& f, const Signature& sig) {
  std::ostringstream os;
  bool wrap = !f.vars.empty();
  if (wrap) {
    os << "(forall (";
    for (size_t i = 0; i < f.vars.size(); ++i) {
      if (i) os << ' ';
      os << '(' << f.vars[i].first << ' ' << f.vars[i].second << ')';
    }
    os << ") ";
  }
  if (f.body.empty()) {
    os << emit_smt_atom(f.head, sig);
  } else if (f.body.size() == 1) {
    os << "(=> " << emit_smt_atom(f.body[0], sig) << ' ' << emit_smt_atom(f.head, sig) << ')';
  } else {
    os << "(=> (and";
    for (const Atom& a : f.body) os << ' ' << emit_smt_atom(a, sig);
    os << ") " << emit_smt_atom(f.head, sig) << ')';
  }
  if (wrap) os << ')';
  return os.str();
}

std::string emit_term(const ProofTerm& t, const Signature& sig) {
  using K = ProofTerm::Kind;
  switch (t.kind()) {
    case K::kRef:
      return t.name();
    case K::kLam:
      return "(\\" + t.name() + " -> " + emit_term(t.child(0), sig) + ")";
    case K::kAllIntro:
      return "(\\ (" + t.name() + " " + t.var_sort() + ") -> " + emit_term(t.child(0), sig) + ")";
    case K::kApp:
    case K::kAllElim: {
      // Flatten an application spine for readability.
      std::vector<std::string> args;
      const ProofTerm* cur = &t;
      while (cur->kind() == K::kApp || cur->kind() == K::kAllElim) {
        if (cur->kind() == K::kApp) {
          args.push_back(emit_term(cur->child(1), sig));
        } else {
          args.push_back(emit_smt_term(cur->term(), sig));
        }
        cur = &cur->child(0);
      }
      std::string head = emit_term(*cur, sig);
      std::string out = "(" + head;
      for (auto it = args.rbegin(); it != args.rend(); ++it) out += " " + *it;
      return out + ")";
    }
    case K::kRefl:
      return "(refl " + emit_smt_term(t.term(), sig) + ")";
    case K::kSym:
      return "(sym " + emit_term(t.child(0), sig) + ")";
    case K::kTrans:
      return "(trans " + emit_term(t.child(0), sig) + " " + emit_term(t.child(1), sig) + ")";
    case K::kCong: {
      const TermContext& c = t.term_ctx();
      std::string binder = c.is_identity() ? "(\\ (" + c.hole + " " + c.hole_sort + ") -> "
                                           : "(\\" + c.hole + " -> ";
      return "(cong " + binder + emit_smt_term(c.body, sig) + ") " +
             emit_term(t.child(0), sig) + ")";
    }
    case K::kRw: {
      const AtomContext& c = t.atom_ctx();
      return "(rw " + emit_term(t.child(0), sig) + " " + emit_term(t.child(1), sig) + " (\\" +
             c.hole + " -> " + emit_smt_atom(c.body, sig) + "))";
    }
    case K::kHole:
      return "(hole " + emit_formula(t.hole_formula(), sig) + ")";
  }
  return "?";
}

}  // namespace

std::string emit_surface(const Proof& proof, const Signature& sig) {
  std::ostringstream os;
  os << "(proof\n";
  for (const ProofDef& d : proof.defs) {
    os << "  (def " << d.name << "\n    " << emit_formula(d.formula, sig) << "\n    "
       << emit_term(d.term, sig) << ")\n";
  }
  os << "  (qed " << proof.qed << "))\n";
  return os.str();
}

namespace {

struct SurfaceParser {
  const Signature& sig;
  std::vector<SortedVar> bound;  // in-scope term binders (all-intro vars)

  Formula parse_formula(const Sexpr& e) {
    std::vector<SortedVar> vars;
    const Sexpr* body = &e;
    if (e.is_list() && e.size() > 0 && e[0].is_atom && e[0].atom == "forall") {
      if (e.size() != 3 || !e[1].is_list())
        throw ParseError("expected (forall ((v s)...) body)", e.line, e.column);
      for (const Sexpr& b : e[1].items) {
        if (!b.is_list() || b.size() != 2)
          throw ParseError("expected (var sort) binder", b.line, b.column);
        vars.emplace_back(b[0].as_atom("variable"), b[1].as_atom("sort"));
      }
      body = &e[2];
    }
    std::vector<SortedVar> scope = bound;
    scope.insert(scope.end(), vars.begin(), vars.end());
    Formula f;
    f.vars = std::move(vars);
    if (body->is_list() && body->size() == 3 && (*body)[0].is_atom && (*body)[0].atom == "=>") {
      const Sexpr& ante = (*body)[1];
      if (ante.is_list() && ante.size() > 0 && ante[0].is_atom && ante[0].atom == "and") {
        for (size_t i = 1; i < ante.size(); ++i)
          f.body.push_back(parse_smt_atom(ante[i], sig, scope));
      } else {
        f.body.push_back(parse_smt_atom(ante, sig, scope));
      }
      f.head = parse_smt_atom((*body)[2], sig, scope);
    } else {
      f.head = parse_smt_atom(*body, sig, scope);
    }
    return f;
  }

  // Is this s-expression a term over the signature and current binders?
  bool looks_like_term(const Sexpr& e) const {
    if (e.is_atom) {
      for (const auto& [n, s] : bound)
        if (n == e.atom) return true;
      return sig.find_function(e.atom) != nullptr;
    }
    if (e.size() == 0 || !e[0].is_atom) return false;
    return sig.find_function(e[0].atom) != nullptr;
  }

  // Parses a term context body, inferring the hole's sort from its position.
  // Returns the body term; `hole_sort` is filled in.
  Term parse_ctx_term(const Sexpr& e, const std::string& hole, const std::string& expected_sort,
                      std::string& hole_sort) {
    if (e.is_atom) {
      if (e.atom == hole) {
        if (expected_sort.empty() && hole_sort.empty())
          throw ParseError("cannot infer hole sort; annotate the binder", e.line, e.column);
        if (hole_sort.empty()) hole_sort = expected_sort;
        return Term::var(hole, hole_sort);
      }
      for (const auto& [n, s] : bound)
        if (n == e.atom) return Term::var(n, s);
      const FunctionSymbol* f = sig.find_function(e.atom);
      if (!f || f->arity() != 0) throw ParseError("unknown symbol: " + e.atom, e.line, e.column);
      return Term::app(e.atom, f->result_sort, {});
    }
    if (e.size() == 0 || !e[0].is_atom) throw ParseError("bad term", e.line, e.column);
    const FunctionSymbol* f = sig.find_function(e[0].atom);
    if (!f) throw ParseError("unknown symbol: " + e[0].atom, e[0].line, e[0].column);
    if (f->arity() != e.size() - 1)
      throw ParseError("arity mismatch for " + e[0].atom, e.line, e.column);
    std::vector<Term> args;
    for (size_t i = 1; i < e.size(); ++i)
      args.push_back(parse_ctx_term(e[i], hole, f->arg_sorts[i - 1], hole_sort));
    return Term::app(e[0].atom, f->result_sort, std::move(args));
  }

  Atom parse_ctx_atom(const Sexpr& e, const std::string& hole, std::string& hole_sort) {
    if (!e.is_list() || e.size() == 0 || !e[0].is_atom)
      throw ParseError("bad atom context", e.line, e.column);
    if (e[0].atom == "=") {
      if (e.size() != 3) throw ParseError("'=' takes two arguments", e.line, e.column);
      // Two passes: the non-hole side fixes the sort for a root hole.
      std::string probe = hole_sort;
      Term lhs, rhs;
      try {
        lhs = parse_ctx_term(e[1], hole, "", hole_sort);
        rhs = parse_ctx_term(e[2], hole, lhs.sort(), hole_sort);
      } catch (const ParseError&) {
        hole_sort = probe;
        rhs = parse_ctx_term(e[2], hole, "", hole_sort);
        lhs = parse_ctx_term(e[1], hole, rhs.sort(), hole_sort);
      }
      return Atom::equation(std::move(lhs), std::move(rhs));
    }
    const PredicateSymbol* pr = sig.find_predicate(e[0].atom);
    if (!pr) throw ParseError("unknown predicate: " + e[0].atom, e[0].line, e[0].column);
    if (pr->arg_sorts.size() != e.size() - 1)
      throw ParseError("arity mismatch for predicate " + e[0].atom, e.line, e.column);
    std::vector<Term> args;
    for (size_t i = 1; i < e.size(); ++i)
      args.push_back(parse_ctx_term(e[i], hole, pr->arg_sorts[i - 1], hole_sort));
    return Atom::predicate(e[0].atom, std::move(args));
  }

  // Lambda shapes: (\name -> body), (\ (x S) -> body)
  struct LambdaParts {
    std::string name;
    std::string sort;  // empty for hypothesis lambdas and unsorted holes
    const Sexpr* body;
  };
  std::optional<LambdaParts> match_lambda(const Sexpr& e) const {
    if (!e.is_list() || e.size() < 3 || !e[0].is_atom || e[0].atom[0] != '\\') return std::nullopt;
    LambdaParts p;
    size_t arrow;
    if (e[0].atom == "\\") {
      if (!e[1].is_list() || e[1].size() != 2) return std::nullopt;
      p.name = e[1][0].as_atom("binder name");
      p.sort = e[1][1].as_atom("binder sort");
      arrow = 2;
    } else {
      p.name = e[0].atom.substr(1);
      arrow = 1;
    }
    if (arrow + 2 != e.size() || !e[arrow].is_atom || e[arrow].atom != "->") return std::nullopt;
    p.body = &e[arrow + 1];
    return p;
  }

  ProofTerm parse_term(const Sexpr& e) {
    if (e.is_atom) return ProofTerm::ref(e.atom);
    if (e.size() == 0) throw ParseError("empty proof term", e.line, e.column);
    if (auto lam = match_lambda(e)) {
      if (!lam->sort.empty()) {
        if (!sig.find_sort(lam->sort))
          throw ParseError("unknown sort: " + lam->sort, e.line, e.column);
        bound.emplace_back(lam->name, lam->sort);
        ProofTerm body = parse_term(*lam->body);
        bound.pop_back();
        return ProofTerm::all_intro(lam->name, lam->sort, std::move(body));
      }
      return ProofTerm::lam(lam->name, parse_term(*lam->body));
    }
    const std::string head = e[0].is_atom ? e[0].atom : "";
    if (head == "refl") {
      if (e.size() != 2) throw ParseError("refl takes one term", e.line, e.column);
      return ProofTerm::refl(parse_smt_term(e[1], sig, bound));
    }
    if (head == "sym") {
      if (e.size() != 2) throw ParseError("sym takes one proof", e.line, e.column);
      return ProofTerm::sym(parse_term(e[1]));
    }
    if (head == "trans") {
      if (e.size() != 3) throw ParseError("trans takes two proofs", e.line, e.column);
      ProofTerm p = parse_term(e[1]);
      return ProofTerm::trans(std::move(p), parse_term(e[2]));
    }
    if (head == "cong") {
      if (e.size() != 3) throw ParseError("cong takes a context and a proof", e.line, e.column);
      auto lam = match_lambda(e[1]);
      if (!lam) throw ParseError("cong context must be a lambda", e[1].line, e[1].column);
      TermContext ctx;
      ctx.hole = lam->name;
      ctx.hole_sort = lam->sort;  // may be empty; inferred from use
      ctx.body = parse_ctx_term(*lam->body, ctx.hole, lam->sort, ctx.hole_sort);
      return ProofTerm::cong(std::move(ctx), parse_term(e[2]));
    }
    if (head == "rw") {
      if (e.size() != 4)
        throw ParseError("rw takes an equation, a proof, and a context", e.line, e.column);
      auto lam = match_lambda(e[3]);
      if (!lam) throw ParseError("rw context must be a lambda", e[3].line, e[3].column);
      AtomContext ctx;
      ctx.hole = lam->name;
      ctx.hole_sort = lam->sort;
      ctx.body = parse_ctx_atom(*lam->body, ctx.hole, ctx.hole_sort);
      ProofTerm eq = parse_term(e[1]);
      ProofTerm target = parse_term(e[2]);
      return ProofTerm::rw(std::move(eq), std::move(target), std::move(ctx));
    }
    if (head == "hole") {
      if (e.size() != 2) throw ParseError("hole takes a formula", e.line, e.column);
      return ProofTerm::hole(parse_formula(e[1]));
    }
    // Application spine: (f a1 a2 ...). Arguments that parse as terms over
    // the signature are universal instantiations; the rest are proofs.
    ProofTerm cur = parse_term(e[0]);
    for (size_t i = 1; i < e.size(); ++i) {
      if (looks_like_term(e[i])) {
        cur = ProofTerm::all_elim(std::move(cur), parse_smt_term(e[i], sig, bound));
      } else {
        cur = ProofTerm::app(std::move(cur), parse_term(e[i]));
      }
    }
    return cur;
  }
};

}  // namespace

Proof parse_surface(const std::string& text, const Signature& sig) {
  std::vector<Sexpr> top = parse_sexprs(text);
  if (top.size() != 1 || !top[0].is_list() || top[0].size() < 2 || !top[0][0].is_atom ||
      top[0][0].atom != "proof")
    throw ParseError("expected a single (proof ...) document", 1, 1);
  const Sexpr& doc = top[0];
  Proof proof;
  SurfaceParser sp{sig};
  for (size_t i = 1; i < doc.size(); ++i) {
    const Sexpr& item = doc[i];
    if (!item.is_list() || item.size() == 0 || !item[0].is_atom)
      throw ParseError("expected (def ...) or (qed ...)", item.line, item.column);
    if (item[0].atom == "def") {
      if (item.size() != 4) throw ParseError("expected (def name formula term)", item.line, item.column);
      ProofDef d;
      d.name = item[1].as_atom("definition name");
      d.formula = sp.parse_formula(item[2]);
      sp.bound.clear();
      d.term = sp.parse_term(item[3]);
      proof.defs.push_back(std::move(d));
      continue;
    }
    if (item[0].atom == "qed") {
      if (item.size() != 2) throw ParseError("expected (qed name)", item.line, item.column);
      proof.qed = item[1].as_atom("qed name");
      if (i + 1 != doc.size()) throw ParseError("(qed ...) must be last", item.line, item.column);
      continue;
    }
    throw ParseError("unexpected item: " + item[0].atom, item.line, item.column);
  }
  if (proof.qed.empty()) throw ParseError("missing (qed ...)", doc.line, doc.column);
  return proof;
}

}  // namespace hornforge
