#include "hornforge/smtlib.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace hornforge {

namespace {

bool valid_identifier(const std::string& s) {
  return !s.empty() && !std::isdigit(static_cast<unsigned char>(s[0]));
}

void check_identifier(const Sexpr& e, const char* what) {
  if (!e.is_atom || !valid_identifier(e.atom))
    throw ParseError(std::string("expected ") + what, e.line, e.column);
}

const SortedVar* find_bound(const std::vector<SortedVar>& bound, const std::string& name) {
  for (const auto& v : bound)
    if (v.first == name) return &v;
  return nullptr;
}

// Style recorder: notes the first-seen print form of each nullary symbol.
struct StyleRecorder {
  Signature* sig = nullptr;
  std::set<std::string> styled;
  void record(const std::string& name, PrintStyle style) {
    if (sig && styled.insert(name).second) sig->set_style(name, style);
  }
};

Term parse_term_impl(const Sexpr& e, const Signature& sig, const std::vector<SortedVar>& bound,
                     StyleRecorder* styles) {
  if (e.is_atom) {
    check_identifier(e, "term");
    if (const SortedVar* v = find_bound(bound, e.atom)) return Term::var(v->first, v->second);
    const FunctionSymbol* f = sig.find_function(e.atom);
    if (!f) throw ParseError("unknown symbol: " + e.atom, e.line, e.column);
    if (f->arity() != 0)
      throw ParseError("symbol " + e.atom + " expects arguments", e.line, e.column);
    if (styles) styles->record(e.atom, PrintStyle::kBare);
    return Term::app(e.atom, f->result_sort, {});
  }
  if (e.size() == 0) throw ParseError("empty term", e.line, e.column);
  check_identifier(e[0], "function symbol");
  const std::string& fname = e[0].atom;
  const FunctionSymbol* f = sig.find_function(fname);
  if (!f) throw ParseError("unknown symbol: " + fname, e[0].line, e[0].column);
  if (f->arity() != e.size() - 1)
    throw ParseError("arity mismatch for " + fname + ": expected " + std::to_string(f->arity()) +
                         ", got " + std::to_string(e.size() - 1),
                     e.line, e.column);
  if (f->arity() == 0 && styles) styles->record(fname, PrintStyle::kApplied);
  std::vector<Term> args;
  for (size_t i = 1; i < e.size(); ++i) args.push_back(parse_term_impl(e[i], sig, bound, styles));
  for (size_t i = 0; i < args.size(); ++i)
    if (args[i].sort() != f->arg_sorts[i])
      throw ParseError("argument " + std::to_string(i) + " of " + fname + " has sort " +
                           args[i].sort() + ", expected " + f->arg_sorts[i],
                       e.line, e.column);
  return Term::app(fname, f->result_sort, std::move(args));
}

Atom parse_atom_impl(const Sexpr& e, const Signature& sig, const std::vector<SortedVar>& bound,
                     StyleRecorder* styles) {
  if (e.is_atom) {
    // Nullary predicate.
    check_identifier(e, "atom");
    const PredicateSymbol* pr = sig.find_predicate(e.atom);
    if (!pr) throw ParseError("unknown predicate: " + e.atom, e.line, e.column);
    if (!pr->arg_sorts.empty())
      throw ParseError("predicate " + e.atom + " expects arguments", e.line, e.column);
    return Atom::predicate(e.atom, {});
  }
  if (e.size() == 0) throw ParseError("empty atom", e.line, e.column);
  check_identifier(e[0], "atom head");
  const std::string& head = e[0].atom;
  if (head == "=") {
    if (e.size() != 3) throw ParseError("'=' takes two arguments", e.line, e.column);
    Term lhs = parse_term_impl(e[1], sig, bound, styles);
    Term rhs = parse_term_impl(e[2], sig, bound, styles);
    if (lhs.sort() != rhs.sort())
      throw ParseError("equation sides have sorts " + lhs.sort() + " and " + rhs.sort(), e.line,
                       e.column);
    return Atom::equation(std::move(lhs), std::move(rhs));
  }
  const PredicateSymbol* pr = sig.find_predicate(head);
  if (!pr) throw ParseError("unknown predicate: " + head, e[0].line, e[0].column);
  if (pr->arg_sorts.size() != e.size() - 1)
    throw ParseError("arity mismatch for predicate " + head, e.line, e.column);
  std::vector<Term> args;
  for (size_t i = 1; i < e.size(); ++i) args.push_back(parse_term_impl(e[i], sig, bound, styles));
  for (size_t i = 0; i < args.size(); ++i)
    if (args[i].sort() != pr->arg_sorts[i])
      throw ParseError("argument " + std::to_string(i) + " of " + head + " has sort " +
                           args[i].sort() + ", expected " + pr->arg_sorts[i],
                       e.line, e.column);
  return Atom::predicate(head, std::move(args));
}

struct ProblemParser {
  Problem p;
  bool seen_goal = false;
  std::set<std::string> assert_names;
  StyleRecorder styles;

  ProblemParser() { styles.sig = &p.signature; }

  Term parse_term(const Sexpr& e, const std::vector<SortedVar>& bound) {
    return parse_term_impl(e, p.signature, bound, &styles);
  }

  Atom parse_atom(const Sexpr& e, const std::vector<SortedVar>& bound) {
    return parse_atom_impl(e, p.signature, bound, &styles);
  }

  // Horn body: atom | (=> atom head) | (=> (and atom+) head)
  std::pair<std::vector<Atom>, Atom> parse_horn(const Sexpr& e,
                                                const std::vector<SortedVar>& bound) {
    if (e.is_list() && e.size() > 0 && e[0].is_atom && e[0].atom == "=>") {
      if (e.size() != 3) throw ParseError("'=>' takes two arguments", e.line, e.column);
      std::vector<Atom> body;
      const Sexpr& ante = e[1];
      if (ante.is_list() && ante.size() > 0 && ante[0].is_atom && ante[0].atom == "and") {
        if (ante.size() < 2) throw ParseError("'and' needs at least one atom", ante.line, ante.column);
        for (size_t i = 1; i < ante.size(); ++i) body.push_back(parse_atom(ante[i], bound));
      } else {
        body.push_back(parse_atom(ante, bound));
      }
      Atom head = parse_atom(e[2], bound);
      return {std::move(body), std::move(head)};
    }
    if (e.is_list() && e.size() > 0 && e[0].is_atom &&
        (e[0].atom == "or" || e[0].atom == "not" || e[0].atom == "forall" || e[0].atom == "exists"))
      throw ParseError("body is not in the Horn fragment: " + e[0].atom, e.line, e.column);
    return {{}, parse_atom(e, bound)};
  }

  // (! expr :named name) -> (expr, name)
  std::pair<const Sexpr*, std::string> strip_named(const Sexpr& e) {
    if (!(e.is_list() && e.size() == 4 && e[0].is_atom && e[0].atom == "!" && e[2].is_atom &&
          e[2].atom == ":named"))
      throw ParseError("expected (! <formula> :named <name>)", e.line, e.column);
    check_identifier(e[3], "assertion name");
    return {&e[1], e[3].atom};
  }

  void register_name(const std::string& name, const Sexpr& where) {
    if (!assert_names.insert(name).second)
      throw ParseError("duplicate assertion name: " + name, where.line, where.column);
  }

  void handle(const Sexpr& stmt) {
    if (!stmt.is_list() || stmt.size() == 0 || !stmt[0].is_atom)
      throw ParseError("expected a command", stmt.line, stmt.column);
    const std::string& cmd = stmt[0].atom;
    if (cmd == "declare-sort") {
      if (stmt.size() != 3 || !stmt[2].is_atom || stmt[2].atom != "0")
        throw ParseError("expected (declare-sort <name> 0)", stmt.line, stmt.column);
      check_identifier(stmt[1], "sort name");
      if (p.signature.find_sort(stmt[1].atom))
        throw ParseError("duplicate sort: " + stmt[1].atom, stmt.line, stmt.column);
      p.signature.add_sort({stmt[1].atom, false, {}});
      p.layout.push_back({LayoutItem::Kind::kSort, stmt[1].atom});
      return;
    }
    if (cmd == "declare-fun") {
      if (stmt.size() != 4 || !stmt[2].is_list())
        throw ParseError("expected (declare-fun <name> (<sorts>) <sort>)", stmt.line, stmt.column);
      check_identifier(stmt[1], "function name");
      check_identifier(stmt[3], "result sort");
      std::vector<std::string> arg_sorts;
      for (const Sexpr& s : stmt[2].items) {
        check_identifier(s, "argument sort");
        if (!p.signature.find_sort(s.atom))
          throw ParseError("unknown sort: " + s.atom, s.line, s.column);
        arg_sorts.push_back(s.atom);
      }
      if (stmt[3].atom == "Bool") {
        p.signature.add_predicate({stmt[1].atom, std::move(arg_sorts)});
      } else {
        if (!p.signature.find_sort(stmt[3].atom))
          throw ParseError("unknown sort: " + stmt[3].atom, stmt[3].line, stmt[3].column);
        FunctionSymbol f;
        f.name = stmt[1].atom;
        f.arg_sorts = std::move(arg_sorts);
        f.result_sort = stmt[3].atom;
        f.style = f.arg_sorts.empty() ? PrintStyle::kBare : PrintStyle::kApplied;
        p.signature.add_function(std::move(f));
      }
      p.layout.push_back({LayoutItem::Kind::kFunction, stmt[1].atom});
      return;
    }
    if (cmd == "declare-const") {
      if (stmt.size() != 3)
        throw ParseError("expected (declare-const <name> <sort>)", stmt.line, stmt.column);
      check_identifier(stmt[1], "constant name");
      check_identifier(stmt[2], "sort");
      if (!p.signature.find_sort(stmt[2].atom))
        throw ParseError("unknown sort: " + stmt[2].atom, stmt[2].line, stmt[2].column);
      FunctionSymbol f;
      f.name = stmt[1].atom;
      f.result_sort = stmt[2].atom;
      p.signature.add_function(std::move(f));
      p.layout.push_back({LayoutItem::Kind::kFunction, stmt[1].atom});
      return;
    }
    if (cmd == "declare-datatype") {
      if (stmt.size() != 3 || !stmt[2].is_list() || stmt[2].size() == 0)
        throw ParseError("expected (declare-datatype <name> ((ctor ...) ...))", stmt.line,
                         stmt.column);
      check_identifier(stmt[1], "datatype name");
      DatatypeDecl d;
      d.sort = stmt[1].atom;
      // The datatype sort must be visible to its own constructors; stage it.
      if (p.signature.find_sort(d.sort))
        throw ParseError("duplicate sort: " + d.sort, stmt.line, stmt.column);
      for (const Sexpr& c : stmt[2].items) {
        if (!c.is_list() || c.size() == 0)
          throw ParseError("expected (ctor (sel sort)*)", c.line, c.column);
        check_identifier(c[0], "constructor name");
        ConstructorDecl cd;
        cd.name = c[0].atom;
        for (size_t i = 1; i < c.size(); ++i) {
          const Sexpr& sel = c[i];
          if (!sel.is_list() || sel.size() != 2)
            throw ParseError("expected (selector sort)", sel.line, sel.column);
          check_identifier(sel[0], "selector name");
          check_identifier(sel[1], "selector sort");
          if (sel[1].atom != d.sort && !p.signature.find_sort(sel[1].atom))
            throw ParseError("unknown sort: " + sel[1].atom, sel[1].line, sel[1].column);
          cd.selectors.emplace_back(sel[0].atom, sel[1].atom);
        }
        d.constructors.push_back(std::move(cd));
      }
      p.signature.add_datatype(d);
      p.layout.push_back({LayoutItem::Kind::kDatatype, d.sort});
      return;
    }
    if (cmd == "assert") {
      if (stmt.size() != 2) throw ParseError("expected (assert ...)", stmt.line, stmt.column);
      auto [inner, name] = strip_named(stmt[1]);
      register_name(name, stmt);
      std::vector<SortedVar> bound;
      const Sexpr* body = inner;
      if (inner->is_list() && inner->size() > 0 && (*inner)[0].is_atom &&
          (*inner)[0].atom == "forall") {
        if (inner->size() != 3 || !(*inner)[1].is_list())
          throw ParseError("expected (forall ((v s)...) body)", inner->line, inner->column);
        for (const Sexpr& b : (*inner)[1].items) {
          if (!b.is_list() || b.size() != 2)
            throw ParseError("expected (var sort) binder", b.line, b.column);
          check_identifier(b[0], "variable name");
          check_identifier(b[1], "variable sort");
          if (!p.signature.find_sort(b[1].atom))
            throw ParseError("unknown sort: " + b[1].atom, b[1].line, b[1].column);
          if (find_bound(bound, b[0].atom))
            throw ParseError("duplicate binder: " + b[0].atom, b[0].line, b[0].column);
          bound.emplace_back(b[0].atom, b[1].atom);
        }
        body = &(*inner)[2];
      }
      auto [atoms, head] = parse_horn(*body, bound);
      if (bound.empty() && atoms.empty() && head.is_ground()) {
        // Ground unit fact: a hypothesis, i.e. a goal premise turned into
        // constants. The empty forall wrapper is optional on input.
        p.hypotheses.push_back({name, std::move(head)});
        p.layout.push_back({LayoutItem::Kind::kHypothesis, name});
        return;
      }
      HornClause clause = HornClause::make(bound, std::move(atoms), Head::make_atom(head));
      p.axioms.push_back({name, std::move(clause)});
      p.layout.push_back({LayoutItem::Kind::kAxiom, name});
      return;
    }
    if (cmd == "assert-not") {
      if (stmt.size() != 2) throw ParseError("expected (assert-not ...)", stmt.line, stmt.column);
      if (seen_goal) throw ParseError("multiple assert-not statements", stmt.line, stmt.column);
      auto [inner, name] = strip_named(stmt[1]);
      register_name(name, stmt);
      Atom goal = parse_atom(*inner, {});
      if (!goal.is_ground())
        throw ParseError("goal atom must be ground", inner->line, inner->column);
      p.goal = {name, std::move(goal)};
      seen_goal = true;
      p.layout.push_back({LayoutItem::Kind::kGoal, name});
      return;
    }
    throw ParseError("unsupported command: " + cmd, stmt.line, stmt.column);
  }
};

}  // namespace

Problem parse_problem(const std::string& text) {
  ProblemParser pp;
  for (const Sexpr& stmt : parse_sexprs(text)) pp.handle(stmt);
  if (!pp.seen_goal) throw ParseError("missing assert-not (no goal)", 1, 1);
  return std::move(pp.p);
}

Term parse_smt_term(const Sexpr& e, const Signature& sig, const std::vector<SortedVar>& bound) {
  return parse_term_impl(e, sig, bound, nullptr);
}

Atom parse_smt_atom(const Sexpr& e, const Signature& sig, const std::vector<SortedVar>& bound) {
  return parse_atom_impl(e, sig, bound, nullptr);
}

std::string emit_smt_term(const Term& t, const Signature& sig) {
  if (t.is_var()) return t.name();
  if (t.args().empty()) {
    const FunctionSymbol* f = sig.find_function(t.name());
    if (f && f->style == PrintStyle::kApplied) return "(" + t.name() + " )";
    return t.name();
  }
  std::ostringstream os;
  os << '(' << t.name();
  for (const Term& a : t.args()) os << ' ' << emit_smt_term(a, sig);
  os << ')';
  return os.str();
}

std::string emit_smt_atom(const Atom& a, const Signature& sig) {
  std::ostringstream os;
  if (a.is_equation()) {
    os << "(= " << emit_smt_term(a.lhs(), sig) << ' ' << emit_smt_term(a.rhs(), sig) << ')';
    return os.str();
  }
  if (a.args().empty()) return a.predicate_name();
  os << '(' << a.predicate_name();
  for (const Term& t : a.args()) os << ' ' << emit_smt_term(t, sig);
  os << ')';
  return os.str();
}

namespace {

std::string emit_horn_body(const std::vector<Atom>& body, const Atom& head, const Signature& sig) {
  if (body.empty()) return emit_smt_atom(head, sig);
  std::ostringstream os;
  os << "(=> ";
  if (body.size() == 1) {
    os << emit_smt_atom(body[0], sig);
  } else {
    os << "(and";
    for (const Atom& a : body) os << ' ' << emit_smt_atom(a, sig);
    os << ')';
  }
  os << ' ' << emit_smt_atom(head, sig) << ')';
  return os.str();
}

}  // namespace

std::string emit_problem(const Problem& p) {
  std::ostringstream os;
  for (const LayoutItem& item : p.layout) {
    switch (item.kind) {
      case LayoutItem::Kind::kSort:
        os << "(declare-sort " << item.name << " 0)\n";
        break;
      case LayoutItem::Kind::kFunction: {
        if (const FunctionSymbol* f = p.signature.find_function(item.name)) {
          if (f->arity() == 0) {
            os << "(declare-const " << f->name << ' ' << f->result_sort << ")\n";
          } else {
            os << "(declare-fun " << f->name << " (";
            for (size_t i = 0; i < f->arg_sorts.size(); ++i) {
              if (i) os << ' ';
              os << f->arg_sorts[i];
            }
            os << ") " << f->result_sort << ")\n";
          }
        } else if (const PredicateSymbol* pr = p.signature.find_predicate(item.name)) {
          os << "(declare-fun " << pr->name << " (";
          for (size_t i = 0; i < pr->arg_sorts.size(); ++i) {
            if (i) os << ' ';
            os << pr->arg_sorts[i];
          }
          os << ") Bool)\n";
        }
        break;
      }
      case LayoutItem::Kind::kDatatype: {
        const DatatypeDecl* d = p.signature.find_datatype(item.name);
        os << "(declare-datatype " << d->sort << " (";
        for (size_t i = 0; i < d->constructors.size(); ++i) {
          if (i) os << ' ';
          const ConstructorDecl& c = d->constructors[i];
          os << '(' << c.name;
          for (const auto& [sel, sort] : c.selectors) os << " (" << sel << ' ' << sort << ')';
          os << ')';
        }
        os << "))\n";
        break;
      }
      case LayoutItem::Kind::kAxiom: {
        const NamedClause* ax = p.find_axiom(item.name);
        os << "(assert (! (forall (";
        for (size_t i = 0; i < ax->clause.vars().size(); ++i) {
          if (i) os << ' ';
          os << '(' << ax->clause.vars()[i].first << ' ' << ax->clause.vars()[i].second << ')';
        }
        os << ") " << emit_horn_body(ax->clause.body(), *ax->clause.head().atom, p.signature)
           << ") :named " << ax->name << "))\n";
        break;
      }
      case LayoutItem::Kind::kHypothesis: {
        const NamedAtom* h = p.find_hypothesis(item.name);
        os << "(assert (! (forall () " << emit_smt_atom(h->atom, p.signature) << ") :named "
           << h->name << "))\n";
        break;
      }
      case LayoutItem::Kind::kGoal:
        os << "(assert-not (! " << emit_smt_atom(p.goal.atom, p.signature) << " :named "
           << p.goal.name << "))\n";
        break;
    }
  }
  return os.str();
}

}  // namespace hornforge
