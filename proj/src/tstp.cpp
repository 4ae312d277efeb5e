#include "hornforge/tstp.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "hornforge/sexpr.hpp"

namespace hornforge {

namespace {

enum class Tok : uint8_t {
  kName,     // lowercase-led identifier, $-identifier, or quoted atom
  kVar,      // uppercase- or underscore-led identifier
  kNumber,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kComma,
  kDot,
  kPipe,
  kAmp,
  kEq,
  kNeq,
  kTilde,
  kImplies,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

struct Lexer {
  const std::string& text;
  size_t pos = 0;
  int line = 1;
  int col = 1;
  Token cur;

  explicit Lexer(const std::string& t) : text(t) { next(); }

  void bump() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void next() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '%') {
        while (pos < text.size() && text[pos] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
    int l = line, c0 = col;
    if (pos >= text.size()) {
      cur = {Tok::kEnd, "", l, c0};
      return;
    }
    char c = text[pos];
    auto single = [&](Tok k) {
      bump();
      cur = {k, std::string(1, c), l, c0};
    };
    switch (c) {
      case '(': return single(Tok::kLParen);
      case ')': return single(Tok::kRParen);
      case '[': return single(Tok::kLBracket);
      case ']': return single(Tok::kRBracket);
      case ',': return single(Tok::kComma);
      case '.': return single(Tok::kDot);
      case '|': return single(Tok::kPipe);
      case '&': return single(Tok::kAmp);
      case '~': return single(Tok::kTilde);
      default: break;
    }
    if (c == '=') {
      bump();
      if (pos < text.size() && text[pos] == '>') {
        bump();
        cur = {Tok::kImplies, "=>", l, c0};
      } else {
        cur = {Tok::kEq, "=", l, c0};
      }
      return;
    }
    if (c == '!') {
      bump();
      if (pos < text.size() && text[pos] == '=') {
        bump();
        cur = {Tok::kNeq, "!=", l, c0};
        return;
      }
      throw ParseError("unexpected '!'", l, c0);
    }
    if (c == '\'') {
      bump();
      std::string s;
      while (pos < text.size() && text[pos] != '\'') {
        s.push_back(text[pos]);
        bump();
      }
      if (pos >= text.size()) throw ParseError("unterminated quoted atom", l, c0);
      bump();  // closing quote
      cur = {Tok::kName, std::move(s), l, c0};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        s.push_back(text[pos]);
        bump();
      }
      cur = {Tok::kNumber, std::move(s), l, c0};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      std::string s;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
              text[pos] == '$')) {
        s.push_back(text[pos]);
        bump();
      }
      bool is_var = std::isupper(static_cast<unsigned char>(s[0])) || s[0] == '_';
      cur = {is_var ? Tok::kVar : Tok::kName, std::move(s), l, c0};
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", l, c0);
  }

  Token expect(Tok k, const char* what) {
    if (cur.kind != k) throw ParseError(std::string("expected ") + what + ", got '" + cur.text + "'", cur.line, cur.col);
    Token t = cur;
    next();
    return t;
  }

  bool accept(Tok k) {
    if (cur.kind != k) return false;
    next();
    return true;
  }
};

// Untyped term tree, typed in a second pass once variable sorts are known.
struct RawTerm {
  bool is_var = false;
  std::string name;
  std::vector<RawTerm> args;
  int line = 0, col = 0;
};

struct RawLiteral {
  bool negated = false;
  bool is_falsum = false;
  bool is_equation = false;
  std::string pred;  // predicate name when !is_equation
  std::vector<RawTerm> args;
  int line = 0, col = 0;
};

RawTerm parse_raw_term(Lexer& lx) {
  RawTerm t;
  t.line = lx.cur.line;
  t.col = lx.cur.col;
  if (lx.cur.kind == Tok::kVar) {
    t.is_var = true;
    t.name = lx.cur.text;
    lx.next();
    return t;
  }
  Token head = lx.expect(Tok::kName, "term");
  t.name = head.text;
  if (lx.accept(Tok::kLParen)) {
    for (;;) {
      t.args.push_back(parse_raw_term(lx));
      if (lx.accept(Tok::kComma)) continue;
      lx.expect(Tok::kRParen, "')'");
      break;
    }
  }
  return t;
}

RawLiteral parse_raw_literal(Lexer& lx) {
  RawLiteral lit;
  lit.line = lx.cur.line;
  lit.col = lx.cur.col;
  if (lx.accept(Tok::kTilde)) lit.negated = true;
  if (lx.cur.kind == Tok::kName && lx.cur.text == "$false") {
    lit.is_falsum = true;
    lx.next();
    return lit;
  }
  RawTerm first = parse_raw_term(lx);
  if (lx.accept(Tok::kEq)) {
    lit.is_equation = true;
    lit.args.push_back(std::move(first));
    lit.args.push_back(parse_raw_term(lx));
    return lit;
  }
  if (lx.accept(Tok::kNeq)) {
    lit.is_equation = true;
    lit.negated = !lit.negated;
    lit.args.push_back(std::move(first));
    lit.args.push_back(parse_raw_term(lx));
    return lit;
  }
  // Plain predicate application.
  if (first.is_var) throw ParseError("a variable is not a literal", lit.line, lit.col);
  lit.pred = first.name;
  lit.args = std::move(first.args);
  return lit;
}

// Sort inference: walks raw terms against the signature; `var_sorts` is
// filled in as positions determine sorts.
struct Sorter {
  const Signature& sig;
  std::map<std::string, std::string>& var_sorts;

  void note_var(const RawTerm& v, const std::string& sort) {
    auto [it, inserted] = var_sorts.emplace(v.name, sort);
    if (!inserted && it->second != sort)
      throw ParseError("variable " + v.name + " used at sorts " + it->second + " and " + sort,
                       v.line, v.col);
  }

  void walk(const RawTerm& t, const std::string& expected_sort) {
    if (t.is_var) {
      if (!expected_sort.empty()) note_var(t, expected_sort);
      return;
    }
    const FunctionSymbol* f = sig.find_function(t.name);
    if (!f) throw ParseError("unknown symbol: " + t.name, t.line, t.col);
    if (f->arity() != t.args.size())
      throw ParseError("arity mismatch for " + t.name, t.line, t.col);
    if (!expected_sort.empty() && f->result_sort != expected_sort)
      throw ParseError("term of sort " + f->result_sort + " where " + expected_sort +
                           " was expected",
                       t.line, t.col);
    for (size_t i = 0; i < t.args.size(); ++i) walk(t.args[i], f->arg_sorts[i]);
  }

  std::string sort_of(const RawTerm& t) const {
    if (t.is_var) {
      auto it = var_sorts.find(t.name);
      return it == var_sorts.end() ? std::string() : it->second;
    }
    const FunctionSymbol* f = sig.find_function(t.name);
    return f ? f->result_sort : std::string();
  }

  Term build(const RawTerm& t) const {
    if (t.is_var) {
      auto it = var_sorts.find(t.name);
      if (it == var_sorts.end())
        throw ParseError("cannot infer sort of variable " + t.name, t.line, t.col);
      return Term::var(t.name, it->second);
    }
    const FunctionSymbol* f = sig.find_function(t.name);
    std::vector<Term> args;
    for (const RawTerm& a : t.args) args.push_back(build(a));
    return Term::app(t.name, f->result_sort, std::move(args));
  }
};

HornClause literals_to_clause(const std::vector<RawLiteral>& lits, const Signature& sig,
                              int line, int col) {
  std::map<std::string, std::string> var_sorts;
  Sorter sorter{sig, var_sorts};
  // Two passes so equations between variables can pick up sorts discovered
  // later from function positions.
  for (int pass = 0; pass < 2; ++pass) {
    for (const RawLiteral& lit : lits) {
      if (lit.is_falsum) continue;
      if (lit.is_equation) {
        std::string s0 = sorter.sort_of(lit.args[0]);
        std::string s1 = sorter.sort_of(lit.args[1]);
        std::string s = !s0.empty() ? s0 : s1;
        sorter.walk(lit.args[0], s);
        sorter.walk(lit.args[1], s);
      } else {
        const PredicateSymbol* pr = sig.find_predicate(lit.pred);
        if (!pr) throw ParseError("unknown predicate: " + lit.pred, lit.line, lit.col);
        if (pr->arg_sorts.size() != lit.args.size())
          throw ParseError("arity mismatch for predicate " + lit.pred, lit.line, lit.col);
        for (size_t i = 0; i < lit.args.size(); ++i) sorter.walk(lit.args[i], pr->arg_sorts[i]);
      }
    }
  }
  std::vector<Atom> body;
  std::optional<Atom> head;
  bool saw_falsum = false;
  for (const RawLiteral& lit : lits) {
    if (lit.is_falsum) {
      if (lit.negated) throw ParseError("~$false literal", lit.line, lit.col);
      saw_falsum = true;
      continue;
    }
    Atom a = lit.is_equation
                 ? Atom::equation(sorter.build(lit.args[0]), sorter.build(lit.args[1]))
                 : [&] {
                     std::vector<Term> args;
                     for (const RawTerm& t : lit.args) args.push_back(sorter.build(t));
                     return Atom::predicate(lit.pred, std::move(args));
                   }();
    if (lit.negated) {
      body.push_back(std::move(a));
    } else {
      if (head)
        throw ParseError("more than one positive literal (non-Horn)", lit.line, lit.col);
      head = std::move(a);
    }
  }
  Head h = head ? Head::make_atom(std::move(*head)) : Head::falsum();
  if (saw_falsum && head)
    throw ParseError("$false next to a positive literal", line, col);
  return HornClause::close(std::move(body), std::move(h));
}

int numeric_suffix(const std::string& name) {
  size_t i = name.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(name[i - 1]))) --i;
  if (i == name.size()) return -1;
  return std::stoi(name.substr(i));
}

}  // namespace

Derivation parse_tstp(const std::string& text, const Signature& sig) {
  Lexer lx(text);
  Derivation d;
  std::map<std::string, int> ids;
  int next_id = 1;
  while (lx.cur.kind != Tok::kEnd) {
    Token kw = lx.expect(Tok::kName, "cnf");
    if (kw.text != "cnf") throw ParseError("expected 'cnf' record", kw.line, kw.col);
    lx.expect(Tok::kLParen, "'('");
    Token name_tok =
        lx.cur.kind == Tok::kVar ? lx.expect(Tok::kVar, "id") : lx.expect(Tok::kName, "id");
    lx.expect(Tok::kComma, "','");
    Token role = lx.expect(Tok::kName, "role");
    lx.expect(Tok::kComma, "','");

    // Formula: disjunction of literals, or `lit & ... => lit`.
    std::vector<RawLiteral> lits;
    lits.push_back(parse_raw_literal(lx));
    if (lx.cur.kind == Tok::kAmp || lx.cur.kind == Tok::kImplies) {
      while (lx.accept(Tok::kAmp)) lits.push_back(parse_raw_literal(lx));
      lx.expect(Tok::kImplies, "'=>'");
      for (RawLiteral& l : lits) l.negated = !l.negated;
      lits.push_back(parse_raw_literal(lx));
    } else {
      while (lx.accept(Tok::kPipe)) lits.push_back(parse_raw_literal(lx));
    }
    HornClause clause = literals_to_clause(lits, sig, kw.line, kw.col);

    lx.expect(Tok::kComma, "','");
    Token src = lx.expect(Tok::kName, "source");
    Justification just;
    if (src.text == "file") {
      lx.expect(Tok::kLParen, "'('");
      Token fname = lx.expect(Tok::kName, "file name");
      std::string axiom_name = fname.text;
      if (lx.accept(Tok::kComma)) axiom_name = lx.expect(Tok::kName, "axiom name").text;
      lx.expect(Tok::kRParen, "')'");
      just = JustInput{axiom_name};
    } else if (src.text == "negated_conjecture") {
      just = JustNegatedConjecture{};
    } else if (src.text == "inference") {
      lx.expect(Tok::kLParen, "'('");
      Token rule = lx.expect(Tok::kName, "rule name");
      lx.expect(Tok::kComma, "','");
      lx.expect(Tok::kLBracket, "'['");
      lx.expect(Tok::kRBracket, "']'");
      lx.expect(Tok::kComma, "','");
      lx.expect(Tok::kLBracket, "'['");
      std::vector<int> premises;
      if (lx.cur.kind != Tok::kRBracket) {
        for (;;) {
          Token p = lx.cur.kind == Tok::kNumber ? lx.expect(Tok::kNumber, "premise id")
                                                : lx.expect(Tok::kName, "premise id");
          auto it = ids.find(p.text);
          if (it == ids.end())
            throw ParseError("dangling premise id: " + p.text, p.line, p.col);
          premises.push_back(it->second);
          if (!lx.accept(Tok::kComma)) break;
        }
      }
      lx.expect(Tok::kRBracket, "']'");
      lx.expect(Tok::kRParen, "')'");
      just = JustInference{rule.text, std::move(premises)};
    } else {
      throw ParseError("unsupported source: " + src.text, src.line, src.col);
    }
    lx.expect(Tok::kRParen, "')'");
    lx.expect(Tok::kDot, "'.'");

    int id = numeric_suffix(name_tok.text);
    if (id < next_id) id = next_id;
    next_id = id + 1;
    if (ids.count(name_tok.text))
      throw ParseError("duplicate step id: " + name_tok.text, name_tok.line, name_tok.col);
    ids[name_tok.text] = id;

    Step s;
    s.id = id;
    s.clause = std::move(clause);
    s.just = std::move(just);
    s.role = role.text;
    d.steps.push_back(std::move(s));
  }
  if (d.steps.empty()) throw ParseError("empty derivation", 1, 1);
  return d;
}

namespace {

bool plain_prolog_atom(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::string quote_atom(const std::string& s) {
  return plain_prolog_atom(s) ? s : "'" + s + "'";
}

std::string tstp_term(const Term& t, const std::map<std::string, std::string>& var_names) {
  if (t.is_var()) return var_names.at(t.name());
  std::string s = quote_atom(t.name());
  if (t.args().empty()) return s;
  s += '(';
  for (size_t i = 0; i < t.args().size(); ++i) {
    if (i) s += ',';
    s += tstp_term(t.args()[i], var_names);
  }
  s += ')';
  return s;
}

std::string tstp_atom(const Atom& a, const std::map<std::string, std::string>& var_names,
                      bool negated) {
  if (a.is_equation()) {
    return tstp_term(a.lhs(), var_names) + (negated ? " != " : " = ") +
           tstp_term(a.rhs(), var_names);
  }
  std::string s = quote_atom(a.predicate_name());
  if (!a.args().empty()) {
    s += '(';
    for (size_t i = 0; i < a.args().size(); ++i) {
      if (i) s += ',';
      s += tstp_term(a.args()[i], var_names);
    }
    s += ')';
  }
  return negated ? "~" + s : s;
}

}  // namespace

std::string emit_tstp(const Derivation& d, const std::string& problem_name) {
  std::ostringstream os;
  for (const Step& s : d.steps) {
    std::map<std::string, std::string> var_names;
    for (size_t i = 0; i < s.clause.vars().size(); ++i)
      var_names[s.clause.vars()[i].first] = "X" + std::to_string(i);
    std::vector<std::string> lits;
    for (const Atom& a : s.clause.body()) lits.push_back(tstp_atom(a, var_names, true));
    if (s.clause.head().atom)
      lits.push_back(tstp_atom(*s.clause.head().atom, var_names, false));
    std::string formula;
    if (lits.empty()) {
      formula = "$false";
    } else {
      for (size_t i = 0; i < lits.size(); ++i) {
        if (i) formula += " | ";
        formula += lits[i];
      }
    }
    std::string role = s.role.empty() ? "plain" : s.role;
    std::string source;
    if (const auto* in = std::get_if<JustInput>(&s.just)) {
      source = "file(" + quote_atom(problem_name) + ", " + quote_atom(in->name) + ")";
    } else if (std::holds_alternative<JustNegatedConjecture>(s.just)) {
      source = "negated_conjecture";
    } else {
      const auto& inf = std::get<JustInference>(s.just);
      source = "inference(" + quote_atom(inf.rule) + ",[],[";
      for (size_t i = 0; i < inf.premises.size(); ++i) {
        if (i) source += ',';
        source += "c" + std::to_string(inf.premises[i]);
      }
      source += "])";
    }
    os << "cnf(c" << s.id << ", " << role << ", " << formula << ", " << source << ").\n";
  }
  return os.str();
}

}  // namespace hornforge
