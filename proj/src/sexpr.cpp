#include "hornforge/sexpr.hpp"

#include <cctype>
#include <sstream>

namespace hornforge {

const std::string& Sexpr::as_atom(const char* what) const {
  if (!is_atom) throw ParseError(std::string("expected ") + what, line, column);
  return atom;
}

std::string Sexpr::to_string() const {
  if (is_atom) return atom;
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) os << ' ';
    os << items[i].to_string();
  }
  os << ')';
  return os.str();
}

namespace {

struct Reader {
  const std::string& text;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_ws() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == ';') {
        while (pos < text.size() && text[pos] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  Sexpr read() {
    skip_ws();
    if (pos >= text.size()) throw ParseError("unexpected end of input", line, col);
    int l = line, c = col;
    if (text[pos] == '(') {
      advance();
      Sexpr list;
      list.line = l;
      list.column = c;
      for (;;) {
        skip_ws();
        if (pos >= text.size()) throw ParseError("unclosed '('", l, c);
        if (text[pos] == ')') {
          advance();
          return list;
        }
        list.items.push_back(read());
      }
    }
    if (text[pos] == ')') throw ParseError("unexpected ')'", l, c);
    Sexpr a;
    a.is_atom = true;
    a.line = l;
    a.column = c;
    while (pos < text.size()) {
      char ch = text[pos];
      if (ch == '(' || ch == ')' || ch == ';' || std::isspace(static_cast<unsigned char>(ch)))
        break;
      a.atom.push_back(ch);
      advance();
    }
    // Digit-leading atoms are numerals (e.g. the declare-sort arity); whether
    // a token is a legal identifier is decided by the consumer.
    return a;
  }
};

}  // namespace

std::vector<Sexpr> parse_sexprs(const std::string& text) {
  Reader r{text};
  std::vector<Sexpr> out;
  for (;;) {
    r.skip_ws();
    if (r.pos >= text.size()) return out;
    out.push_back(r.read());
  }
}

}  // namespace hornforge
