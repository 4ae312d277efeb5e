#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hornforge {

struct ParseError : std::runtime_error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int line_, int column_)
      : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(column_)),
        line(line_),
        column(column_) {}
};

/// Atom or list. Atoms are raw identifier tokens: any run of characters that
/// are not whitespace or parentheses, not starting with a digit.
struct Sexpr {
  bool is_atom = false;
  std::string atom;
  std::vector<Sexpr> items;
  int line = 0;
  int column = 0;

  bool is_list() const { return !is_atom; }
  size_t size() const { return items.size(); }
  const Sexpr& operator[](size_t i) const { return items[i]; }

  /// Requires this to be an atom; returns it.
  const std::string& as_atom(const char* what) const;
  std::string to_string() const;
};

/// Reads all top-level s-expressions. Comments run from ';' to end of line.
std::vector<Sexpr> parse_sexprs(const std::string& text);

}  // namespace hornforge
