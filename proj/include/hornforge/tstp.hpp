#pragma once

#include <string>

#include "hornforge/problem.hpp"

namespace hornforge {

/// Parses a sequence of `cnf(id, role, formula, source).` records where
/// source is `inference(rule,[],[ids])`, `file(...)` or `negated_conjecture`.
/// Formulas are Horn disjunctions (or `body => head` implications) over the
/// given signature; variable sorts are inferred from symbol declarations.
Derivation parse_tstp(const std::string& text, const Signature& sig);

/// Writes the derivation in the same record syntax. Variables are renamed to
/// X0, X1, ... per clause; symbol names outside Prolog atom syntax are quoted.
std::string emit_tstp(const Derivation& d, const std::string& problem_name);

}  // namespace hornforge
