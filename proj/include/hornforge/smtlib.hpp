#pragma once

#include <string>

#include "hornforge/problem.hpp"
#include "hornforge/sexpr.hpp"

namespace hornforge {

/// Parses the SMT-LIB subset: declare-sort / declare-fun / declare-const /
/// declare-datatype / assert with named, universally quantified Horn bodies /
/// assert-not with a named ground goal atom. Every diagnostic carries the
/// offending position.
Problem parse_problem(const std::string& text);

/// One s-expression per statement, single spaces. Nullary symbols print in
/// the style recorded at parse time ("(c )" or "c"). parse_problem of the
/// result reproduces the Problem.
std::string emit_problem(const Problem& p);

/// Term/atom sub-grammar, shared with the proof surface format.
Term parse_smt_term(const Sexpr& e, const Signature& sig,
                    const std::vector<SortedVar>& bound);
Atom parse_smt_atom(const Sexpr& e, const Signature& sig,
                    const std::vector<SortedVar>& bound);
std::string emit_smt_term(const Term& t, const Signature& sig);
std::string emit_smt_atom(const Atom& a, const Signature& sig);

}  // namespace hornforge
