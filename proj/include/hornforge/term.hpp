#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hornforge {

struct SortError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A declared sort. Datatype sorts additionally carry their constructor names.
struct Sort {
  std::string name;
  bool is_datatype = false;
  std::vector<std::string> constructors;
};

enum class PrintStyle : uint8_t {
  kBare,     // nullary symbol printed as `c`
  kApplied,  // nullary symbol printed as `(c )`, the emitter's quirk for theory functions
};

struct FunctionSymbol {
  std::string name;
  std::vector<std::string> arg_sorts;
  std::string result_sort;
  bool is_constructor = false;
  PrintStyle style = PrintStyle::kBare;

  size_t arity() const { return arg_sorts.size(); }
};

struct PredicateSymbol {
  std::string name;
  std::vector<std::string> arg_sorts;
};

/// One constructor of a datatype declaration, with named selectors.
struct ConstructorDecl {
  std::string name;
  std::vector<std::pair<std::string, std::string>> selectors;  // (selector, sort)
};

struct DatatypeDecl {
  std::string sort;
  std::vector<ConstructorDecl> constructors;
};

/// Symbol table for one problem. Declaration order is kept: it doubles as the
/// KBO precedence and fixes deterministic enumeration everywhere else.
class Signature {
 public:
  const Sort& add_sort(Sort s);
  const FunctionSymbol& add_function(FunctionSymbol f);
  const PredicateSymbol& add_predicate(PredicateSymbol p);
  void add_datatype(const DatatypeDecl& d);

  const Sort* find_sort(const std::string& name) const;
  const FunctionSymbol* find_function(const std::string& name) const;
  const PredicateSymbol* find_predicate(const std::string& name) const;
  const DatatypeDecl* find_datatype(const std::string& sort) const;

  /// Precedence index for KBO: position in declaration order.
  int precedence(const std::string& function_name) const;

  const std::vector<Sort>& sorts() const { return sorts_; }
  const std::vector<FunctionSymbol>& functions() const { return functions_; }
  const std::vector<PredicateSymbol>& predicates() const { return predicates_; }
  const std::vector<DatatypeDecl>& datatypes() const { return datatypes_; }

  void set_style(const std::string& function_name, PrintStyle style);

 private:
  std::vector<Sort> sorts_;
  std::vector<FunctionSymbol> functions_;
  std::vector<PredicateSymbol> predicates_;
  std::vector<DatatypeDecl> datatypes_;
  std::map<std::string, size_t> sort_index_;
  std::map<std::string, size_t> function_index_;
  std::map<std::string, size_t> predicate_index_;
};

/// Sorted first-order term: a variable or a function application.
/// Immutable; copies share structure.
class Term {
 public:
  Term() = default;

  static Term var(std::string name, std::string sort);
  static Term app(std::string symbol, std::string result_sort, std::vector<Term> args);
  /// Application with sorts checked against the signature's declaration.
  static Term app(const Signature& sig, const std::string& symbol, std::vector<Term> args);

  bool is_var() const { return node_->is_var; }
  bool is_app() const { return !node_->is_var; }
  const std::string& name() const { return node_->name; }  // variable or function name
  const std::string& sort() const { return node_->sort; }
  std::span<const Term> args() const { return node_->args; }

  bool is_ground() const;
  size_t weight() const;  // node count
  bool contains_var(const std::string& name) const;
  void collect_vars(std::vector<std::pair<std::string, std::string>>& out) const;

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
  /// Arbitrary total order; used for deterministic containers.
  bool operator<(const Term& other) const;

  std::string to_string() const;

  /// Subterm at a position (sequence of argument indices); root is {}.
  const Term& at(std::span<const size_t> path) const;
  /// Copy with the subterm at `path` replaced.
  Term replace_at(std::span<const size_t> path, const Term& replacement) const;
  /// Copy with every occurrence of `what` replaced by `with`.
  Term replace_all(const Term& what, const Term& with, size_t* count = nullptr) const;

 private:
  struct Node {
    bool is_var;
    std::string name;
    std::string sort;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Finite map from variable names to terms. Kept idempotent by construction:
/// bind() applies the new binding to existing ranges and vice versa.
class Substitution {
 public:
  Substitution() = default;

  bool empty() const { return bindings_.empty(); }
  size_t size() const { return bindings_.size(); }
  const std::map<std::string, Term>& bindings() const { return bindings_; }

  const Term* lookup(const std::string& var) const;

  /// Add x -> t. Throws SortError when t's sort differs from var_sort.
  /// `t` is first instantiated by the current substitution; existing bindings
  /// are rewritten so the whole map stays idempotent. Returns false when the
  /// occurs check fails.
  bool bind(const std::string& var, const std::string& var_sort, const Term& t);

  Term apply(const Term& t) const;

  /// compose(s, u): apply-after, i.e. result(t) = s(u(t)).
  static Substitution compose(const Substitution& outer, const Substitution& inner);

  std::string to_string() const;

 private:
  std::map<std::string, Term> bindings_;
};

inline Term apply(const Substitution& s, const Term& t) { return s.apply(t); }

enum class UnifyFailure : uint8_t {
  kSymbolClash,
  kOccursCheck,
  kSortMismatch,
};

struct UnifyResult {
  std::optional<Substitution> unifier;
  UnifyFailure failure = UnifyFailure::kSymbolClash;

  explicit operator bool() const { return unifier.has_value(); }
};

/// Robinson unification with explicit occurs check. Variables of different
/// sorts never unify.
UnifyResult mgu(const Term& s, const Term& t);
/// Extend `acc` so that acc(s) == acc(t); used to unify argument lists.
bool unify_into(const Term& s, const Term& t, Substitution& acc, UnifyFailure& why);

/// One-way matching bindings: pattern variables map to subject terms.
/// Subject variables are opaque; no occurs check and no idempotency
/// machinery apply (pattern and subject may share variable names).
class Matcher {
 public:
  const Term* lookup(const std::string& var) const;
  bool bind(const std::string& var, const std::string& sort, const Term& t);
  /// Substitutes bindings into a pattern-space term.
  Term apply(const Term& pattern) const;
  const std::map<std::string, Term>& bindings() const { return bindings_; }

 private:
  std::map<std::string, Term> bindings_;
};

/// Extends `acc` so that acc(pattern) == subject.
bool match_into(const Term& pattern, const Term& subject, Matcher& acc);

/// Fresh-name source, confined to one derivation context.
class FreshNames {
 public:
  std::string fresh(const std::string& base, const std::set<std::string>& avoid);

 private:
  uint64_t counter_ = 0;
};

/// Renaming for `right` making it disjoint from `left`. Injective and
/// sort-preserving; variables already disjoint are left alone.
Substitution rename_apart(const std::vector<std::pair<std::string, std::string>>& left,
                          const std::vector<std::pair<std::string, std::string>>& right,
                          FreshNames& fresh);

}  // namespace hornforge
