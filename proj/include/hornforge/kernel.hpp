#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hornforge/clause.hpp"
#include "hornforge/problem.hpp"

namespace hornforge {

/// A Horn formula: ∀ vars. body_1 -> ... -> body_n -> head.
/// The prefix is ordered; elimination peels it left to right.
struct Formula {
  std::vector<SortedVar> vars;
  std::vector<Atom> body;
  Atom head;

  static Formula atom(Atom a) { return Formula{{}, {}, std::move(a)}; }
  /// From a clause; the head must be an atom (possibly a boxed goal atom).
  static Formula from_clause(const HornClause& c);

  bool is_plain_atom() const { return vars.empty() && body.empty(); }
  std::string to_string() const;
};

/// Alpha-equivalence: prefixes correspond positionally, free names literally.
bool alpha_equal(const Formula& a, const Formula& b);

/// One-hole term context: a term containing exactly one occurrence of the
/// distinguished hole variable.
struct TermContext {
  Term body;
  std::string hole;
  std::string hole_sort;

  Term fill(const Term& t) const;
  bool is_identity() const { return body.is_var() && body.name() == hole; }
};

/// One-hole atom context.
struct AtomContext {
  Atom body;
  std::string hole;
  std::string hole_sort;

  Atom fill(const Term& t) const;
};

/// Constructive proof terms for Horn formulas.
///
///   Ref       named axiom / hypothesis / earlier step
///   Lam, App  implication introduction / elimination
///   AllIntro, AllElim   universal introduction / elimination
///   Refl, Sym, Trans    equality
///   Cong      from s = t proves C[s] = C[t] for a term context C
///   Rw        from l = r and A[l] proves A[r] for an atom context A
///   Hole      never checks; carries the formula it stands for
class ProofTerm {
 public:
  enum class Kind : uint8_t {
    kRef, kLam, kApp, kAllIntro, kAllElim, kRefl, kSym, kTrans, kCong, kRw, kHole
  };

  ProofTerm() = default;

  static ProofTerm ref(std::string name);
  static ProofTerm lam(std::string hyp, ProofTerm body);
  static ProofTerm app(ProofTerm fun, ProofTerm arg);
  static ProofTerm all_intro(std::string var, std::string sort, ProofTerm body);
  static ProofTerm all_elim(ProofTerm fun, Term witness);
  static ProofTerm refl(Term t);
  static ProofTerm sym(ProofTerm p);
  static ProofTerm trans(ProofTerm p, ProofTerm q);
  static ProofTerm cong(TermContext ctx, ProofTerm p);
  static ProofTerm rw(ProofTerm eq, ProofTerm target, AtomContext ctx);
  static ProofTerm hole(Formula f);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }      // Ref, Lam, AllIntro
  const std::string& var_sort() const { return node_->sort; }  // AllIntro
  const ProofTerm& child(size_t i) const { return node_->children[i]; }
  size_t child_count() const { return node_->children.size(); }
  const Term& term() const { return node_->term; }             // AllElim witness, Refl term
  const TermContext& term_ctx() const { return node_->tctx; }
  const AtomContext& atom_ctx() const { return node_->actx; }
  const Formula& hole_formula() const { return node_->formula; }

  bool operator==(const ProofTerm& other) const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::string sort;
    std::vector<ProofTerm> children;
    Term term;
    TermContext tctx;
    AtomContext actx;
    Formula formula;
  };
  explicit ProofTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Named formulas visible to a proof: axioms, hypotheses, earlier steps, and
/// the ambient datatype facts (constructor injectivity, and distinctness
/// translated to the goal atom).
class CheckContext {
 public:
  explicit CheckContext(const Signature& sig) : sig_(&sig) {}

  /// Axioms + hypotheses of the problem, plus per-datatype ambient formulas.
  /// `goal` enables the distinctness facts (they conclude the goal atom).
  static CheckContext for_problem(const Problem& p, const std::optional<Atom>& goal);

  void define(const std::string& name, Formula f);
  const Formula* lookup(const std::string& name) const;
  bool defined(const std::string& name) const { return lookup(name) != nullptr; }
  const Signature& signature() const { return *sig_; }
  const std::vector<std::pair<std::string, Formula>>& entries() const { return entries_; }

 private:
  const Signature* sig_;
  std::vector<std::pair<std::string, Formula>> entries_;
  std::map<std::string, size_t> index_;
};

struct CheckResult {
  enum class Status : uint8_t { kOk, kTypeError, kIncomplete };
  Status status = Status::kOk;
  std::string path;    // innermost failing subterm
  std::string reason;
  std::vector<Formula> holes;

  bool ok() const { return status == Status::kOk; }
  std::string to_string() const;
};

/// Checks that `t` proves `expected` under `ctx`. Total and terminating;
/// recursion is strictly on subterms. Equations are compared structurally,
/// with no conversion.
CheckResult check(const CheckContext& ctx, const ProofTerm& t, const Formula& expected);

/// Applies { sym(sym p) -> p, trans(refl,p) -> p, trans(p,refl) -> p,
/// cong(identity,p) -> p, sym(refl t) -> refl t } to a fixed point.
ProofTerm normalize_light(const ProofTerm& t);

/// A proof document: named definitions in dependency order plus the name of
/// the final one.
struct ProofDef {
  std::string name;
  Formula formula;
  ProofTerm term;
};
struct Proof {
  std::vector<ProofDef> defs;
  std::string qed;

  const ProofDef* find(const std::string& name) const;
  /// Drops definitions not reachable from the qed def.
  Proof pruned() const;
};

/// Checks every definition in order; the qed formula must alpha-match
/// `goal`. On success the returned result is Ok.
CheckResult check_proof(const CheckContext& base, const Proof& proof, const Formula& goal);

/// Surface syntax (.prf). emit -> parse is the identity on checked proofs.
std::string emit_surface(const Proof& proof, const Signature& sig);
Proof parse_surface(const std::string& text, const Signature& sig);

}  // namespace hornforge
