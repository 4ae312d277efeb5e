#include "hornforge/term.hpp"

#include <algorithm>
#include <sstream>

namespace hornforge {

const Sort& Signature::add_sort(Sort s) {
  if (sort_index_.count(s.name)) throw std::runtime_error("duplicate sort: " + s.name);
  sort_index_[s.name] = sorts_.size();
  sorts_.push_back(std::move(s));
  return sorts_.back();
}

const FunctionSymbol& Signature::add_function(FunctionSymbol f) {
  if (function_index_.count(f.name) || predicate_index_.count(f.name))
    throw std::runtime_error("duplicate symbol: " + f.name);
  function_index_[f.name] = functions_.size();
  functions_.push_back(std::move(f));
  return functions_.back();
}

const PredicateSymbol& Signature::add_predicate(PredicateSymbol p) {
  if (function_index_.count(p.name) || predicate_index_.count(p.name))
    throw std::runtime_error("duplicate symbol: " + p.name);
  predicate_index_[p.name] = predicates_.size();
  predicates_.push_back(std::move(p));
  return predicates_.back();
}

void Signature::add_datatype(const DatatypeDecl& d) {
  Sort s;
  s.name = d.sort;
  s.is_datatype = true;
  for (const auto& c : d.constructors) s.constructors.push_back(c.name);
  add_sort(std::move(s));
  for (const auto& c : d.constructors) {
    FunctionSymbol ctor;
    ctor.name = c.name;
    ctor.result_sort = d.sort;
    ctor.is_constructor = true;
    for (const auto& [sel, sel_sort] : c.selectors) ctor.arg_sorts.push_back(sel_sort);
    add_function(std::move(ctor));
    // Selectors become plain uninterpreted functions; no axioms are attached.
    for (const auto& [sel, sel_sort] : c.selectors) {
      FunctionSymbol f;
      f.name = sel;
      f.arg_sorts = {d.sort};
      f.result_sort = sel_sort;
      add_function(std::move(f));
    }
  }
  datatypes_.push_back(d);
}

const Sort* Signature::find_sort(const std::string& name) const {
  auto it = sort_index_.find(name);
  return it == sort_index_.end() ? nullptr : &sorts_[it->second];
}

const FunctionSymbol* Signature::find_function(const std::string& name) const {
  auto it = function_index_.find(name);
  return it == function_index_.end() ? nullptr : &functions_[it->second];
}

const PredicateSymbol* Signature::find_predicate(const std::string& name) const {
  auto it = predicate_index_.find(name);
  return it == predicate_index_.end() ? nullptr : &predicates_[it->second];
}

const DatatypeDecl* Signature::find_datatype(const std::string& sort) const {
  for (const auto& d : datatypes_)
    if (d.sort == sort) return &d;
  return nullptr;
}

int Signature::precedence(const std::string& function_name) const {
  auto it = function_index_.find(function_name);
  if (it == function_index_.end()) return -1;
  return static_cast<int>(it->second);
}

void Signature::set_style(const std::string& function_name, PrintStyle style) {
  auto it = function_index_.find(function_name);
  if (it != function_index_.end()) functions_[it->second].style = style;
}

Term Term::var(std::string name, std::string sort) {
  auto n = std::make_shared<Node>();
  n->is_var = true;
  n->name = std::move(name);
  n->sort = std::move(sort);
  return Term(std::move(n));
}

Term Term::app(std::string symbol, std::string result_sort, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->is_var = false;
  n->name = std::move(symbol);
  n->sort = std::move(result_sort);
  n->args = std::move(args);
  return Term(std::move(n));
}

Term Term::app(const Signature& sig, const std::string& symbol, std::vector<Term> args) {
  const FunctionSymbol* f = sig.find_function(symbol);
  if (!f) throw std::runtime_error("unknown function symbol: " + symbol);
  if (f->arity() != args.size())
    throw std::runtime_error("arity mismatch for " + symbol + ": expected " +
                             std::to_string(f->arity()) + ", got " + std::to_string(args.size()));
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i].sort() != f->arg_sorts[i])
      throw SortError("argument " + std::to_string(i) + " of " + symbol + " has sort " +
                      args[i].sort() + ", expected " + f->arg_sorts[i]);
  }
  return app(symbol, f->result_sort, std::move(args));
}

bool Term::is_ground() const {
  if (is_var()) return false;
  for (const Term& a : args())
    if (!a.is_ground()) return false;
  return true;
}

size_t Term::weight() const {
  size_t w = 1;
  for (const Term& a : args()) w += a.weight();
  return w;
}

bool Term::contains_var(const std::string& vname) const {
  if (is_var()) return name() == vname;
  for (const Term& a : args())
    if (a.contains_var(vname)) return true;
  return false;
}

void Term::collect_vars(std::vector<std::pair<std::string, std::string>>& out) const {
  if (is_var()) {
    for (const auto& [n, s] : out)
      if (n == name()) return;
    out.emplace_back(name(), sort());
    return;
  }
  for (const Term& a : args()) a.collect_vars(out);
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (node_->is_var != other.node_->is_var || node_->name != other.node_->name) return false;
  if (node_->sort != other.node_->sort) return false;
  if (node_->args.size() != other.node_->args.size()) return false;
  for (size_t i = 0; i < node_->args.size(); ++i)
    if (!(node_->args[i] == other.node_->args[i])) return false;
  return true;
}

bool Term::operator<(const Term& other) const {
  if (node_ == other.node_) return false;
  if (is_var() != other.is_var()) return is_var();  // vars first
  if (name() != other.name()) return name() < other.name();
  if (args().size() != other.args().size()) return args().size() < other.args().size();
  for (size_t i = 0; i < args().size(); ++i) {
    if (args()[i] < other.args()[i]) return true;
    if (other.args()[i] < args()[i]) return false;
  }
  return false;
}

std::string Term::to_string() const {
  if (is_var()) return name();
  if (args().empty()) return name();
  std::ostringstream os;
  os << name() << '(';
  for (size_t i = 0; i < args().size(); ++i) {
    if (i) os << ',';
    os << args()[i].to_string();
  }
  os << ')';
  return os.str();
}

const Term& Term::at(std::span<const size_t> path) const {
  const Term* cur = this;
  for (size_t idx : path) {
    if (cur->is_var() || idx >= cur->args().size())
      throw std::runtime_error("invalid term position");
    cur = &cur->args()[idx];
  }
  return *cur;
}

Term Term::replace_at(std::span<const size_t> path, const Term& replacement) const {
  if (path.empty()) return replacement;
  if (is_var() || path[0] >= args().size()) throw std::runtime_error("invalid term position");
  std::vector<Term> new_args(args().begin(), args().end());
  new_args[path[0]] = new_args[path[0]].replace_at(path.subspan(1), replacement);
  return Term::app(name(), sort(), std::move(new_args));
}

Term Term::replace_all(const Term& what, const Term& with, size_t* count) const {
  if (*this == what) {
    if (count) ++*count;
    return with;
  }
  if (is_var() || args().empty()) return *this;
  bool changed = false;
  std::vector<Term> new_args;
  new_args.reserve(args().size());
  for (const Term& a : args()) {
    Term r = a.replace_all(what, with, count);
    if (!(r == a)) changed = true;
    new_args.push_back(std::move(r));
  }
  if (!changed) return *this;
  return Term::app(name(), sort(), std::move(new_args));
}

const Term* Substitution::lookup(const std::string& var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

bool Substitution::bind(const std::string& var, const std::string& var_sort, const Term& t) {
  if (t.sort() != var_sort)
    throw SortError("binding for " + var + " has sort " + t.sort() + ", expected " + var_sort);
  Term inst = apply(t);
  if (inst.is_var() && inst.name() == var) return true;  // x -> x is a no-op
  if (inst.contains_var(var)) return false;              // occurs check
  // Rewrite existing ranges so the map stays idempotent.
  Substitution unit;
  unit.bindings_.emplace(var, inst);
  for (auto& [v, range] : bindings_) range = unit.apply(range);
  bindings_[var] = std::move(inst);
  return true;
}

Term Substitution::apply(const Term& t) const {
  if (bindings_.empty()) return t;
  if (t.is_var()) {
    const Term* b = lookup(t.name());
    return b ? *b : t;
  }
  if (t.args().empty()) return t;
  bool changed = false;
  std::vector<Term> new_args;
  new_args.reserve(t.args().size());
  for (const Term& a : t.args()) {
    Term r = apply(a);
    if (!(r == a)) changed = true;
    new_args.push_back(std::move(r));
  }
  if (!changed) return t;
  return Term::app(t.name(), t.sort(), std::move(new_args));
}

Substitution Substitution::compose(const Substitution& outer, const Substitution& inner) {
  Substitution r;
  for (const auto& [v, t] : inner.bindings_) r.bindings_[v] = outer.apply(t);
  for (const auto& [v, t] : outer.bindings_)
    if (!r.bindings_.count(v)) r.bindings_[v] = t;
  return r;
}

std::string Substitution::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [v, t] : bindings_) {
    if (!first) os << ", ";
    first = false;
    os << v << " -> " << t.to_string();
  }
  os << '}';
  return os.str();
}

bool unify_into(const Term& s, const Term& t, Substitution& acc, UnifyFailure& why) {
  Term a = acc.apply(s);
  Term b = acc.apply(t);
  if (a == b) return true;
  if (a.is_var()) {
    if (a.sort() != b.sort()) {
      why = UnifyFailure::kSortMismatch;
      return false;
    }
    if (!acc.bind(a.name(), a.sort(), b)) {
      why = UnifyFailure::kOccursCheck;
      return false;
    }
    return true;
  }
  if (b.is_var()) return unify_into(b, a, acc, why);
  if (a.name() != b.name() || a.args().size() != b.args().size()) {
    why = UnifyFailure::kSymbolClash;
    return false;
  }
  for (size_t i = 0; i < a.args().size(); ++i)
    if (!unify_into(a.args()[i], b.args()[i], acc, why)) return false;
  return true;
}

UnifyResult mgu(const Term& s, const Term& t) {
  UnifyResult r;
  Substitution acc;
  UnifyFailure why = UnifyFailure::kSymbolClash;
  if (unify_into(s, t, acc, why)) {
    r.unifier = std::move(acc);
  } else {
    r.failure = why;
  }
  return r;
}

const Term* Matcher::lookup(const std::string& var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

bool Matcher::bind(const std::string& var, const std::string& sort, const Term& t) {
  if (t.sort() != sort) return false;
  bindings_.emplace(var, t);
  return true;
}

Term Matcher::apply(const Term& pattern) const {
  if (pattern.is_var()) {
    const Term* b = lookup(pattern.name());
    return b ? *b : pattern;
  }
  if (pattern.args().empty()) return pattern;
  std::vector<Term> args;
  args.reserve(pattern.args().size());
  for (const Term& a : pattern.args()) args.push_back(apply(a));
  return Term::app(pattern.name(), pattern.sort(), std::move(args));
}

bool match_into(const Term& pattern, const Term& subject, Matcher& acc) {
  if (pattern.is_var()) {
    const Term* bound = acc.lookup(pattern.name());
    if (bound) return *bound == subject;
    return acc.bind(pattern.name(), pattern.sort(), subject);
  }
  if (subject.is_var()) return false;
  if (pattern.name() != subject.name() || pattern.args().size() != subject.args().size())
    return false;
  for (size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_into(pattern.args()[i], subject.args()[i], acc)) return false;
  return true;
}

std::string FreshNames::fresh(const std::string& base, const std::set<std::string>& avoid) {
  for (;;) {
    std::string candidate = base + "_" + std::to_string(counter_++);
    if (!avoid.count(candidate)) return candidate;
  }
}

Substitution rename_apart(const std::vector<std::pair<std::string, std::string>>& left,
                          const std::vector<std::pair<std::string, std::string>>& right,
                          FreshNames& fresh) {
  std::set<std::string> taken;
  for (const auto& [n, s] : left) taken.insert(n);
  Substitution renaming;
  std::set<std::string> used = taken;
  for (const auto& [n, s] : right) used.insert(n);
  for (const auto& [n, s] : right) {
    if (!taken.count(n)) continue;
    std::string nn = fresh.fresh(n, used);
    used.insert(nn);
    renaming.bind(n, s, Term::var(nn, s));
  }
  return renaming;
}

}  // namespace hornforge
