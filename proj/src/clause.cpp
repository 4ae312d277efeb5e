#include "hornforge/clause.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace hornforge {

Atom Atom::predicate(std::string name, std::vector<Term> args) {
  Atom a;
  a.is_equation_ = false;
  a.name_ = std::move(name);
  a.args_ = std::move(args);
  return a;
}

Atom Atom::equation(Term lhs, Term rhs) {
  if (lhs.sort() != rhs.sort())
    throw SortError("equation sides have sorts " + lhs.sort() + " and " + rhs.sort());
  Atom a;
  a.is_equation_ = true;
  a.sort_ = lhs.sort();
  a.args_ = {std::move(lhs), std::move(rhs)};
  return a;
}

bool Atom::is_ground() const {
  for (const Term& t : args_)
    if (!t.is_ground()) return false;
  return true;
}

size_t Atom::weight() const {
  size_t w = 1;
  for (const Term& t : args_) w += t.weight();
  return w;
}

Atom Atom::apply(const Substitution& s) const {
  Atom a = *this;
  for (Term& t : a.args_) t = s.apply(t);
  return a;
}

Atom Atom::apply(const Matcher& m) const {
  Atom a = *this;
  for (Term& t : a.args_) t = m.apply(t);
  return a;
}

Atom Atom::flipped() const {
  if (!is_equation_) throw std::runtime_error("flipped() on a predicate atom");
  return equation(rhs(), lhs());
}

void Atom::collect_vars(std::vector<std::pair<std::string, std::string>>& out) const {
  for (const Term& t : args_) t.collect_vars(out);
}

bool Atom::operator==(const Atom& other) const {
  return is_equation_ == other.is_equation_ && name_ == other.name_ && args_ == other.args_;
}

bool Atom::operator<(const Atom& other) const {
  if (is_equation_ != other.is_equation_) return is_equation_ < other.is_equation_;
  if (name_ != other.name_) return name_ < other.name_;
  if (args_.size() != other.args_.size()) return args_.size() < other.args_.size();
  for (size_t i = 0; i < args_.size(); ++i) {
    if (args_[i] < other.args_[i]) return true;
    if (other.args_[i] < args_[i]) return false;
  }
  return false;
}

bool Atom::equal_modulo_orientation(const Atom& other) const {
  if (*this == other) return true;
  if (is_equation_ && other.is_equation_) return flipped() == other;
  return false;
}

std::string Atom::to_string() const {
  if (is_equation_) return lhs().to_string() + " = " + rhs().to_string();
  if (args_.empty()) return name_;
  std::ostringstream os;
  os << name_ << '(';
  for (size_t i = 0; i < args_.size(); ++i) {
    if (i) os << ',';
    os << args_[i].to_string();
  }
  os << ')';
  return os.str();
}

std::vector<Atom> equation_orientations(const Atom& a) {
  if (!a.is_equation()) return {a};
  Atom f = a.flipped();
  if (f == a) return {a};  // t = t degenerates
  return {a, f};
}

Head Head::goal(Atom a) {
  if (!a.is_ground()) throw std::runtime_error("goal-atom head must be ground: " + a.to_string());
  return Head{Kind::kGoal, std::move(a)};
}

bool Head::operator==(const Head& other) const {
  if (kind != other.kind) return false;
  if (!atom.has_value()) return !other.atom.has_value();
  return other.atom.has_value() && *atom == *other.atom;
}

std::string Head::to_string() const {
  switch (kind) {
    case Kind::kAtom: return atom->to_string();
    case Kind::kFalsum: return "$false";
    case Kind::kGoal: return "[" + atom->to_string() + "]";
  }
  return "?";
}

HornClause HornClause::make(std::vector<SortedVar> vars, std::vector<Atom> body, Head head) {
  std::vector<SortedVar> free;
  for (const Atom& a : body) a.collect_vars(free);
  if (head.atom) head.atom->collect_vars(free);
  for (const auto& [n, s] : free) {
    bool found = false;
    for (const auto& [vn, vs] : vars) {
      if (vn == n) {
        if (vs != s) throw SortError("variable " + n + " bound at sort " + vs + " used at " + s);
        found = true;
        break;
      }
    }
    if (!found) throw std::runtime_error("free variable not in prefix: " + n);
  }
  if (head.is_goal() && !head.atom->is_ground())
    throw std::runtime_error("goal-atom head must be ground");
  HornClause c;
  c.vars_ = std::move(vars);
  c.body_ = std::move(body);
  c.head_ = std::move(head);
  return c;
}

HornClause HornClause::close(std::vector<Atom> body, Head head) {
  std::vector<SortedVar> free;
  for (const Atom& a : body) a.collect_vars(free);
  if (head.atom) head.atom->collect_vars(free);
  return make(std::move(free), std::move(body), std::move(head));
}

bool HornClause::is_ground() const {
  if (!vars_.empty()) return false;
  for (const Atom& a : body_)
    if (!a.is_ground()) return false;
  if (head_.atom && !head_.atom->is_ground()) return false;
  return true;
}

bool HornClause::is_unit_equation() const {
  return body_.empty() && head_.is_atom() && head_.atom->is_equation();
}

size_t HornClause::weight() const {
  size_t w = 0;
  for (const Atom& a : body_) w += a.weight();
  if (head_.atom) w += head_.atom->weight();
  return w;
}

HornClause HornClause::substituted(const Substitution& s) const {
  std::vector<Atom> body;
  body.reserve(body_.size());
  for (const Atom& a : body_) body.push_back(a.apply(s));
  Head h = head_;
  if (h.is_atom()) h.atom = h.atom->apply(s);
  // kGoal heads are ground: substitution does nothing, copy as-is.
  return close(std::move(body), std::move(h));
}

bool HornClause::operator==(const HornClause& other) const {
  return vars_ == other.vars_ && body_ == other.body_ && head_ == other.head_;
}

std::string HornClause::to_string() const {
  std::ostringstream os;
  if (!vars_.empty()) {
    os << "![";
    for (size_t i = 0; i < vars_.size(); ++i) {
      if (i) os << ',';
      os << vars_[i].first << ':' << vars_[i].second;
    }
    os << "] ";
  }
  for (size_t i = 0; i < body_.size(); ++i) {
    if (i) os << " & ";
    os << body_[i].to_string();
  }
  if (!body_.empty()) os << " -> ";
  os << head_.to_string();
  return os.str();
}

namespace {

// Backtracking variant matcher. `flex` permits equation-orientation flips.
struct VariantSearch {
  const HornClause& derived;
  const HornClause& stated;
  bool flex;
  // var name (derived) -> var name (stated), and the inverse for bijectivity
  std::map<std::string, std::string> fwd;
  std::map<std::string, std::string> bwd;
  std::vector<size_t> perm;
  std::vector<bool> flips;
  std::vector<bool> used;

  bool terms(const Term& a, const Term& b) {
    if (a.is_var() != b.is_var()) return false;
    if (a.is_var()) {
      if (a.sort() != b.sort()) return false;
      auto f = fwd.find(a.name());
      if (f != fwd.end()) return f->second == b.name();
      auto g = bwd.find(b.name());
      if (g != bwd.end()) return false;
      fwd[a.name()] = b.name();
      bwd[b.name()] = a.name();
      return true;
    }
    if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
    for (size_t i = 0; i < a.args().size(); ++i)
      if (!terms(a.args()[i], b.args()[i])) return false;
    return true;
  }

  // Tries matching atom a against b; on failure restores the var maps.
  bool atoms(const Atom& a, const Atom& b, bool* flipped_out) {
    auto save_fwd = fwd;
    auto save_bwd = bwd;
    if (a.is_equation() != b.is_equation()) return false;
    if (!a.is_equation() && a.predicate_name() != b.predicate_name()) return false;
    auto try_args = [&](const Atom& left) {
      for (size_t i = 0; i < left.args().size(); ++i)
        if (!terms(left.args()[i], b.args()[i])) return false;
      return true;
    };
    if (try_args(a)) {
      if (flipped_out) *flipped_out = false;
      return true;
    }
    fwd = save_fwd;
    bwd = save_bwd;
    if (flex && a.is_equation()) {
      if (try_args(a.flipped())) {
        if (flipped_out) *flipped_out = true;
        return true;
      }
      fwd = save_fwd;
      bwd = save_bwd;
    }
    return false;
  }

  bool body_from(size_t i) {
    if (i == derived.body().size()) return true;
    auto save_fwd = fwd;
    auto save_bwd = bwd;
    for (size_t j = 0; j < stated.body().size(); ++j) {
      if (used[j]) continue;
      bool flip = false;
      if (atoms(derived.body()[i], stated.body()[j], &flip)) {
        used[j] = true;
        perm[i] = j;
        flips[i] = flip;
        if (body_from(i + 1)) return true;
        used[j] = false;
        fwd = save_fwd;
        bwd = save_bwd;
      }
    }
    return false;
  }

  std::optional<VariantMatch> run() {
    if (derived.body().size() != stated.body().size()) return std::nullopt;
    if (derived.head().kind != stated.head().kind) return std::nullopt;
    perm.assign(derived.body().size(), 0);
    flips.assign(derived.body().size(), false);
    used.assign(stated.body().size(), false);
    bool head_flip = false;
    if (derived.head().atom) {
      if (!atoms(*derived.head().atom, *stated.head().atom, &head_flip)) return std::nullopt;
    }
    if (!body_from(0)) return std::nullopt;
    VariantMatch m;
    for (const auto& [dn, sn] : fwd) {
      std::string sort;
      for (const auto& [vn, vs] : derived.vars())
        if (vn == dn) sort = vs;
      m.renaming.bind(dn, sort, Term::var(sn, sort));
    }

    m.body_perm = perm;
    m.body_flipped = flips;
    m.head_flipped = head_flip;
    return m;
  }
};

}  // namespace

std::optional<VariantMatch> variant_match(const HornClause& derived, const HornClause& stated) {
  VariantSearch s{derived, stated, /*flex=*/false};
  return s.run();
}

std::optional<VariantMatch> variant_match_flex(const HornClause& derived, const HornClause& stated) {
  VariantSearch s{derived, stated, /*flex=*/true};
  return s.run();
}

HornClause canonicalize(const HornClause& c) {
  std::vector<SortedVar> occ;
  for (const Atom& a : c.body()) a.collect_vars(occ);
  if (c.head().atom) c.head().atom->collect_vars(occ);
  Matcher ren;
  std::vector<SortedVar> prefix;
  size_t i = 0;
  for (const auto& [n, s] : occ) {
    std::string nn = "v" + std::to_string(i++);
    ren.bind(n, s, Term::var(nn, s));
    prefix.emplace_back(nn, s);
  }
  std::vector<Atom> body;
  for (const Atom& a : c.body()) body.push_back(a.apply(ren));
  Head h = c.head();
  if (h.is_atom()) h.atom = h.atom->apply(ren);
  return HornClause::make(std::move(prefix), std::move(body), std::move(h));
}

}  // namespace hornforge
