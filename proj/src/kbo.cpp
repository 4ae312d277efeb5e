#include "hornforge/kbo.hpp"

#include <map>

namespace hornforge {

namespace {

void var_counts(const Term& t, std::map<std::string, int>& counts) {
  if (t.is_var()) {
    ++counts[t.name()];
    return;
  }
  for (const Term& a : t.args()) var_counts(a, counts);
}

// true iff every variable occurs in `big` at least as often as in `small`
bool covers(const std::map<std::string, int>& big, const std::map<std::string, int>& small) {
  for (const auto& [v, n] : small) {
    auto it = big.find(v);
    if (it == big.end() || it->second < n) return false;
  }
  return true;
}

}  // namespace

Kbo::Cmp Kbo::compare(const Term& s, const Term& t) const {
  if (s == t) return Cmp::kEqual;
  std::map<std::string, int> vs, vt;
  var_counts(s, vs);
  var_counts(t, vt);
  bool s_covers = covers(vs, vt);
  bool t_covers = covers(vt, vs);
  if (!s_covers && !t_covers) return Cmp::kIncomparable;

  size_t ws = s.weight();
  size_t wt = t.weight();
  if (ws > wt) return s_covers ? Cmp::kGreater : Cmp::kIncomparable;
  if (wt > ws) return t_covers ? Cmp::kLess : Cmp::kIncomparable;

  // Equal weights. A variable can only be below a term that contains it;
  // with all weights 1 that implies strictly larger weight, so reaching here
  // with a variable on either side means incomparable.
  if (s.is_var() || t.is_var()) return Cmp::kIncomparable;

  if (s.name() != t.name()) {
    int ps = sig_->precedence(s.name());
    int pt = sig_->precedence(t.name());
    if (ps == pt) return Cmp::kIncomparable;  // undeclared symbols
    if (ps > pt) return s_covers ? Cmp::kGreater : Cmp::kIncomparable;
    return t_covers ? Cmp::kLess : Cmp::kIncomparable;
  }

  // Same head: lexicographic on arguments.
  for (size_t i = 0; i < s.args().size(); ++i) {
    Cmp c = compare(s.args()[i], t.args()[i]);
    if (c == Cmp::kEqual) continue;
    if (c == Cmp::kGreater) return s_covers ? Cmp::kGreater : Cmp::kIncomparable;
    if (c == Cmp::kLess) return t_covers ? Cmp::kLess : Cmp::kIncomparable;
    return Cmp::kIncomparable;
  }
  return Cmp::kEqual;  // unreachable: s == t handled above
}

}  // namespace hornforge
