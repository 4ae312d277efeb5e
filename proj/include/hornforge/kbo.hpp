#pragma once

#include "hornforge/term.hpp"

namespace hornforge {

/// Knuth-Bendix ordering with all symbol weights 1 and precedence given by
/// declaration order (later declaration is greater).
class Kbo {
 public:
  enum class Cmp : uint8_t { kLess, kEqual, kGreater, kIncomparable };

  explicit Kbo(const Signature& sig) : sig_(&sig) {}

  Cmp compare(const Term& s, const Term& t) const;
  bool greater(const Term& s, const Term& t) const { return compare(s, t) == Cmp::kGreater; }

 private:
  const Signature* sig_;
};

}  // namespace hornforge
