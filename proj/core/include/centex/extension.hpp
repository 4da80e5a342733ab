#pragma once

#include <span>
#include <vector>

#include "centex/cocycle.hpp"

namespace centex {

/// A group element of the central extension built on A x G.
struct ExtElement {
  GroupElement a_part;  // per-factor coordinates in A
  GroupElement g_part;  // per-factor coordinates in G

  bool operator==(const ExtElement& o) const { return a_part == o.a_part && g_part == o.g_part; }
};

/// The group on A x G with multiplication twisted by the cocycle:
/// (a1, g1)(a2, g2) = (a1 + a2 + alpha(g1, g2), g1 + g2).
class ExtGroup {
 public:
  explicit ExtGroup(CocyclePair pair);

  const CocyclePair& pair() const { return pair_; }
  u64 order() const { return order_; }

  ExtElement identity() const;
  ExtElement make(std::vector<i64> a_coords, std::vector<i64> g_coords) const;
  ExtElement mul(const ExtElement& u, const ExtElement& v) const;
  ExtElement inv(const ExtElement& u) const;
  /// v u v^{-1}.
  ExtElement conj(const ExtElement& u, const ExtElement& v) const;
  /// u v u^{-1} v^{-1}; the A-part is eta(g_u, g_v) and the G-part vanishes.
  ExtElement comm(const ExtElement& u, const ExtElement& v) const;
  ExtElement pow(const ExtElement& u, i64 k) const;
  u64 element_order(const ExtElement& u) const;

  /// Canonical index in [0, order): mixed-radix over A then G coordinates.
  u64 encode(const ExtElement& u) const;
  ExtElement decode(u64 index) const;

  /// Read the defining data back off the group operation alone.
  CocyclePair recover_pair() const;

  /// Closure of the given elements under multiplication equals the whole
  /// group? Breadth-first; throws BudgetExceeded past `budget` elements.
  bool generates(std::span<const ExtElement> gens, u64 budget = kDefaultClosureBudget) const;

  static constexpr u64 kDefaultClosureBudget = 1'000'000;

 private:
  CocyclePair pair_;
  u64 order_;
};

}  // namespace centex
