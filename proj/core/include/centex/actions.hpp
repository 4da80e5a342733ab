#pragma once

#include <span>
#include <vector>

#include "centex/cocycle.hpp"

namespace centex {

/// A mathematical consistency check failed; carries the witness point.
struct InternalCheckError : std::logic_error {
  std::vector<i64> s, t;
  InternalCheckError(std::string what, std::vector<i64> s_, std::vector<i64> t_)
      : std::logic_error(std::move(what)), s(std::move(s_)), t(std::move(t_)) {}
};

/// Second compound matrix: entry (K, L) is the 2x2 minor of x on rows
/// (K.first, K.second) and columns (L.first, L.second). Multiplicative:
/// second_compound(x y) = second_compound(x) second_compound(y).
ModMatrix second_compound(const ModMatrix& x, const CommutatorBasis& lambda);

/// Characteristic-2 correction: entry (K, l) is 2^{m_{K.first}-1} exactly
/// when p = 2, both x[K.first][l] and x[K.second][l] are odd, and the three
/// exponents m_{K.first}, m_{K.second}, m_l agree; otherwise 0. Always the
/// zero matrix for odd p.
ModMatrix parity_correction(const ModMatrix& x, const GroupShape& G, const CommutatorBasis& lambda, i64 target_mod);

/// Carry action of an endomorphism matrix on the a-data. Entry (i, j) is the
/// number of values s in [0, p^{m_j}) for which multiplying generator j's
/// exponent past s by x[i][j] produces a carry mod p^{m_i}:
///   sum_{s < p^{m_j}} [( <x_ij s> + <x_ij> ) / p^{m_i}]
/// with closed form p^{m_j - m_i} (x_ij mod p^{m_i}) when m_i <= m_j and
/// (x_ij / p^{m_i - m_j}) mod p^{m_j} otherwise (the division is exact for
/// homomorphism matrices). Equals x entrywise when all exponents agree.
ModMatrix carry_action(const ModMatrix& x, const GroupShape& G, i64 target_mod);

/// Transport along an endomorphism of A: (y a, y b) with y acting on
/// embedded coordinates.
CocyclePair pushforward(const ModMatrix& y_embedded, const CocyclePair& pr);
CocyclePair pushforward(const HomMatrix& y, const CocyclePair& pr);

/// Normal-form data of the pullback class along the endomorphism of G given
/// by x: (a * carry_action(x) + b * parity_correction(x), b * second_compound(x)).
/// The output satisfies the pair invariants; a violation is an internal error.
CocyclePair pullback_class(const ModMatrix& x, const CocyclePair& pr);

/// The coboundary correction linking the pullback cocycle to its normal
/// form. With T = pullback_class(x, pr):
///   alpha_pr(x s, x t) = alpha_T(s, t) - delta(s, t)   for all s, t,
/// where delta(s, t) = mu(s) + mu(t) - mu(s + t). Per-generator free
/// constants are fixed to zero. Evaluation reduces the argument to canonical
/// coordinates first; cost is O(sum_j s_j) per call.
class MuFunction {
 public:
  MuFunction(ModMatrix x, CocyclePair pr);

  std::vector<i64> operator()(std::span<const i64> s) const;
  std::vector<i64> delta(std::span<const i64> s, std::span<const i64> t) const;
  const CocyclePair& transformed() const { return transformed_; }

 private:
  ModMatrix x_;
  CocyclePair pr_;
  CocyclePair transformed_;
};

/// Builds MuFunction and verifies its defining identity: exhaustively over
/// G x G when |G| <= 81, on 256 deterministic samples otherwise. Throws
/// InternalCheckError with the failing point.
MuFunction mu_correction(const ModMatrix& x, const CocyclePair& pr);

}  // namespace centex
