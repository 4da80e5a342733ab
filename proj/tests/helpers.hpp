#pragma once

#include <random>
#include <vector>

#include "centex/cocycle.hpp"
#include "centex/lifting.hpp"

namespace centex::testing {

inline std::mt19937_64 make_rng(u64 seed) { return std::mt19937_64(seed); }

inline i64 rand_below(std::mt19937_64& rng, i64 bound) {
  return bound <= 1 ? 0 : static_cast<i64>(rng() % static_cast<u64>(bound));
}

/// Random matrix satisfying the endomorphism conditions of the shape.
inline ModMatrix random_endo_matrix(std::mt19937_64& rng, const GroupShape& G) {
  int n = G.rank();
  i64 top = n ? G.factor_modulus(n - 1) : G.p;
  ModMatrix x(n, n, top);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int need = std::max(0, G.exponents[i] - G.exponents[j]);
      i64 step = 1;
      for (int k = 0; k < need; ++k) step *= G.p;
      x.at(i, j) = step * rand_below(rng, top / step);
    }
  return x;
}

inline ModMatrix random_automorphism_matrix(std::mt19937_64& rng, const GroupShape& G) {
  for (int tries = 0; tries < 4096; ++tries) {
    ModMatrix x = random_endo_matrix(rng, G);
    if (det_is_unit(x, G.p)) return x;
  }
  throw std::logic_error("random_automorphism_matrix: no invertible sample found");
}

/// Random pair satisfying all valuation constraints; diamond when requested.
inline CocyclePair random_pair(std::mt19937_64& rng, i64 p, std::vector<int> m, std::vector<int> d,
                               bool want_diamond, PairOrder order = PairOrder::lex) {
  GroupShape G(p, std::move(m));
  GroupShape A(p, std::move(d));
  int n = G.rank(), r = A.rank();
  int nchk = n * (n - 1) / 2;
  int dr = A.max_exponent();
  i64 J = r ? A.factor_modulus(r - 1) : p;
  auto lambda = CommutatorBasis::make(n, order);
  for (int tries = 0; tries < 4096; ++tries) {
    ModMatrix a(r, n, J), b(r, nchk, J);
    for (int u = 0; u < r; ++u) {
      for (int i = 0; i < n; ++i) {
        int v = dr - std::min(G.exponents[i], A.exponents[u]);
        i64 step = 1;
        for (int k = 0; k < v; ++k) step *= p;
        a.at(u, i) = step * rand_below(rng, J / step);
      }
      for (int L = 0; L < nchk; ++L) {
        int v = dr - std::min(G.exponents[lambda.pairs[L].first], A.exponents[u]);
        i64 step = 1;
        for (int k = 0; k < v; ++k) step *= p;
        b.at(u, L) = step * rand_below(rng, J / step);
      }
    }
    CocyclePair pr{G, A, lambda, std::move(a), std::move(b)};
    if (!want_diamond || is_diamond(pr)) return pr;
  }
  throw std::logic_error("random_pair: no diamond sample found for this shape");
}

/// The worked fixed points used across the suites.
inline CocyclePair heisenberg3() { return make_pair(GroupShape(3, {1, 1}), GroupShape(3, {1}), {{0, 0}}, {{1}}); }
inline CocyclePair dihedral8() { return make_pair(GroupShape(2, {1, 1}), GroupShape(2, {1}), {{0, 0}}, {{1}}); }
inline CocyclePair quaternion8() { return make_pair(GroupShape(2, {1, 1}), GroupShape(2, {1}), {{1, 1}}, {{1}}); }
inline CocyclePair extraspecial5() { return make_pair(GroupShape(5, {1, 1}), GroupShape(5, {1}), {{0, 0}}, {{1}}); }

/// All exponent vectors of G, for exhaustive sweeps.
inline std::vector<std::vector<i64>> all_exponent_vectors(const GroupShape& G) {
  std::vector<std::vector<i64>> out;
  u64 total = G.order();
  for (u64 k = 0; k < total; ++k) {
    std::vector<i64> v(G.rank());
    u64 t = k;
    for (int i = G.rank() - 1; i >= 0; --i) {
      u64 mod = static_cast<u64>(G.factor_modulus(i));
      v[i] = static_cast<i64>(t % mod);
      t /= mod;
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace centex::testing
