#include "centex/actions.hpp"

#include <random>
#include <stdexcept>

namespace centex {

namespace {

i64 pow_i64(i64 p, int e) {
  i64 r = 1;
  while (e-- > 0) r *= p;
  return r;
}

void assert_pair_valid(const CocyclePair& out, const char* who) {
  auto checks = validate_pair_report(out.G, out.A, out.a, out.b, out.lambda);
  for (const auto& c : checks) {
    if (!c.ok)
      throw InternalCheckError(std::string(who) + ": transformed pair violates '" + c.name + "': " + c.detail, {}, {});
  }
}

}  // namespace

ModMatrix second_compound(const ModMatrix& x, const CommutatorBasis& lambda) {
  if (x.rows != lambda.n || x.cols != lambda.n) throw std::invalid_argument("second_compound: dimension mismatch");
  int nchk = lambda.size();
  ModMatrix out(nchk, nchk, x.mod);
  for (int K = 0; K < nchk; ++K) {
    auto [u, v] = lambda.pairs[K];
    for (int L = 0; L < nchk; ++L) {
      auto [i, j] = lambda.pairs[L];
      out.at(K, L) = sub_mod(mul_mod(x.at(u, i), x.at(v, j), x.mod), mul_mod(x.at(u, j), x.at(v, i), x.mod), x.mod);
    }
  }
  return out;
}

ModMatrix parity_correction(const ModMatrix& x, const GroupShape& G, const CommutatorBasis& lambda, i64 target_mod) {
  int nchk = lambda.size();
  ModMatrix out(nchk, G.rank(), target_mod);
  if (G.p != 2) return out;
  for (int K = 0; K < nchk; ++K) {
    auto [u, v] = lambda.pairs[K];
    for (int l = 0; l < G.rank(); ++l) {
      if (G.exponents[u] == G.exponents[v] && G.exponents[v] == G.exponents[l] && rem(x.at(u, l), 2) == 1 &&
          rem(x.at(v, l), 2) == 1) {
        out.at(K, l) = rem(pow_i64(2, G.exponents[u] - 1), target_mod);
      }
    }
  }
  return out;
}

ModMatrix carry_action(const ModMatrix& x, const GroupShape& G, i64 target_mod) {
  int n = G.rank();
  if (x.rows != n || x.cols != n) throw std::invalid_argument("carry_action: dimension mismatch");
  ModMatrix out(n, n, target_mod);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int mi = G.exponents[i], mj = G.exponents[j];
      i64 qi = G.factor_modulus(i);
      i64 v = rem(x.at(i, j), qi);
      if (mi <= mj) {
        out.at(i, j) = rem(pow_i64(G.p, mj - mi) * v, target_mod);
      } else {
        i64 f = pow_i64(G.p, mi - mj);
        if (v % f != 0) throw std::invalid_argument("carry_action: matrix violates the homomorphism conditions");
        out.at(i, j) = rem(v / f, target_mod);
      }
    }
  }
  return out;
}

CocyclePair pushforward(const ModMatrix& y_embedded, const CocyclePair& pr) {
  i64 J = pr.coeff_mod();
  ModMatrix y = mat_mod(y_embedded, J);
  CocyclePair out = pr;
  out.a = mat_mul(y, pr.a);
  out.b = mat_mul(y, pr.b);
  assert_pair_valid(out, "pushforward");
  return out;
}

CocyclePair pushforward(const HomMatrix& y, const CocyclePair& pr) {
  if (!(y.domain == pr.A) || !(y.codomain == pr.A))
    throw std::invalid_argument("pushforward: y must be an endomorphism matrix of A");
  if (!validate_hom(y.entries, y.domain, y.codomain))
    throw std::invalid_argument("pushforward: y violates the homomorphism conditions");
  auto emb = embedded_action_matrix(y.entries, pr.A);
  if (!emb) throw std::invalid_argument("pushforward: y has no embedded action");
  return pushforward(*emb, pr);
}

CocyclePair pullback_class(const ModMatrix& x, const CocyclePair& pr) {
  if (!validate_hom(x, pr.G, pr.G)) throw std::invalid_argument("pullback_class: x is not an endomorphism matrix of G");
  i64 J = pr.coeff_mod();
  ModMatrix sigma = carry_action(x, pr.G, J);
  ModMatrix theta = parity_correction(x, pr.G, pr.lambda, J);
  ModMatrix sharp = mat_mod(second_compound(x, pr.lambda), J);
  CocyclePair out = pr;
  out.a = mat_add(mat_mul(pr.a, sigma), mat_mul(pr.b, theta));
  out.b = mat_mul(pr.b, sharp);
  assert_pair_valid(out, "pullback_class");
  return out;
}

MuFunction::MuFunction(ModMatrix x, CocyclePair pr)
    : x_(std::move(x)), pr_(std::move(pr)), transformed_(pullback_class(x_, pr_)) {}

std::vector<i64> MuFunction::operator()(std::span<const i64> s) const {
  int n = pr_.n(), r = pr_.r();
  i64 J = pr_.coeff_mod();
  std::vector<i64> sc(n);
  for (int j = 0; j < n; ++j) sc[j] = rem(s[j], pr_.G.factor_modulus(j));
  std::vector<i64> out(r, 0);

  // generator-column contributions: carry counts along the ordered expansion
  for (int i = 0; i < n; ++i) {
    bool col_zero = true;
    for (int u = 0; u < r; ++u) col_zero &= (pr_.a.at(u, i) == 0);
    if (col_zero) continue;
    i64 qi = pr_.G.factor_modulus(i);
    i64 count = 0;
    i64 prefix = 0;  // x_i . (s_1, ..., s_{j-1}, 0, ...)
    for (int j = 0; j < n; ++j) {
      i64 xij = rem(x_.at(i, j), qi);
      i64 base = rem(prefix, qi);
      for (i64 u = 0; u < sc[j]; ++u) {
        if (rem(xij * u + base, qi) + xij >= qi) ++count;
      }
      prefix = rem(prefix + xij * sc[j], qi);
    }
    i64 c = rem(count, J);
    if (c)
      for (int u = 0; u < r; ++u) out[u] = rem(out[u] + c * pr_.a.at(u, i), J);
  }

  // commutator-column contributions: binomial and straightening terms
  for (int K = 0; K < pr_.lambda.size(); ++K) {
    bool col_zero = true;
    for (int u = 0; u < r; ++u) col_zero &= (pr_.b.at(u, K) == 0);
    if (col_zero) continue;
    auto [ku, kv] = pr_.lambda.pairs[K];
    i64 coef = 0;
    for (int i = 0; i < n; ++i) {
      i64 binom = rem(sc[i] * (sc[i] - 1) / 2, J);  // sc[i] < 2^31, product fits
      coef = rem(coef + binom * mul_mod(rem(x_.at(ku, i), J), rem(x_.at(kv, i), J), J), J);
    }
    for (int L = 0; L < pr_.lambda.size(); ++L) {
      auto [i, j] = pr_.lambda.pairs[L];
      i64 t = mul_mod(mul_mod(sc[i], sc[j], J), mul_mod(rem(x_.at(kv, i), J), rem(x_.at(ku, j), J), J), J);
      coef = rem(coef + t, J);
    }
    if (coef)
      for (int u = 0; u < r; ++u) out[u] = rem(out[u] - coef * pr_.b.at(u, K), J);
  }
  return out;
}

std::vector<i64> MuFunction::delta(std::span<const i64> s, std::span<const i64> t) const {
  int n = pr_.n(), r = pr_.r();
  i64 J = pr_.coeff_mod();
  std::vector<i64> st(n);
  for (int i = 0; i < n; ++i) st[i] = rem(s[i], pr_.G.factor_modulus(i)) + rem(t[i], pr_.G.factor_modulus(i));
  auto ms = (*this)(s);
  auto mt = (*this)(t);
  auto mst = (*this)(st);
  std::vector<i64> out(r);
  for (int u = 0; u < r; ++u) out[u] = rem(ms[u] + mt[u] - mst[u], J);
  return out;
}

MuFunction mu_correction(const ModMatrix& x, const CocyclePair& pr) {
  MuFunction mu(x, pr);
  const CocyclePair& T = mu.transformed();
  int n = pr.n(), r = pr.r();
  i64 J = pr.coeff_mod();

  auto check_point = [&](const std::vector<i64>& s, const std::vector<i64>& t) {
    std::vector<i64> xs(n, 0), xt(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        xs[i] += x.at(i, j) * s[j];
        xt[i] += x.at(i, j) * t[j];
      }
    auto lhs = eval_alpha(pr, xs, xt);
    auto trans = eval_alpha(T, s, t);
    auto d = mu.delta(s, t);
    for (int u = 0; u < r; ++u) {
      if (rem(lhs[u], J) != rem(trans[u] - d[u], J))
        throw InternalCheckError("mu_correction: defining identity fails", s, t);
    }
  };

  if (pr.G.order() <= 81) {
    u64 gn = pr.G.order();
    std::vector<i64> s(n), t(n);
    for (u64 is = 0; is < gn; ++is) {
      u64 k = is;
      for (int i = n - 1; i >= 0; --i) {
        s[i] = static_cast<i64>(k % static_cast<u64>(pr.G.factor_modulus(i)));
        k /= static_cast<u64>(pr.G.factor_modulus(i));
      }
      for (u64 it = 0; it < gn; ++it) {
        k = it;
        for (int i = n - 1; i >= 0; --i) {
          t[i] = static_cast<i64>(k % static_cast<u64>(pr.G.factor_modulus(i)));
          k /= static_cast<u64>(pr.G.factor_modulus(i));
        }
        check_point(s, t);
      }
    }
  } else {
    std::mt19937_64 rng(0x5eedc0de);
    std::vector<i64> s(n), t(n);
    for (int trial = 0; trial < 256; ++trial) {
      for (int i = 0; i < n; ++i) {
        s[i] = static_cast<i64>(rng() % static_cast<u64>(pr.G.factor_modulus(i)));
        t[i] = static_cast<i64>(rng() % static_cast<u64>(pr.G.factor_modulus(i)));
      }
      check_point(s, t);
    }
  }
  return mu;
}

}  // namespace centex
