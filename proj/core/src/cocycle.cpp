#include "centex/cocycle.hpp"

#include <algorithm>
#include <stdexcept>

namespace centex {

CommutatorBasis CommutatorBasis::make(int n, PairOrder order) {
  CommutatorBasis cb;
  cb.n = n;
  cb.order = order;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) cb.pairs.emplace_back(i, j);
  if (order == PairOrder::reversed) std::reverse(cb.pairs.begin(), cb.pairs.end());
  return cb;
}

int CommutatorBasis::index_of(int i, int j) const {
  for (int k = 0; k < size(); ++k)
    if (pairs[k] == std::make_pair(i, j)) return k;
  throw std::invalid_argument("CommutatorBasis::index_of: no such pair");
}

i64 CocyclePair::coeff_mod() const {
  return A.rank() ? A.factor_modulus(A.rank() - 1) : A.p;
}

std::vector<PairCheck> validate_pair_report(const GroupShape& G, const GroupShape& A, const ModMatrix& a,
                                            const ModMatrix& b, const CommutatorBasis& lambda) {
  std::vector<PairCheck> out;
  int n = G.rank(), r = A.rank();
  int nchk = n * (n - 1) / 2;
  i64 J = A.rank() ? A.factor_modulus(r - 1) : A.p;
  int dr = A.max_exponent();

  bool dims_ok = a.rows == r && a.cols == n && b.rows == r && b.cols == nchk && lambda.n == n &&
                 lambda.size() == nchk;
  out.push_back({"dimensions", dims_ok,
                 dims_ok ? "a is r x n, b is r x n(n-1)/2"
                         : "expected a " + std::to_string(r) + "x" + std::to_string(n) + ", b " + std::to_string(r) +
                               "x" + std::to_string(nchk)});
  if (!dims_ok) return out;

  bool prime_ok = G.p == A.p;
  out.push_back({"same_prime", prime_ok, prime_ok ? "" : "G and A use different primes"});
  if (!prime_ok) return out;

  bool mod_ok = a.mod == J && b.mod == J;
  out.push_back({"coefficient_modulus", mod_ok, mod_ok ? "" : "matrices must be over Z/p^{d_r}"});
  if (!mod_ok) return out;

  bool a_ok = true;
  std::string a_detail;
  for (int u = 0; u < r && a_ok; ++u)
    for (int i = 0; i < n && a_ok; ++i) {
      int need = dr - std::min(G.exponents[i], A.exponents[u]);
      if (valuation_capped(a.at(u, i), A.p, dr) < need) {
        a_ok = false;
        a_detail = "entry (" + std::to_string(u) + "," + std::to_string(i) + ") needs valuation >= " + std::to_string(need);
      }
    }
  out.push_back({"a_valuations", a_ok, a_detail});

  bool b_ok = true;
  std::string b_detail;
  for (int u = 0; u < r && b_ok; ++u)
    for (int L = 0; L < nchk && b_ok; ++L) {
      int need = dr - std::min(G.exponents[lambda.pairs[L].first], A.exponents[u]);
      if (valuation_capped(b.at(u, L), A.p, dr) < need) {
        b_ok = false;
        b_detail = "entry (" + std::to_string(u) + "," + std::to_string(L) + ") needs valuation >= " + std::to_string(need);
      }
    }
  out.push_back({"b_valuations", b_ok, b_detail});

  return out;
}

CocyclePair make_pair(GroupShape G, GroupShape A, ModMatrix a, ModMatrix b, PairOrder order) {
  CommutatorBasis lambda = CommutatorBasis::make(G.rank(), order);
  auto checks = validate_pair_report(G, A, a, b, lambda);
  for (const auto& c : checks) {
    if (!c.ok) throw std::invalid_argument("cocycle pair: check '" + c.name + "' failed: " + c.detail);
  }
  return CocyclePair{std::move(G), std::move(A), std::move(lambda), std::move(a), std::move(b)};
}

CocyclePair make_pair(GroupShape G, GroupShape A, const std::vector<std::vector<i64>>& a,
                      const std::vector<std::vector<i64>>& b, PairOrder order) {
  i64 J = A.rank() ? A.factor_modulus(A.rank() - 1) : A.p;
  int r = A.rank(), n = G.rank(), nchk = n * (n - 1) / 2;
  ModMatrix am(r, n, J), bm(r, nchk, J);
  if (static_cast<int>(a.size()) != r || static_cast<int>(b.size()) != r)
    throw std::invalid_argument("cocycle pair: a and b must have one row per factor of A");
  for (int u = 0; u < r; ++u) {
    if (static_cast<int>(a[u].size()) != n || static_cast<int>(b[u].size()) != nchk)
      throw std::invalid_argument("cocycle pair: row length mismatch");
    for (int i = 0; i < n; ++i) am.at(u, i) = rem(a[u][i], J);
    for (int L = 0; L < nchk; ++L) bm.at(u, L) = rem(b[u][L], J);
  }
  return make_pair(std::move(G), std::move(A), std::move(am), std::move(bm), order);
}

CocyclePair pair_add(const CocyclePair& x, const CocyclePair& y) {
  if (!(x.G == y.G) || !(x.A == y.A) || !(x.lambda == y.lambda))
    throw std::invalid_argument("pair_add: shape mismatch");
  CocyclePair out = x;
  out.a = mat_add(x.a, y.a);
  out.b = mat_add(x.b, y.b);
  return out;
}

CocyclePair pair_sub(const CocyclePair& x, const CocyclePair& y) {
  if (!(x.G == y.G) || !(x.A == y.A) || !(x.lambda == y.lambda))
    throw std::invalid_argument("pair_sub: shape mismatch");
  CocyclePair out = x;
  out.a = mat_sub(x.a, y.a);
  out.b = mat_sub(x.b, y.b);
  return out;
}

std::vector<i64> eval_alpha(const CocyclePair& pr, std::span<const i64> s, std::span<const i64> t) {
  int n = pr.n(), r = pr.r();
  if (static_cast<int>(s.size()) != n || static_cast<int>(t.size()) != n)
    throw std::invalid_argument("eval_alpha: exponent vector length mismatch");
  i64 J = pr.coeff_mod();
  std::vector<i64> sr(n), tr(n);
  for (int i = 0; i < n; ++i) {
    i64 q = pr.G.factor_modulus(i);
    sr[i] = rem(s[i], q);
    tr[i] = rem(t[i], q);
  }
  std::vector<i64> out(r, 0);
  for (int i = 0; i < n; ++i) {
    if (sr[i] + tr[i] >= pr.G.factor_modulus(i)) {
      for (int u = 0; u < r; ++u) out[u] = rem(out[u] + pr.a.at(u, i), J);
    }
  }
  for (int L = 0; L < pr.lambda.size(); ++L) {
    auto [i, j] = pr.lambda.pairs[L];
    i64 coef = mul_mod(tr[i], sr[j], J);
    if (!coef) continue;
    for (int u = 0; u < r; ++u) out[u] = rem(out[u] - coef * pr.b.at(u, L), J);
  }
  return out;
}

std::vector<i64> eval_eta(const CocyclePair& pr, std::span<const i64> s, std::span<const i64> t) {
  int n = pr.n(), r = pr.r();
  i64 J = pr.coeff_mod();
  std::vector<i64> sr(n), tr(n);
  for (int i = 0; i < n; ++i) {
    i64 q = pr.G.factor_modulus(i);
    sr[i] = rem(s[i], q);
    tr[i] = rem(t[i], q);
  }
  std::vector<i64> out(r, 0);
  for (int L = 0; L < pr.lambda.size(); ++L) {
    auto [i, j] = pr.lambda.pairs[L];
    i64 det = sub_mod(mul_mod(sr[i], tr[j], J), mul_mod(sr[j], tr[i], J), J);
    if (!det) continue;
    for (int u = 0; u < r; ++u) out[u] = rem(out[u] + det * pr.b.at(u, L), J);
  }
  return out;
}

bool check_cocycle_identity(const CocyclePair& pr, std::span<const i64> g1, std::span<const i64> g2,
                            std::span<const i64> g3) {
  int n = pr.n();
  i64 J = pr.coeff_mod();
  std::vector<i64> g23(n), g12(n);
  for (int i = 0; i < n; ++i) {
    g23[i] = g2[i] + g3[i];
    g12[i] = g1[i] + g2[i];
  }
  auto t1 = eval_alpha(pr, g1, g2);
  auto t2 = eval_alpha(pr, g1, g23);
  auto t3 = eval_alpha(pr, g12, g3);
  auto t4 = eval_alpha(pr, g2, g3);
  for (int u = 0; u < pr.r(); ++u) {
    if (rem(t1[u] - t2[u] + t3[u] - t4[u], J) != 0) return false;
  }
  return true;
}

bool is_diamond(const CocyclePair& pr) {
  if (pr.r() == 0) return true;  // trivial A is generated by anything
  int e = pr.A.max_exponent();
  Submodule span = Submodule::col_span(pr.A.p, e, pr.b);
  return span == embedded_module(pr.A);
}

bool class_is_zero(const CocyclePair& pr) {
  if (!pr.b.is_zero()) return false;
  int dr = pr.A.max_exponent();
  for (int u = 0; u < pr.r(); ++u)
    for (int i = 0; i < pr.n(); ++i) {
      int need = dr - std::max(0, pr.A.exponents[u] - pr.G.exponents[i]);
      if (valuation_capped(pr.a.at(u, i), pr.A.p, dr) < need) return false;
    }
  return true;
}

bool class_equal(const CocyclePair& x, const CocyclePair& y) { return class_is_zero(pair_sub(x, y)); }

u64 h2_order(const GroupShape& G, const GroupShape& A) {
  if (G.p != A.p && G.rank() && A.rank()) throw std::invalid_argument("h2_order: prime mismatch");
  u64 n = 1;
  auto factor = [&](int m) {
    u64 f = 1;
    for (int du : A.exponents) f = checked_mul(f, checked_pow(static_cast<u64>(A.p), static_cast<u64>(std::min(m, du))));
    return f;
  };
  for (int i = 0; i < G.rank(); ++i) n = checked_mul(n, factor(G.exponents[i]));
  for (int i = 0; i < G.rank(); ++i)
    for (int j = i + 1; j < G.rank(); ++j) n = checked_mul(n, factor(G.exponents[i]));
  return n;
}

}  // namespace centex
