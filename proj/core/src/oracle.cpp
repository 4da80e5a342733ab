#include "centex/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "centex/matrix.hpp"

namespace centex {

CayleyTable build_table(const CocyclePair& pr, u64 budget) {
  ExtGroup E(pr);
  u64 n = E.order();
  if (n > budget) throw BudgetExceeded(n, "build_table: group order exceeds the table budget");
  CayleyTable t;
  t.order = n;
  t.labels.reserve(n);
  for (u64 k = 0; k < n; ++k) t.labels.push_back(E.decode(k));
  t.mul.assign(n * n, 0);
  for (u64 i = 0; i < n; ++i)
    for (u64 j = 0; j < n; ++j) t.mul[i * n + j] = static_cast<u32>(E.encode(E.mul(t.labels[i], t.labels[j])));

  // Latin square: every row and column is a permutation
  std::vector<char> seen(n);
  for (u64 i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (u64 j = 0; j < n; ++j) {
      u32 v = t.mul[i * n + j];
      if (seen[v]) throw std::logic_error("build_table: row is not a permutation");
      seen[v] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (u64 j = 0; j < n; ++j) {
      u32 v = t.mul[j * n + i];
      if (seen[v]) throw std::logic_error("build_table: column is not a permutation");
      seen[v] = 1;
    }
  }

  t.inv.assign(n, 0);
  for (u64 i = 0; i < n; ++i)
    for (u64 j = 0; j < n; ++j)
      if (t.mul[i * n + j] == 0) t.inv[i] = static_cast<u32>(j);

  t.order_of.assign(n, 0);
  for (u64 i = 0; i < n; ++i) {
    u32 x = static_cast<u32>(i), o = 1;
    while (x != 0) {
      x = t.mul[x * n + i];
      ++o;
    }
    t.order_of[i] = o;
  }

  for (int i = 0; i < pr.n(); ++i) {
    ExtElement g = E.make(std::vector<i64>(pr.r(), 0), element_generator(pr.G, i).coords);
    t.generators.push_back(static_cast<u32>(E.encode(g)));
  }
  return t;
}

namespace {

struct SearchPlan {
  std::vector<u32> bfs;      // visit order, bfs[0] = identity
  std::vector<u32> parent;   // bfs tree
  std::vector<u32> pgen;
};

SearchPlan plan_words(const CayleyTable& t) {
  u64 n = t.order;
  SearchPlan plan;
  plan.parent.assign(n, 0);
  plan.pgen.assign(n, 0);
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  plan.bfs.push_back(0);
  for (size_t head = 0; head < plan.bfs.size(); ++head) {
    u32 u = plan.bfs[head];
    for (size_t gi = 0; gi < t.generators.size(); ++gi) {
      u32 v = t.at(u, t.generators[gi]);
      if (!seen[v]) {
        seen[v] = 1;
        plan.parent[v] = u;
        plan.pgen[v] = static_cast<u32>(gi);
        plan.bfs.push_back(v);
      }
    }
  }
  if (plan.bfs.size() != n)
    throw std::logic_error("oracle: the recorded generating set does not generate the group");
  return plan;
}

u32 comm(const CayleyTable& t, u32 a, u32 b) {
  u64 n = t.order;
  return t.mul[t.mul[t.mul[a * n + b] * n + t.inv[a]] * n + t.inv[b]];
}

// Backtracking over generator images from src into dst; order-matched
// candidates, pairwise commutator-order pruning, and a full word-consistency
// verification plus bijectivity at the leaves.
u64 hom_search(const CayleyTable& src, const CayleyTable& dst, bool early_exit) {
  if (src.order != dst.order) return 0;
  u64 n = src.order;
  size_t ng = src.generators.size();
  SearchPlan plan = plan_words(src);

  std::vector<std::vector<u32>> cands(ng);
  for (size_t gi = 0; gi < ng; ++gi) {
    u32 want = src.order_of[src.generators[gi]];
    for (u64 x = 0; x < n; ++x)
      if (dst.order_of[x] == want) cands[gi].push_back(static_cast<u32>(x));
  }

  std::vector<u32> img(ng, 0);
  std::vector<u32> f(n, 0);
  std::vector<u32> mark(n, 0);
  u32 epoch = 0;
  u64 found = 0;

  auto leaf_check = [&]() -> bool {
    f[0] = 0;
    for (size_t k = 1; k < plan.bfs.size(); ++k) {
      u32 v = plan.bfs[k];
      f[v] = dst.mul[static_cast<u64>(f[plan.parent[v]]) * n + img[plan.pgen[v]]];
    }
    for (u64 u = 0; u < n; ++u)
      for (size_t gi = 0; gi < ng; ++gi)
        if (f[src.mul[u * n + src.generators[gi]]] != dst.mul[static_cast<u64>(f[u]) * n + img[gi]]) return false;
    ++epoch;
    for (u64 u = 0; u < n; ++u) {
      if (mark[f[u]] == epoch) return false;
      mark[f[u]] = epoch;
    }
    return true;
  };

  // iterative backtracking
  std::vector<size_t> pos(ng, 0);
  size_t level = 0;
  while (true) {
    if (pos[level] == cands[level].size()) {
      pos[level] = 0;
      if (level == 0) break;
      --level;
      ++pos[level];
      continue;
    }
    img[level] = cands[level][pos[level]];
    bool ok = true;
    for (size_t i = 0; i < level && ok; ++i) {
      u32 c_src = comm(src, src.generators[i], src.generators[level]);
      u32 c_dst = comm(dst, img[i], img[level]);
      ok = (src.order_of[c_src] == dst.order_of[c_dst]);
    }
    if (!ok) {
      ++pos[level];
      continue;
    }
    if (level + 1 < ng) {
      ++level;
      continue;
    }
    if (leaf_check()) {
      ++found;
      if (early_exit) return found;
    }
    ++pos[level];
  }
  return found;
}

}  // namespace

u64 brute_aut_count(const CayleyTable& t) { return hom_search(t, t, false); }

bool brute_iso(const CayleyTable& a, const CayleyTable& b) {
  if (a.order != b.order) return false;
  return hom_search(a, b, true) > 0;
}

u64 brute_h2_count(const GroupShape& G, const GroupShape& A, u64 var_budget) {
  u64 gn = G.order();
  if (checked_mul(gn, gn) > var_budget)
    throw BudgetExceeded(gn * gn, "brute_h2_count: |G|^2 exceeds the variable budget");
  int vars = static_cast<int>(gn * gn);

  // element decoding for G
  int nf = G.rank();
  auto decode = [&](u64 k) {
    std::vector<i64> g(nf);
    for (int i = nf - 1; i >= 0; --i) {
      u64 m = static_cast<u64>(G.factor_modulus(i));
      g[i] = static_cast<i64>(k % m);
      k /= m;
    }
    return g;
  };
  auto encode = [&](const std::vector<i64>& g) {
    u64 k = 0;
    for (int i = 0; i < nf; ++i) k = k * static_cast<u64>(G.factor_modulus(i)) + static_cast<u64>(rem(g[i], G.factor_modulus(i)));
    return k;
  };
  auto add = [&](u64 ka, u64 kb) {
    auto a = decode(ka), b = decode(kb);
    std::vector<i64> c(nf);
    for (int i = 0; i < nf; ++i) c[i] = a[i] + b[i];
    return encode(c);
  };
  std::vector<u64> addtab(gn * gn);
  for (u64 i = 0; i < gn; ++i)
    for (u64 j = 0; j < gn; ++j) addtab[i * gn + j] = add(i, j);

  long long log_total = 0;  // exponent of p in |H^2|
  for (int d : A.exponents) {
    // cocycle identity rows over Z/p^d
    std::vector<std::vector<i64>> rows;
    rows.reserve(gn * gn * gn);
    for (u64 g1 = 0; g1 < gn; ++g1)
      for (u64 g2 = 0; g2 < gn; ++g2)
        for (u64 g3 = 0; g3 < gn; ++g3) {
          std::vector<i64> row(vars, 0);
          auto bump = [&](u64 x, u64 y, i64 c) { row[x * gn + y] += c; };
          bump(g1, g2, 1);
          bump(g1, addtab[g2 * gn + g3], -1);
          bump(addtab[g1 * gn + g2], g3, 1);
          bump(g2, g3, -1);
          bool nonzero = false;
          for (i64 v : row) nonzero |= (v != 0);
          if (nonzero) rows.push_back(std::move(row));
        }
    Submodule relspan = Submodule::span(A.p, d, vars, rows);
    long long log_im = 0;
    for (int i = 0; i < relspan.basis().rows; ++i) {
      int c = 0;
      while (c < vars && relspan.basis().at(i, c) == 0) ++c;
      if (c == vars) continue;
      log_im += d - valuation_capped(relspan.basis().at(i, c), A.p, d);
    }
    long long log_z2 = static_cast<long long>(d) * vars - log_im;

    // coboundary span: one row per group element
    std::vector<std::vector<i64>> brows;
    for (u64 g = 0; g < gn; ++g) {
      std::vector<i64> row(vars, 0);
      for (u64 g1 = 0; g1 < gn; ++g1)
        for (u64 g2 = 0; g2 < gn; ++g2) {
          i64 c = 0;
          if (g1 == g) ++c;
          if (g2 == g) ++c;
          if (addtab[g1 * gn + g2] == g) --c;
          row[g1 * gn + g2] = c;
        }
      brows.push_back(std::move(row));
    }
    Submodule cobspan = Submodule::span(A.p, d, vars, brows);
    long long log_b2 = 0;
    for (int i = 0; i < cobspan.basis().rows; ++i) {
      int c = 0;
      while (c < vars && cobspan.basis().at(i, c) == 0) ++c;
      if (c == vars) continue;
      log_b2 += d - valuation_capped(cobspan.basis().at(i, c), A.p, d);
    }
    log_total += log_z2 - log_b2;
  }
  return checked_pow(static_cast<u64>(A.p), static_cast<u64>(log_total));
}

std::map<u64, u64> element_order_census(const CayleyTable& t) {
  std::map<u64, u64> census;
  for (u64 i = 0; i < t.order; ++i) ++census[t.order_of[i]];
  return census;
}

}  // namespace centex
