#include "centex/lifting.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace centex {

namespace {

i64 pow_i64(i64 p, int e) {
  i64 r = 1;
  while (e-- > 0) r *= p;
  return r;
}

void require_liftable_pair(const CocyclePair& pr) {
  if (pr.n() < 2)
    throw std::invalid_argument("lifting: the base group needs at least two factors (class-two data)");
  if (!is_diamond(pr))
    throw std::invalid_argument("lifting: the commutator columns must generate A (class exactly two)");
}

// Residual of the compatibility equations: b_dst (w_dst sigma(x) + theta(x) - sharp(x) w_src).
ModMatrix lift_residual(const ModMatrix& x, const LiftContext& src, const LiftContext& dst) {
  const CocyclePair& pr = src.pair;
  i64 J = pr.coeff_mod();
  ModMatrix sigma = carry_action(x, pr.G, J);
  ModMatrix theta = parity_correction(x, pr.G, pr.lambda, J);
  ModMatrix sharpJ = mat_mod(second_compound(x, pr.lambda), J);
  ModMatrix M = mat_add(mat_sub(mat_mul(dst.w, sigma), mat_mul(sharpJ, src.w)), theta);
  return mat_mul(dst.pair.b, M);
}

bool residual_ok(const ModMatrix& R, const CocyclePair& pr, LiftCriterion criterion) {
  if (criterion == LiftCriterion::Exact) return R.is_zero();
  int dr = pr.A.max_exponent();
  for (int u = 0; u < pr.r(); ++u)
    for (int i = 0; i < pr.n(); ++i) {
      int need = dr - std::max(0, pr.A.exponents[u] - pr.G.exponents[i]);
      if (valuation_capped(R.at(u, i), pr.A.p, dr) < need) return false;
    }
  return true;
}

}  // namespace

std::vector<std::vector<i64>> annihilator_generators(const CocyclePair& pr) {
  int r = pr.r(), nchk = pr.lambda.size();
  i64 p = pr.A.p;
  i64 J = pr.coeff_mod();
  int dr = pr.A.max_exponent();

  // divide row u by p^{d_r - d_u}
  ModMatrix bbar(r, nchk, J);
  for (int u = 0; u < r; ++u) {
    i64 scale = pow_i64(p, dr - pr.A.exponents[u]);
    for (int L = 0; L < nchk; ++L) {
      if (pr.b.at(u, L) % scale != 0)
        throw std::invalid_argument("annihilator_generators: b violates its valuation constraints");
      bbar.at(u, L) = pr.b.at(u, L) / scale;
    }
  }

  // greedy unit-pivot column selection mod p
  std::vector<int> block_cols;
  {
    ModMatrix work = mat_mod(bbar, p);
    std::vector<bool> used_row(r, false);
    for (int c = 0; c < nchk && static_cast<int>(block_cols.size()) < r; ++c) {
      int pivot_row = -1;
      for (int i = 0; i < r; ++i)
        if (!used_row[i] && work.at(i, c) != 0) { pivot_row = i; break; }
      if (pivot_row < 0) continue;
      used_row[pivot_row] = true;
      block_cols.push_back(c);
      i64 inv = inverse_unit(work.at(pivot_row, c), p);
      for (int i = 0; i < r; ++i) {
        if (i == pivot_row || work.at(i, c) == 0) continue;
        i64 f = mul_mod(work.at(i, c), inv, p);
        for (int cc = 0; cc < nchk; ++cc) work.at(i, cc) = rem(work.at(i, cc) - f * work.at(pivot_row, cc), p);
      }
    }
    if (static_cast<int>(block_cols.size()) != r)
      throw std::invalid_argument("annihilator_generators: the commutator columns do not generate A");
  }
  std::vector<int> rest_cols;
  {
    std::vector<bool> in_block(nchk, false);
    for (int c : block_cols) in_block[c] = true;
    for (int c = 0; c < nchk; ++c)
      if (!in_block[c]) rest_cols.push_back(c);
  }

  ModMatrix block(r, r, J);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) block.at(i, k) = bbar.at(i, block_cols[k]);
  auto block_inv_opt = mat_inverse(block, p);
  if (!block_inv_opt) throw std::logic_error("annihilator_generators: selected block is not invertible");
  const ModMatrix& block_inv = *block_inv_opt;

  int r0 = 0;
  if (r > 0) {
    if (pr.A.exponents.front() == dr) {
      r0 = 1;
    } else {
      for (int k = 0; k < r - 1; ++k)
        if (pr.A.exponents[k] < dr) r0 = k + 1;
    }
  }

  std::vector<std::vector<i64>> gens;
  // torsion generators through the block
  for (int i = 0; i < std::min(r0, r); ++i) {
    std::vector<i64> full(nchk, 0);
    i64 scale = pow_i64(p, pr.A.exponents[i]);
    for (int k = 0; k < r; ++k) full[block_cols[k]] = mul_mod(block_inv.at(k, i), scale, J);
    gens.push_back(std::move(full));
  }
  // one generator per non-block column
  for (size_t j = 0; j < rest_cols.size(); ++j) {
    std::vector<i64> full(nchk, 0);
    for (int k = 0; k < r; ++k) {
      i64 s = 0;
      for (int i = 0; i < r; ++i) s = rem(s + block_inv.at(k, i) * bbar.at(i, rest_cols[j]), J);
      full[block_cols[k]] = rem(-s, J);
    }
    full[rest_cols[j]] = 1;
    gens.push_back(std::move(full));
  }
  return gens;
}

LiftContext LiftContext::make(const CocyclePair& pr) {
  require_liftable_pair(pr);
  int dr = pr.A.rank() ? pr.A.max_exponent() : 1;
  auto w = solve_left(pr.b, pr.a, pr.A.p, dr);
  if (!w) throw std::logic_error("LiftContext: b w = a has no solution although the pair generates A");
  return make_with_solution(pr, std::move(*w));
}

LiftContext LiftContext::make_with_solution(const CocyclePair& pr, ModMatrix w) {
  require_liftable_pair(pr);
  int dr = pr.A.rank() ? pr.A.max_exponent() : 1;
  if (!(mat_mul(pr.b, w) == pr.a)) throw std::invalid_argument("LiftContext: supplied w does not solve b w = a");
  Submodule generic = kernel_submodule(pr.b, pr.A.p, dr);
  Submodule explicit_form = Submodule::span(pr.A.p, dr, pr.lambda.size(), annihilator_generators(pr));
  if (!(generic == explicit_form))
    throw InternalCheckError("LiftContext: explicit annihilator generators disagree with the kernel", {}, {});
  return LiftContext{pr, std::move(w), std::move(generic)};
}

bool check_lift(const ModMatrix& x, const LiftContext& src, const LiftContext& dst, bool require_automorphism,
                LiftCriterion criterion) {
  const CocyclePair& pr = src.pair;
  if (!(pr.G == dst.pair.G) || !(pr.A == dst.pair.A) || !(pr.lambda == dst.pair.lambda))
    throw std::invalid_argument("check_lift: pairs live on different (G, A)");
  if (!validate_hom(x, pr.G, pr.G)) throw std::invalid_argument("check_lift: x is not an endomorphism matrix");
  if (require_automorphism && !det_is_unit(x, pr.G.p)) return false;

  i64 J = pr.coeff_mod();
  int dr = pr.A.rank() ? pr.A.max_exponent() : 1;
  ModMatrix sharpJ = mat_mod(second_compound(x, pr.lambda), J);
  Submodule image = submodule_image(sharpJ, src.annihilator);
  if (!image.leq(dst.annihilator)) return false;
  if (require_automorphism && src.annihilator.size() != dst.annihilator.size())
    throw InternalCheckError("check_lift: annihilator sizes differ for diamond pairs over the same A", {}, {});
  (void)dr;
  return residual_ok(lift_residual(x, src, dst), pr, criterion);
}

ModMatrix find_compatible_y(const ModMatrix& x, const LiftContext& src, const LiftContext& dst) {
  const CocyclePair& pr = src.pair;
  i64 J = pr.coeff_mod();
  int dr = pr.A.rank() ? pr.A.max_exponent() : 1;
  ModMatrix sharpJ = mat_mod(second_compound(x, pr.lambda), J);
  ModMatrix rhs = mat_mul(dst.pair.b, sharpJ);
  auto yt = solve_left(src.pair.b.transpose(), rhs.transpose(), pr.A.p, dr);
  if (!yt) throw std::logic_error("find_compatible_y: no solution although the lifting criterion holds");
  ModMatrix y = yt->transpose();

  // companion identity on the a-data, valid in the per-column quotients
  ModMatrix sigma = carry_action(x, pr.G, J);
  ModMatrix theta = parity_correction(x, pr.G, pr.lambda, J);
  ModMatrix lhs = mat_mul(y, src.pair.a);
  ModMatrix target = mat_add(mat_mul(dst.pair.a, sigma), mat_mul(dst.pair.b, theta));
  ModMatrix diff = mat_sub(lhs, target);
  for (int u = 0; u < pr.r(); ++u)
    for (int i = 0; i < pr.n(); ++i) {
      int need = dr - std::max(0, pr.A.exponents[u] - pr.G.exponents[i]);
      if (valuation_capped(diff.at(u, i), pr.A.p, dr) < need)
        throw InternalCheckError("find_compatible_y: companion identity fails", {static_cast<i64>(u)}, {static_cast<i64>(i)});
    }
  return y;
}

LiftWitness::LiftWitness(ModMatrix x, ModMatrix y, CocyclePair src, CocyclePair dst)
    : x_(std::move(x)), y_(std::move(y)), src_(src), dst_(dst), mu_(x_, dst) {
  const CocyclePair& s = src_.pair();
  i64 J = s.coeff_mod();
  int dr = s.A.rank() ? s.A.max_exponent() : 1;
  // residual between the transported a-data and the transformed target data
  ModMatrix delta = mat_sub(mat_mul(mat_mod(y_, J), s.a), mu_.transformed().a);
  residual_scale_.assign(s.n(), std::vector<i64>(s.r(), 0));
  for (int i = 0; i < s.n(); ++i) {
    i64 scale = pow_i64(s.A.p, std::min(s.G.exponents[i], dr));
    for (int u = 0; u < s.r(); ++u) {
      int need = dr - std::max(0, s.A.exponents[u] - s.G.exponents[i]);
      if (valuation_capped(delta.at(u, i), s.A.p, dr) < need)
        throw InternalCheckError("build_lift: residual is not a coboundary of a scaling correction",
                                 {static_cast<i64>(u)}, {static_cast<i64>(i)});
      // exact division: p^{min(m_i, d_r)} times the stored value reproduces delta
      residual_scale_[i][u] = delta.at(u, i) / scale;
    }
  }
}

std::vector<i64> LiftWitness::mu_at(std::span<const i64> g) const {
  const CocyclePair& s = src_.pair();
  i64 J = s.coeff_mod();
  auto out = mu_(g);
  for (int i = 0; i < s.n(); ++i) {
    i64 gi = rem(g[i], s.G.factor_modulus(i));
    if (!gi) continue;
    for (int u = 0; u < s.r(); ++u) out[u] = rem(out[u] + gi * residual_scale_[i][u], J);
  }
  return out;
}

ExtElement LiftWitness::apply(const ExtElement& u) const {
  const CocyclePair& s = src_.pair();
  const CocyclePair& d = dst_.pair();
  i64 J = s.coeff_mod();
  auto emb = embed_element(u.a_part);
  auto ya = mat_apply(mat_mod(y_, J), emb);
  auto mu = mu_at(u.g_part.coords);
  for (int k = 0; k < s.r(); ++k) ya[k] = rem(ya[k] + mu[k], J);
  GroupElement a_out = unembed_element(d.A, ya);
  std::vector<i64> g_out(d.n(), 0);
  for (int i = 0; i < d.n(); ++i) {
    i64 m = d.G.factor_modulus(i);
    i64 sum = 0;
    for (int j = 0; j < d.n(); ++j) sum = rem(sum + rem(x_.at(i, j), m) * rem(u.g_part.coords[j], m), m);
    g_out[i] = sum;
  }
  return ExtElement{std::move(a_out), GroupElement(d.G, std::move(g_out))};
}

LiftWitness build_lift(const ModMatrix& x, const ModMatrix& y, const CocyclePair& src, const CocyclePair& dst) {
  LiftWitness w(x, y, src, dst);
  // homomorphism property on all generator pairs
  const ExtGroup& S = w.source();
  const ExtGroup& T = w.target();
  std::vector<ExtElement> gens;
  for (int i = 0; i < src.n(); ++i)
    gens.push_back(S.make(std::vector<i64>(src.r(), 0), element_generator(src.G, i).coords));
  for (int u = 0; u < src.r(); ++u)
    gens.push_back(S.make(element_generator(src.A, u).coords, std::vector<i64>(src.n(), 0)));
  for (const auto& g1 : gens)
    for (const auto& g2 : gens) {
      ExtElement lhs = w.apply(S.mul(g1, g2));
      ExtElement rhs = T.mul(w.apply(g1), w.apply(g2));
      if (!(lhs == rhs))
        throw InternalCheckError("build_lift: assembled map is not a homomorphism on generators", g1.g_part.coords,
                                 g2.g_part.coords);
    }
  return w;
}

bool verify_lift_exhaustive(const LiftWitness& w, u64 budget) {
  const ExtGroup& S = w.source();
  const ExtGroup& T = w.target();
  if (S.order() != T.order()) return false;
  if (S.order() > budget) throw BudgetExceeded(S.order(), "verify_lift_exhaustive: group too large for the budget");
  u64 n = S.order();
  std::vector<ExtElement> img;
  img.reserve(n);
  for (u64 k = 0; k < n; ++k) img.push_back(w.apply(S.decode(k)));
  std::vector<u64> codes;
  codes.reserve(n);
  for (const auto& e : img) codes.push_back(T.encode(e));
  for (u64 i = 0; i < n; ++i) {
    ExtElement ui = S.decode(i);
    for (u64 j = 0; j < n; ++j) {
      ExtElement prod = S.mul(ui, S.decode(j));
      if (!(w.apply(prod) == T.mul(img[i], img[j]))) return false;
    }
  }
  std::sort(codes.begin(), codes.end());
  return std::adjacent_find(codes.begin(), codes.end()) == codes.end();
}

u64 kernel_order(const GroupShape& G, const GroupShape& A) {
  int dr = A.max_exponent();
  u64 n = 1;
  for (int mi : G.exponents) {
    for (int du : A.exponents)
      n = checked_mul(n, checked_pow(static_cast<u64>(G.p), static_cast<u64>(std::min(mi, du))));
    for (int mj : G.exponents)
      n = checked_mul(n, checked_pow(static_cast<u64>(G.p), static_cast<u64>(std::min(mi, std::max(mj - dr, 0)))));
  }
  return n;
}

std::vector<ModMatrix> lifting_automorphism_reps(const CocyclePair& pr, u64 coset_budget, int workers) {
  LiftContext ctx = LiftContext::make(pr);
  AutRepStream probe(pr.G, coset_budget);
  u64 total = probe.candidate_count();
  if (workers <= 1) {
    std::vector<ModMatrix> out;
    for (u64 k = 0; k < total; ++k) {
      ModMatrix x = probe.pattern_at(k);
      if (!det_is_unit(x, pr.G.p)) continue;
      if (check_lift(x, ctx, ctx, /*require_automorphism=*/true)) out.push_back(std::move(x));
    }
    return out;
  }
  int nw = std::min<u64>(static_cast<u64>(workers), total ? total : 1);
  std::vector<std::vector<ModMatrix>> found(static_cast<size_t>(nw));
  std::vector<std::thread> threads;
  u64 chunk = (total + nw - 1) / nw;
  for (int t = 0; t < nw; ++t) {
    threads.emplace_back([&, t]() {
      AutRepStream local(pr.G, coset_budget);
      u64 lo = chunk * static_cast<u64>(t);
      u64 hi = std::min(total, lo + chunk);
      for (u64 k = lo; k < hi; ++k) {
        ModMatrix x = local.pattern_at(k);
        if (!det_is_unit(x, pr.G.p)) continue;
        if (check_lift(x, ctx, ctx, true)) found[static_cast<size_t>(t)].push_back(std::move(x));
      }
    });
  }
  for (auto& th : threads) th.join();
  std::vector<ModMatrix> out;
  for (auto& part : found)
    for (auto& x : part) out.push_back(std::move(x));
  return out;
}

AutReport aut_order(const CocyclePair& pr, u64 coset_budget, int workers) {
  AutReport rep;
  rep.lifting_reps = lifting_automorphism_reps(pr, coset_budget, workers);
  rep.lifting_order = rep.lifting_reps.size();
  rep.kernel_order = kernel_order(pr.G, pr.A);
  rep.total_order = checked_mul(rep.kernel_order, rep.lifting_order);
  return rep;
}

IsoResult iso_test(const CocyclePair& src, const CocyclePair& dst, u64 coset_budget, int workers, u64 verify_budget) {
  if (!(src.G == dst.G) || !(src.A == dst.A) || !(src.lambda == dst.lambda))
    throw std::invalid_argument("iso_test: pairs live on different (G, A)");
  LiftContext cs = LiftContext::make(src);
  LiftContext cd = LiftContext::make(dst);

  u64 total = 0;
  try {
    AutRepStream probe(src.G, coset_budget);
    total = probe.candidate_count();
  } catch (const BudgetExceeded& b) {
    return IsoResult{IsoResult::Verdict::inconclusive, std::nullopt,
                     "candidate count " + std::to_string(b.computed_count) + " exceeds the budget"};
  }

  auto finish = [&](const ModMatrix& x) -> IsoResult {
    ModMatrix y = find_compatible_y(x, cs, cd);
    // the induced endomorphism of A must be invertible for an isomorphism
    std::vector<std::vector<i64>> images;
    for (int u = 0; u < src.r(); ++u)
      images.push_back(mat_apply(mat_mod(y, src.coeff_mod()), embed_element(element_generator(src.A, u))));
    int dr = src.A.rank() ? src.A.max_exponent() : 1;
    Submodule yspan = Submodule::span(src.A.p, dr, src.r(), images);
    if (!(yspan == embedded_module(src.A)))
      throw InternalCheckError("iso_test: compatible endomorphism of A is not bijective", {}, {});
    LiftWitness w = build_lift(x, y, src, dst);
    if (w.source().order() <= verify_budget) {
      if (!verify_lift_exhaustive(w, verify_budget))
        throw InternalCheckError("iso_test: assembled lift failed exhaustive verification", {}, {});
    }
    return IsoResult{IsoResult::Verdict::witness, std::move(w), ""};
  };

  // the identity is the preferred witness whenever it works
  {
    i64 Jprime = src.G.rank() ? src.G.factor_modulus(src.G.rank() - 1) : src.G.p;
    ModMatrix id = ModMatrix::identity(src.n(), Jprime);
    if (check_lift(id, cs, cd, true)) return finish(id);
  }

  std::atomic<u64> best{~u64{0}};
  auto scan = [&](u64 lo, u64 hi) {
    AutRepStream local(src.G, coset_budget);
    for (u64 k = lo; k < hi; ++k) {
      if (best.load(std::memory_order_relaxed) < k) return;
      ModMatrix x = local.pattern_at(k);
      if (!det_is_unit(x, src.G.p)) continue;
      if (!check_lift(x, cs, cd, true)) continue;
      u64 cur = best.load(std::memory_order_relaxed);
      while (k < cur && !best.compare_exchange_weak(cur, k)) {
      }
      return;
    }
  };
  if (workers <= 1) {
    scan(0, total);
  } else {
    int nw = static_cast<int>(std::min<u64>(static_cast<u64>(workers), total ? total : 1));
    u64 chunk = (total + nw - 1) / nw;
    std::vector<std::thread> threads;
    for (int t = 0; t < nw; ++t) {
      u64 lo = chunk * static_cast<u64>(t);
      threads.emplace_back(scan, lo, std::min(total, lo + chunk));
    }
    for (auto& th : threads) th.join();
  }

  u64 k = best.load();
  if (k == ~u64{0}) return IsoResult{IsoResult::Verdict::no, std::nullopt, "no automorphism of G lifts"};

  AutRepStream probe(src.G, coset_budget);
  return finish(probe.pattern_at(k));
}

NormalizeResult normalize(const CocyclePair& pr) {
  i64 J = pr.coeff_mod();
  int dr = pr.A.rank() ? pr.A.max_exponent() : 1;
  i64 Jprime = pr.G.rank() ? pr.G.factor_modulus(pr.G.rank() - 1) : pr.G.p;
  ModMatrix idA = ModMatrix::identity(pr.r(), J);
  ModMatrix idG = ModMatrix::identity(pr.n(), Jprime);

  SmithResult snf = smith_normal_form(pr.a, pr.A.p, dr);

  // x acts on G, so it must lift to a valid automorphism matrix over Z/p^{m_n}
  ModMatrix xg = mat_mod(snf.x, Jprime);
  if (!is_automorphism_matrix(xg, pr.G)) return NormalizeResult{pr, idA, idG, false};
  auto xg_inv = mat_inverse(xg, pr.G.p);
  if (!xg_inv || !validate_hom(*xg_inv, pr.G, pr.G)) return NormalizeResult{pr, idA, idG, false};

  // y must act bijectively on the embedded copy of A
  std::vector<std::vector<i64>> images;
  for (int u = 0; u < pr.r(); ++u) images.push_back(mat_apply(snf.y, embed_element(element_generator(pr.A, u))));
  bool y_ok = true;
  for (const auto& v : images) y_ok = y_ok && is_embedded_vector(pr.A, v);
  if (y_ok) y_ok = Submodule::span(pr.A.p, dr, pr.r(), images) == embedded_module(pr.A);
  if (!y_ok) return NormalizeResult{pr, idA, idG, false};

  CocyclePair out = pushforward(snf.y, pullback_class(*xg_inv, pr));
  bool changed = !(out.a == pr.a) || !(out.b == pr.b);
  return NormalizeResult{std::move(out), snf.y, xg, changed};
}

}  // namespace centex
