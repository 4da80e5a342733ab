#include <doctest.h>

#include "centex/lifting.hpp"
#include "centex/oracle.hpp"
#include "helpers.hpp"

using namespace centex;
using namespace centex::testing;

namespace {

ModMatrix identity_over(const GroupShape& G) {
  return ModMatrix::identity(G.rank(), G.rank() ? G.factor_modulus(G.rank() - 1) : G.p);
}

std::vector<ModMatrix> all_aut_reps(const GroupShape& G) {
  std::vector<ModMatrix> out;
  AutRepStream stream(G);
  while (auto x = stream.next()) out.push_back(std::move(*x));
  return out;
}

}  // namespace

TEST_CASE("annihilator computation") {
  // invertible one-column data: trivial annihilator
  LiftContext heis = LiftContext::make(heisenberg3());
  CHECK(heis.annihilator.size() == 1);

  // the worked three-generator example: <(p^{d_1}, 0, 0), (0, 0, 1)>
  for (i64 p : {2, 3}) {
    GroupShape G(p, {2, 2, 2});
    GroupShape A(p, {1, 2});
    i64 J = p * p;
    // rows scaled by diag(p^{d_r - d_u}): b = [[p,0,0],[0,1,0]]
    CocyclePair pr = make_pair(G, A, {{0, 0, 0}, {0, 0, 0}}, {{p, 0, 0}, {0, 1, 0}}, PairOrder::reversed);
    LiftContext ctx = LiftContext::make(pr);
    CHECK(ctx.annihilator.contains(std::vector<i64>{p, 0, 0}));
    CHECK(ctx.annihilator.contains(std::vector<i64>{0, 0, 1}));
    CHECK(ctx.annihilator.contains(std::vector<i64>{0, 0, p}));
    CHECK_FALSE(ctx.annihilator.contains(std::vector<i64>{0, 1, 0}));
    CHECK_FALSE(ctx.annihilator.contains(std::vector<i64>{1, 0, 0}));
    CHECK(ctx.annihilator.size() == static_cast<u64>(p) * static_cast<u64>(J));
    (void)J;
  }

  // a zero column contributes its standard basis vector
  CocyclePair zc = make_pair(GroupShape(2, {1, 1, 1}), GroupShape(2, {1}), {{0, 0, 0}}, {{1, 0, 1}});
  LiftContext zctx = LiftContext::make(zc);
  CHECK(zctx.annihilator.contains(std::vector<i64>{0, 1, 0}));
}

TEST_CASE("explicit generators agree with the kernel on random diamond data") {
  std::mt19937_64 rng(139);
  for (auto& [p, m, d] : std::vector<std::tuple<i64, std::vector<int>, std::vector<int>>>{
           {2, {1, 1}, {1}}, {2, {1, 2, 2}, {2}}, {3, {2, 2}, {2}}, {2, {1, 1, 1}, {1, 1}},
           {3, {1, 1, 1}, {1, 1}}, {2, {2, 2, 2}, {1, 2}}}) {
    for (int trial = 0; trial < 8; ++trial) {
      CocyclePair pr = random_pair(rng, p, m, d, true);
      // make() asserts generator-vs-kernel agreement internally
      CHECK_NOTHROW(LiftContext::make(pr));
    }
  }
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS(LiftContext::make(make_pair(GroupShape(3, {2}), GroupShape(3, {1}), {{0}},
                                              std::vector<std::vector<i64>>{{}})),
                  std::invalid_argument);
  CocyclePair nondiamond = make_pair(GroupShape(3, {1, 1}), GroupShape(3, {1}), {{0, 0}}, {{0}});
  CHECK_THROWS_AS(LiftContext::make(nondiamond), std::invalid_argument);
}

TEST_CASE("lifting criterion on the worked order-8 groups") {
  CocyclePair q8 = quaternion8();
  LiftContext qc = LiftContext::make(q8);
  auto reps = all_aut_reps(q8.G);
  REQUIRE(reps.size() == 6);
  for (const auto& x : reps) CHECK(check_lift(x, qc, qc, true));

  CocyclePair d4 = dihedral8();
  LiftContext dc = LiftContext::make(d4);
  ModMatrix shear = ModMatrix::from_rows({{1, 1}, {0, 1}}, 2);
  CHECK_FALSE(check_lift(shear, dc, dc, true));
  CHECK(check_lift(identity_over(d4.G), dc, dc, true));
  u64 pass = 0;
  for (const auto& x : reps)
    if (check_lift(x, dc, dc, true)) ++pass;
  CHECK(pass == 2);
}

TEST_CASE("compatible endomorphism of A") {
  CocyclePair h = heisenberg3();
  LiftContext hc = LiftContext::make(h);
  ModMatrix id = identity_over(h.G);
  ModMatrix y0 = find_compatible_y(id, hc, hc);
  CHECK(mat_mod(y0, 3) == ModMatrix::identity(1, 3));

  std::mt19937_64 rng(149);
  for (int trial = 0; trial < 20; ++trial) {
    ModMatrix x = random_automorphism_matrix(rng, h.G);
    if (!check_lift(x, hc, hc, true)) continue;
    ModMatrix y = find_compatible_y(x, hc, hc);
    i64 det = sub_mod(mul_mod(x.at(0, 0), x.at(1, 1), 3), mul_mod(x.at(0, 1), x.at(1, 0), 3), 3);
    CHECK(y.at(0, 0) == det);
  }

  CocyclePair q8 = quaternion8();
  LiftContext qc = LiftContext::make(q8);
  ModMatrix swap = ModMatrix::from_rows({{0, 1}, {1, 0}}, 2);
  ModMatrix yq = find_compatible_y(swap, qc, qc);
  CHECK(yq.at(0, 0) == 1);
}

TEST_CASE("building explicit lifts") {
  // identity data produces the identity map
  CocyclePair h = heisenberg3();
  LiftWitness wid = build_lift(identity_over(h.G), ModMatrix::identity(1, 3), h, h);
  ExtGroup E(h);
  for (u64 k = 0; k < E.order(); ++k) CHECK(wid.apply(E.decode(k)) == E.decode(k));
  CHECK(verify_lift_exhaustive(wid));

  // a shear on the base of the order-27 group
  ModMatrix x = ModMatrix::from_rows({{1, 1}, {0, 1}}, 3);
  LiftWitness wsh = build_lift(x, ModMatrix::identity(1, 3), h, h);
  CHECK(verify_lift_exhaustive(wsh));

  // the swap automorphism upstairs on the quaternion group
  CocyclePair q8 = quaternion8();
  ModMatrix swap = ModMatrix::from_rows({{0, 1}, {1, 0}}, 2);
  LiftWitness wq = build_lift(swap, ModMatrix::identity(1, 2), q8, q8);
  CHECK(verify_lift_exhaustive(wq));
}

TEST_CASE("lifted classes of the worked groups") {
  CHECK(lifting_automorphism_reps(heisenberg3()).size() == 48);
  CHECK(lifting_automorphism_reps(dihedral8()).size() == 2);
  CHECK(lifting_automorphism_reps(quaternion8()).size() == 6);
}

TEST_CASE("kernel order formula") {
  CHECK(kernel_order(GroupShape(3, {1, 1}), GroupShape(3, {1})) == 9);
  CHECK(kernel_order(GroupShape(2, {1, 1}), GroupShape(2, {1})) == 4);
  CHECK(kernel_order(GroupShape(2, {}), GroupShape(2, {1})) == 1);
  // a base factor exceeding the top exponent of A contributes twice
  CHECK(kernel_order(GroupShape(3, {1, 2}), GroupShape(3, {1})) == 81);
}

TEST_CASE("full reports against the brute-force count") {
  // every base exponent equal to the top exponent of A: the composed formula
  // is exact, including torsion annihilators and rank-2 A
  std::mt19937_64 rng(151);
  struct Fixed {
    i64 p;
    std::vector<int> m, d;
    std::vector<std::vector<i64>> a, b;
  };
  std::vector<Fixed> fixed = {
      {3, {1, 1}, {1}, {{0, 0}}, {{1}}},          // order 27, total 432
      {2, {1, 1}, {1}, {{0, 0}}, {{1}}},          // dihedral, 8
      {2, {1, 1}, {1}, {{1, 1}}, {{1}}},          // quaternion, 24
      {3, {1, 1}, {1}, {{1, 0}}, {{1}}},          // exponent-9 extraspecial, 54
      {2, {2, 2}, {2}, {{1, 2}}, {{3}}},          // order 64
      {2, {1, 2, 2}, {2}, {{0, 3, 2}}, {{2, 2, 1}}},  // order 128, strict/relaxed gap
      {2, {1, 2, 2}, {2}, {{2, 1, 0}}, {{2, 0, 1}}},  // order 128
      {2, {1, 1, 1}, {1, 1}, {{1, 0, 1}, {0, 1, 1}}, {{1, 0, 0}, {0, 1, 0}}},  // rank-2 A, order 32
  };
  for (const auto& f : fixed) {
    CocyclePair pr = make_pair(GroupShape(f.p, f.m), GroupShape(f.p, f.d), f.a, f.b);
    AutReport rep = aut_order(pr);
    u64 brute = brute_aut_count(build_table(pr));
    CHECK(rep.total_order == brute);
  }
  for (auto& [p, m, d] : std::vector<std::tuple<i64, std::vector<int>, std::vector<int>>>{
           {3, {1, 1}, {1}}, {2, {1, 1}, {1}}, {2, {1, 2, 2}, {2}}, {2, {1, 1, 1}, {1, 1}}, {2, {2, 2}, {2}}}) {
    for (int trial = 0; trial < 3; ++trial) {
      CocyclePair pr = random_pair(rng, p, m, d, true);
      AutReport rep = aut_order(pr);
      u64 brute = brute_aut_count(build_table(pr));
      CHECK(rep.total_order == brute);
    }
  }
}

TEST_CASE("bases with exponent above the center factor") {
  // when the base has a factor of larger exponent than A, the lifting-class
  // count composes with |hom(G, A)|; the kernel formula absorbs exactly the
  // |hom(G, p^{d_r} G)| translations of the base
  for (auto& [a_row, expected] : std::vector<std::pair<std::vector<i64>, u64>>{
           {{0, 0}, 972}, {{0, 1}, 162}, {{1, 1}, 162}}) {
    CocyclePair pr = make_pair(GroupShape(3, {1, 2}), GroupShape(3, {1}), {a_row}, {{1}});
    u64 brute = brute_aut_count(build_table(pr));
    CHECK(brute == expected);
    auto reps = lifting_automorphism_reps(pr);
    CHECK(hom_order(pr.G, pr.A) * reps.size() == brute);
    AutReport rep = aut_order(pr);
    u64 translations = hom_order(pr.G, GroupShape(3, {1}));  // p^{d_r} G is cyclic of order 3 here
    CHECK(rep.total_order == brute * translations);
    CHECK(rep.kernel_order == hom_order(pr.G, pr.A) * translations);
  }
}

TEST_CASE("isomorphism search") {
  CocyclePair q8 = quaternion8();
  IsoResult self = iso_test(q8, q8);
  REQUIRE(self.verdict == IsoResult::Verdict::witness);
  CHECK(self.witness->x() == identity_over(q8.G));
  CHECK(verify_lift_exhaustive(*self.witness));

  IsoResult no = iso_test(dihedral8(), quaternion8());
  CHECK(no.verdict == IsoResult::Verdict::no);
  CHECK(brute_iso(build_table(dihedral8()), build_table(quaternion8())) == false);

  IsoResult tight = iso_test(heisenberg3(), heisenberg3(), 10);
  CHECK(tight.verdict == IsoResult::Verdict::inconclusive);

  CHECK_THROWS_AS(iso_test(heisenberg3(), quaternion8()), std::invalid_argument);
}

TEST_CASE("normalization") {
  // exponent-one data diagonalizes to zeros and ones
  CocyclePair q8 = quaternion8();
  NormalizeResult nq = normalize(q8);
  CHECK(nq.pair.a.at(0, 0) == 1);
  CHECK(nq.pair.a.at(0, 1) == 0);
  CHECK(rem(nq.pair.b.at(0, 0), 2) == 1);  // the commutator column stays a unit
  IsoResult wit = iso_test(q8, nq.pair);
  CHECK(wit.verdict == IsoResult::Verdict::witness);

  // already-diagonal data is fixed up to units
  CocyclePair diag = make_pair(GroupShape(3, {1, 1}), GroupShape(3, {1}), {{1, 0}}, {{1}});
  NormalizeResult nd = normalize(diag);
  CHECK(nd.pair.a.at(0, 0) == 1);
  CHECK(nd.pair.a.at(0, 1) == 0);

  std::mt19937_64 rng(157);
  for (auto& [p, m, d] : std::vector<std::tuple<i64, std::vector<int>, std::vector<int>>>{
           {2, {1, 1}, {1}}, {3, {1, 1}, {1}}, {2, {2, 2}, {2}}, {2, {1, 1, 1}, {1, 1}}}) {
    for (int trial = 0; trial < 5; ++trial) {
      CocyclePair pr = random_pair(rng, p, m, d, true);
      NormalizeResult res = normalize(pr);
      IsoResult w = iso_test(pr, res.pair);
      CHECK(w.verdict == IsoResult::Verdict::witness);
      CHECK(verify_lift_exhaustive(*w.witness));
    }
  }
}

TEST_CASE("criterion is constant on matrix classes") {
  // multiplying by a matrix congruent to the identity in each row modulus
  // does not change the decision
  std::mt19937_64 rng(163);
  for (auto& [p, m, d] : std::vector<std::tuple<i64, std::vector<int>, std::vector<int>>>{
           {3, {1, 2}, {1}}, {2, {1, 2, 2}, {2}}, {2, {2, 2}, {2}}}) {
    CocyclePair pr = random_pair(rng, p, m, d, true);
    LiftContext ctx = LiftContext::make(pr);
    GroupShape G = pr.G;
    i64 top = G.factor_modulus(G.rank() - 1);
    for (int trial = 0; trial < 40; ++trial) {
      ModMatrix x = random_automorphism_matrix(rng, G);
      ModMatrix z = ModMatrix::identity(G.rank(), top);
      for (int i = 0; i < G.rank(); ++i)
        for (int j = 0; j < G.rank(); ++j) {
          i64 step = G.factor_modulus(i);
          i64 room = top / step;
          if (room > 1) z.at(i, j) = rem(z.at(i, j) + step * rand_below(rng, room), top);
        }
      ModMatrix xz = mat_mul(x, z);
      if (!validate_hom(xz, G, G)) continue;  // the perturbation must stay admissible
      CHECK(check_lift(x, ctx, ctx, true) == check_lift(xz, ctx, ctx, true));
    }
  }
}

TEST_CASE("decision is independent of the solution used for w") {
  std::mt19937_64 rng(167);
  for (auto& [p, m, d] : std::vector<std::tuple<i64, std::vector<int>, std::vector<int>>>{
           {2, {1, 2, 2}, {2}}, {3, {2, 2}, {2}}, {2, {1, 1, 1}, {1, 1}}}) {
    CocyclePair pr = random_pair(rng, p, m, d, true);
    LiftContext c1 = LiftContext::make(pr);
    // perturb w by annihilator elements, column by column
    ModMatrix w2 = c1.w;
    const ModMatrix& basis = c1.annihilator.basis();
    for (int col = 0; col < w2.cols; ++col)
      for (int row = 0; row < basis.rows; ++row) {
        if (rng() % 2) continue;
        for (int k = 0; k < w2.rows; ++k) w2.at(k, col) = add_mod(w2.at(k, col), basis.at(row, k), w2.mod);
      }
    LiftContext c2 = LiftContext::make_with_solution(pr, w2);
    for (int trial = 0; trial < 60; ++trial) {
      ModMatrix x = random_automorphism_matrix(rng, pr.G);
      CHECK(check_lift(x, c1, c1, true) == check_lift(x, c2, c2, true));
    }
  }
}

TEST_CASE("zero a-data lifts every base automorphism for odd primes") {
  for (auto& [p, m, d] : std::vector<std::tuple<i64, std::vector<int>, std::vector<int>>>{
           {3, {1, 2}, {1}}, {3, {1, 1}, {1}}, {5, {1, 1}, {1}}}) {
    GroupShape G(p, m), A(p, d);
    int nchk = G.rank() * (G.rank() - 1) / 2;
    CocyclePair pr = make_pair(G, A, std::vector<std::vector<i64>>(A.rank(), std::vector<i64>(G.rank(), 0)),
                               std::vector<std::vector<i64>>(A.rank(), std::vector<i64>(nchk, 1)));
    if (!is_diamond(pr)) continue;
    CHECK(lifting_automorphism_reps(pr).size() == count_automorphisms(G));
  }
}

TEST_CASE("two-generator closed form for the lifted classes") {
  // unit w-data on a two-factor base: the passing matrices are cut out by
  // closed-form congruences in the matrix entries
  auto run_homogeneous = [](i64 p, int m, i64 w1, i64 w2) {
    GroupShape G(p, {m, m}), A(p, {m});
    i64 J = G.factor_modulus(0);
    CocyclePair pr = make_pair(G, A, {{w1, w2}}, {{1}});
    LiftContext ctx = LiftContext::make(pr);
    AutRepStream stream(G);
    u64 seen = 0;
    while (auto x = stream.next()) {
      bool line1 = sub_mod(x->at(0, 1), mul_mod(mul_mod(inverse_unit(w1, J), w2, J), sub_mod(x->at(0, 0), 1, J), J),
                           J) == 0;
      bool line2 = sub_mod(x->at(1, 0), mul_mod(mul_mod(w1, inverse_unit(w2, J), J), sub_mod(x->at(1, 1), 1, J), J),
                           J) == 0;
      CHECK(check_lift(*x, ctx, ctx, true) == (line1 && line2));
      ++seen;
    }
    CHECK(seen > 0);
  };
  run_homogeneous(3, 1, 1, 1);
  run_homogeneous(3, 1, 2, 1);
  run_homogeneous(5, 1, 1, 1);
  run_homogeneous(5, 1, 2, 3);

  // mixed exponents weight the congruences by the carry action: the divided
  // lower-left entry follows the diagonal and the top-left entry is pinned
  {
    GroupShape G(3, {1, 2}), A(3, {1});
    CocyclePair pr = make_pair(G, A, {{1, 1}}, {{1}});
    LiftContext ctx = LiftContext::make(pr);
    AutRepStream stream(G);
    u64 pass = 0, seen = 0;
    while (auto x = stream.next()) {
      i64 y21 = rem(x->at(1, 0) / 3, 3);
      bool cond = rem(x->at(0, 0), 3) == 1 && y21 == rem(x->at(1, 1) - 1, 3);
      bool lifts = check_lift(*x, ctx, ctx, true);
      CHECK(lifts == cond);
      pass += lifts;
      ++seen;
    }
    CHECK(seen == 108);
    CHECK(pass == 18);
    // cross-checked against the table count: 9 * 18
    CHECK(brute_aut_count(build_table(pr)) == hom_order(G, A) * pass);
  }
}

TEST_CASE("three-generator valuation conditions") {
  // base J(m,m,m), center J(d1,d2), commutator data [[p^{d2-d1},0,0],[0,1,0]]
  // in the reversed coordinate numeration; membership is equivalent to
  // explicit valuation bounds on compound-matrix entries plus the residual
  auto run = [](i64 p, int m, int d1, int d2) {
    GroupShape G(p, {m, m, m}), A(p, {d1, d2});
    i64 J = A.factor_modulus(1);
    int dr = d2;
    i64 scale = 1;
    for (int k = 0; k < dr - d1; ++k) scale *= p;
    CocyclePair pr = make_pair(G, A, std::vector<std::vector<i64>>(2, std::vector<i64>(3, 0)),
                               {{scale, 0, 0}, {0, 1, 0}}, PairOrder::reversed);
    // put nonzero admissible a-data through w
    ModMatrix w(3, 3, J);
    w.at(0, 0) = 1;
    w.at(2, 1) = scale;
    CocyclePair pr2 = pr;
    pr2.a = mat_mul(pr.b, w);
    LiftContext ctx = LiftContext::make(pr2);
    AutRepStream stream(G, 1u << 21);
    while (auto x = stream.next()) {
      ModMatrix sh = mat_mod(second_compound(*x, pr2.lambda), J);
      ModMatrix sigma = carry_action(*x, G, J);
      ModMatrix theta = parity_correction(*x, G, pr2.lambda, J);
      ModMatrix M = mat_add(mat_sub(mat_mul(ctx.w, sigma), mat_mul(sh, ctx.w)), theta);
      bool cond = valuation_capped(sh.at(1, 0), p, dr) >= d2 - d1 &&
                  valuation_capped(sh.at(0, 2), p, dr) >= d1 &&
                  valuation_capped(sh.at(1, 2), p, dr) >= d2;
      for (int u = 0; u < 2 && cond; ++u) {
        int du = u == 0 ? d1 : d2;
        for (int j = 0; j < 3; ++j) cond = cond && valuation_capped(M.at(u, j), p, dr) >= du;
      }
      CHECK(check_lift(*x, ctx, ctx, true) == cond);
    }
  };
  run(2, 1, 1, 1);
  run(2, 2, 1, 2);
  run(3, 1, 1, 1);
}
