#include <doctest.h>

#include "centex/lifting.hpp"
#include "centex/oracle.hpp"
#include "helpers.hpp"

using namespace centex;
using namespace centex::testing;

namespace {

// hand-built dihedral table of order 8: elements r^i s^j, r^4 = s^2 = 1,
// s r s = r^{-1}; index = i + 4 j
CayleyTable dihedral_by_hand() {
  CayleyTable t;
  t.order = 8;
  t.mul.assign(64, 0);
  auto idx = [](int i, int j) { return i + 4 * j; };
  for (int i1 = 0; i1 < 4; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < 4; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          // (r^i1 s^j1)(r^i2 s^j2) = r^{i1 + (-1)^{j1} i2} s^{j1+j2}
          int i = ((i1 + (j1 ? -i2 : i2)) % 4 + 4) % 4;
          int j = (j1 + j2) % 2;
          t.mul[static_cast<size_t>(idx(i1, j1)) * 8 + idx(i2, j2)] = static_cast<u32>(idx(i, j));
        }
  t.inv.assign(8, 0);
  for (u32 x = 0; x < 8; ++x)
    for (u32 y = 0; y < 8; ++y)
      if (t.at(x, y) == 0) t.inv[x] = y;
  t.order_of.assign(8, 0);
  for (u32 x = 0; x < 8; ++x) {
    u32 k = x, o = 1;
    while (k != 0) {
      k = t.at(k, x);
      ++o;
    }
    t.order_of[x] = o;
  }
  t.generators = {idx(1, 0) < 0 ? 0u : static_cast<u32>(idx(1, 0)), static_cast<u32>(idx(0, 1))};
  return t;
}

// quaternion table on {1, -1, i, -i, j, -j, k, -k}, indexed in that order
CayleyTable quaternion_by_hand() {
  // encode q = (sign, axis) with axis 0 = 1, 1 = i, 2 = j, 3 = k
  auto mulq = [](int s1, int a1, int s2, int a2) {
    static const int axis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    return std::make_pair(s1 * s2 * sign[a1][a2], axis[a1][a2]);
  };
  auto idx = [](int s, int a) { return 2 * a + (s == 1 ? 0 : 1); };
  CayleyTable t;
  t.order = 8;
  t.mul.assign(64, 0);
  for (int a1 = 0; a1 < 4; ++a1)
    for (int s1 : {1, -1})
      for (int a2 = 0; a2 < 4; ++a2)
        for (int s2 : {1, -1}) {
          auto [s, a] = mulq(s1, a1, s2, a2);
          t.mul[static_cast<size_t>(idx(s1, a1)) * 8 + idx(s2, a2)] = static_cast<u32>(idx(s, a));
        }
  t.inv.assign(8, 0);
  for (u32 x = 0; x < 8; ++x)
    for (u32 y = 0; y < 8; ++y)
      if (t.at(x, y) == 0) t.inv[x] = y;
  t.order_of.assign(8, 0);
  for (u32 x = 0; x < 8; ++x) {
    u32 k = x, o = 1;
    while (k != 0) {
      k = t.at(k, x);
      ++o;
    }
    t.order_of[x] = o;
  }
  t.generators = {static_cast<u32>(idx(1, 1)), static_cast<u32>(idx(1, 2))};  // i and j
  return t;
}

}  // namespace

TEST_CASE("table construction") {
  CayleyTable h = build_table(heisenberg3());
  CHECK(h.order == 27);
  CayleyTable d4 = build_table(dihedral8());
  CHECK(d4.order == 8);
  auto census_d4 = element_order_census(d4);
  CHECK(census_d4[1] == 1);
  CHECK(census_d4[2] == 5);
  CHECK(census_d4[4] == 2);
  CayleyTable q8 = build_table(quaternion8());
  auto census_q8 = element_order_census(q8);
  CHECK(census_q8[1] == 1);
  CHECK(census_q8[2] == 1);  // unique involution
  CHECK(census_q8[4] == 6);

  CHECK_THROWS_AS(build_table(heisenberg3(), 10), BudgetExceeded);
}

TEST_CASE("tables match the classical models") {
  CHECK(brute_iso(build_table(dihedral8()), dihedral_by_hand()));
  CHECK(brute_iso(build_table(quaternion8()), quaternion_by_hand()));
  CHECK_FALSE(brute_iso(build_table(dihedral8()), quaternion_by_hand()));
}

TEST_CASE("automorphism counts of the worked groups") {
  CHECK(brute_aut_count(build_table(dihedral8())) == 8);
  CHECK(brute_aut_count(build_table(quaternion8())) == 24);
  CHECK(brute_aut_count(build_table(heisenberg3())) == 432);
}

TEST_CASE("isomorphism search on tables") {
  CayleyTable q8 = build_table(quaternion8());
  CHECK(brute_iso(q8, q8));
  CHECK_FALSE(brute_iso(build_table(dihedral8()), q8));

  // a transported pair gives an isomorphic group
  CocyclePair h = heisenberg3();
  NormalizeResult n = normalize(make_pair(GroupShape(3, {1, 1}), GroupShape(3, {1}), {{2, 1}}, {{1}}));
  CHECK(brute_iso(build_table(make_pair(GroupShape(3, {1, 1}), GroupShape(3, {1}), {{2, 1}}, {{1}})),
                  build_table(n.pair)));
  (void)h;
}

TEST_CASE("cohomology counting against the formula") {
  CHECK(brute_h2_count(GroupShape(2, {1, 1}), GroupShape(2, {1})) == 8);
  CHECK(brute_h2_count(GroupShape(2, {}), GroupShape(2, {1})) == 1);
  for (i64 p : {2, 3}) CHECK(brute_h2_count(GroupShape(p, {1}), GroupShape(p, {1})) == static_cast<u64>(p));

  // sweep all shapes with |G| <= 16 and |A| <= 4
  std::vector<std::vector<int>> gshapes2{{1}, {2}, {3}, {4}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {1, 1, 1}, {1, 1, 2}, {1, 1, 1, 1}};
  std::vector<std::vector<int>> ashapes2{{1}, {2}, {1, 1}};
  for (const auto& gm : gshapes2)
    for (const auto& am : ashapes2) {
      GroupShape G(2, gm), A(2, am);
      CHECK(brute_h2_count(G, A) == h2_order(G, A));
    }
  std::vector<std::vector<int>> gshapes3{{1}, {2}, {1, 1}};
  for (const auto& gm : gshapes3) {
    GroupShape G(3, gm), A(3, {1});
    CHECK(brute_h2_count(G, A) == h2_order(G, A));
  }
  CHECK_THROWS_AS(brute_h2_count(GroupShape(2, {2, 2, 2}), GroupShape(2, {1})), BudgetExceeded);
}

TEST_CASE("tables round-trip through data recovery") {
  std::mt19937_64 rng(173);
  for (auto& [p, m, d] : std::vector<std::tuple<i64, std::vector<int>, std::vector<int>>>{
           {2, {1, 2}, {1}}, {3, {1, 1}, {1}}, {2, {1, 1, 1}, {1, 1}}}) {
    for (int trial = 0; trial < 5; ++trial) {
      CocyclePair pr = random_pair(rng, p, m, d, false);
      ExtGroup E(pr);
      CocyclePair rec = E.recover_pair();
      CayleyTable t1 = build_table(pr);
      CayleyTable t2 = build_table(rec);
      CHECK(t1.mul == t2.mul);
    }
  }
}
