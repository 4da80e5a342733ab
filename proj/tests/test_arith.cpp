#include <doctest.h>

#include <random>

#include "centex/arith.hpp"

using namespace centex;

TEST_CASE("canonical remainder") {
  CHECK(rem(-1, 4) == 3);
  CHECK(rem(7, 4) == 3);
  CHECK(rem(0, 9) == 0);
  CHECK_THROWS_AS(rem(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(rem(1, -3), std::invalid_argument);
}

TEST_CASE("remainder division identity, including negatives") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 2000; ++trial) {
    i64 i = static_cast<i64>(rng() % 4000000) - 2000000;
    i64 q = 1 + static_cast<i64>(rng() % 1000);
    i64 r = rem(i, q);
    CHECK(r >= 0);
    CHECK(r < q);
    i64 quo = (i - r) / q;
    CHECK(r + q * quo == i);
  }
}

TEST_CASE("valuations") {
  CHECK(p_valuation(8, ResidueRing(2, 5)) == 3);
  CHECK(p_valuation(5, ResidueRing(3, 4)) == 0);
  CHECK(p_valuation(0, ResidueRing(2, 4)) == 4);  // capped convention
  CHECK(p_valuation(48, ResidueRing(2, 3)) == 3);
}

TEST_CASE("valuation of a product") {
  std::mt19937_64 rng(42);
  for (i64 p : {2, 3, 5}) {
    for (int e = 1; e <= 4; ++e) {
      ResidueRing ring(p, e);
      for (int trial = 0; trial < 500; ++trial) {
        i64 a = 1 + static_cast<i64>(rng() % static_cast<u64>(ring.modulus - 1));
        i64 b = 1 + static_cast<i64>(rng() % static_cast<u64>(ring.modulus - 1));
        if (rem(a, ring.modulus) == 0 || rem(b, ring.modulus) == 0) continue;
        int lhs = p_valuation(mul_mod(a, b, ring.modulus), ring);
        int rhs = std::min(ring.e, p_valuation(a, ring) + p_valuation(b, ring));
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("carry bit") {
  for (i64 p : {2, 3, 5}) {
    for (int m = 1; m <= 3; ++m) {
      i64 q = 1;
      for (int k = 0; k < m; ++k) q *= p;
      CHECK(carry_floor(1, q - 1, q) == 1);
    }
  }
  CHECK(carry_floor(0, 17, 100) == 0);
  CHECK(carry_floor(3, 3, 4) == 1);
  CHECK(carry_floor(-1, 1, 4) == 1);  // <-1> = 3, 3 + 1 = 4
}

TEST_CASE("carry sum identity over a full period") {
  // sum over i in [0, q) of [( <i k> + k ) / q] equals k
  for (i64 q = 1; q <= 64; ++q) {
    for (i64 k = 0; k < q; ++k) {
      i64 sum = 0;
      for (i64 i = 0; i < q; ++i) sum += carry_floor(i * k, k, q);
      CHECK(sum == k);
    }
  }
}

TEST_CASE("residue ring construction") {
  CHECK(ResidueRing(2, 5).modulus == 32);
  CHECK_THROWS_AS(ResidueRing(6, 2), std::invalid_argument);
  CHECK_THROWS_AS(ResidueRing(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(ResidueRing(2, 40), std::invalid_argument);  // exceeds the modulus bound
}

TEST_CASE("unit inverses") {
  for (i64 q : {4, 9, 27, 25}) {
    i64 p = q % 2 == 0 ? 2 : (q % 3 == 0 ? 3 : 5);
    for (i64 a = 1; a < q; ++a) {
      if (a % p == 0) continue;
      CHECK(mul_mod(a, inverse_unit(a, q), q) == 1);
    }
  }
  CHECK_THROWS_AS(inverse_unit(2, 4), std::invalid_argument);
}

TEST_CASE("checked order arithmetic") {
  CHECK(checked_pow(2, 10) == 1024);
  CHECK_THROWS_AS(checked_pow(2, 70), std::overflow_error);
  CHECK_THROWS_AS(checked_mul(u64{1} << 40, u64{1} << 40), std::overflow_error);
}
