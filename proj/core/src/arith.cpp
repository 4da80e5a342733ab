#include "centex/arith.hpp"

#include <limits>
#include <string>

namespace centex {

bool is_prime(i64 n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (i64 d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

ResidueRing::ResidueRing(i64 prime, int exponent) : p(prime), e(exponent) {
  if (!is_prime(p)) throw std::invalid_argument("ResidueRing: p = " + std::to_string(p) + " is not prime");
  if (e < 1) throw std::invalid_argument("ResidueRing: exponent must be >= 1");
  modulus = 1;
  for (int i = 0; i < e; ++i) {
    if (modulus > kMaxModulus / p) throw std::invalid_argument("ResidueRing: p^e exceeds the supported bound");
    modulus *= p;
  }
}

i64 rem(i64 i, i64 q) {
  if (q <= 0) throw std::invalid_argument("rem: modulus must be positive");
  i64 r = i % q;
  return r < 0 ? r + q : r;
}

int carry_floor(i64 s, i64 t, i64 q) {
  return rem(s, q) + rem(t, q) >= q ? 1 : 0;
}

int valuation_capped(i64 k, i64 p, int cap) {
  if (k == 0) return cap;
  if (k < 0) k = -k;
  int v = 0;
  while (v < cap && k % p == 0) {
    k /= p;
    ++v;
  }
  return v;
}

int p_valuation(i64 k, const ResidueRing& ring) {
  return valuation_capped(rem(k, ring.modulus), ring.p, ring.e);
}

i64 add_mod(i64 a, i64 b, i64 q) { return rem(rem(a, q) + rem(b, q), q); }
i64 sub_mod(i64 a, i64 b, i64 q) { return rem(rem(a, q) - rem(b, q), q); }
i64 mul_mod(i64 a, i64 b, i64 q) { return rem(rem(a, q) * rem(b, q), q); }

i64 pow_mod(i64 a, u64 k, i64 q) {
  i64 r = rem(1, q);
  a = rem(a, q);
  while (k) {
    if (k & 1) r = mul_mod(r, a, q);
    a = mul_mod(a, a, q);
    k >>= 1;
  }
  return r;
}

i64 inverse_unit(i64 a, i64 q) {
  a = rem(a, q);
  i64 old_r = a, r = q;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 quo = old_r / r;
    i64 tmp = old_r - quo * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quo * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1 && old_r != -1) throw std::invalid_argument("inverse_unit: element is not a unit");
  if (old_r == -1) old_s = -old_s;
  return rem(old_s, q);
}

u64 checked_mul(u64 a, u64 b) {
  if (a != 0 && b > std::numeric_limits<u64>::max() / a) {
    throw std::overflow_error("checked_mul: order computation overflows 64 bits");
  }
  return a * b;
}

u64 checked_pow(u64 p, u64 k) {
  u64 r = 1;
  for (u64 i = 0; i < k; ++i) r = checked_mul(r, p);
  return r;
}

}  // namespace centex
