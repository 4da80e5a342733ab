#pragma once

#include <cstdint>
#include <stdexcept>

namespace centex {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;

/// The ring Z/p^e for a small prime p. All residues are kept canonical in
/// [0, p^e); the modulus is bounded so that any product of two residues fits
/// in a signed 64-bit integer.
struct ResidueRing {
  i64 p = 2;
  int e = 1;
  i64 modulus = 2;

  static constexpr i64 kMaxModulus = i64{1} << 31;

  ResidueRing() = default;
  ResidueRing(i64 prime, int exponent);
};

bool is_prime(i64 n);

/// Canonical remainder in [0, q); correct for negative i. Requires q > 0.
i64 rem(i64 i, i64 q);

/// The carry [(⟨s⟩_q + ⟨t⟩_q) / q], always 0 or 1.
int carry_floor(i64 s, i64 t, i64 q);

/// p-adic valuation of k truncated to [0, cap]; the valuation of 0 is cap.
int valuation_capped(i64 k, i64 p, int cap);

/// Valuation within a ring: min(e, v_p(k)), with v(0) = e.
int p_valuation(i64 k, const ResidueRing& ring);

i64 add_mod(i64 a, i64 b, i64 q);
i64 sub_mod(i64 a, i64 b, i64 q);
i64 mul_mod(i64 a, i64 b, i64 q);
i64 pow_mod(i64 a, u64 k, i64 q);

/// Inverse of a unit modulo q (q a prime power). Throws if a is not a unit.
i64 inverse_unit(i64 a, i64 q);

/// u64 product with overflow detection, for group-order bookkeeping.
u64 checked_mul(u64 a, u64 b);

/// p^k as u64 with overflow detection.
u64 checked_pow(u64 p, u64 k);

}  // namespace centex
