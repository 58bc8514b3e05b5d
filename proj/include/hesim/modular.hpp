/*
 * Copyright 2026 The hesim Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HESIM_MODULAR_HPP
#define HESIM_MODULAR_HPP

#include <array>

#include "hesim/common.hpp"

namespace hesim {

inline u64 add_mod(u64 a, u64 b, u64 q) {
  u64 s = a + b;  // q < 2^63, no overflow
  return s >= q ? s - q : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 q) {
  return a >= b ? a - b : a + q - b;
}

inline u64 neg_mod(u64 a, u64 q) { return a == 0 ? 0 : q - a; }

// Barrett reduction of a 128-bit value modulo q, with mu = floor(2^128 / q)
// split into two 64-bit words. One conditional correction suffices for
// q < 2^63.
struct BarrettReducer {
  u64 q = 0;
  u64 mu_hi = 0;
  u64 mu_lo = 0;

  BarrettReducer() = default;
  explicit BarrettReducer(u64 modulus) : q(modulus) {
    // floor(2^128 / q) computed by long division of 2^128 - 1, then adjusting.
    u128 numerator = ~u128{0};
    u128 ratio = numerator / q;
    if ((numerator - ratio * q) + 1 == q) ++ratio;  // exact 2^128 / q
    mu_hi = static_cast<u64>(ratio >> 64);
    mu_lo = static_cast<u64>(ratio);
  }

  u64 reduce(u128 x) const {
    const u64 x_lo = static_cast<u64>(x);
    const u64 x_hi = static_cast<u64>(x >> 64);
    // Estimate floor(x * mu / 2^128) using three partial products.
    const u64 carry = static_cast<u64>((u128{x_lo} * mu_lo) >> 64);
    const u128 mid1 = u128{x_lo} * mu_hi;
    const u128 mid2 = u128{x_hi} * mu_lo;
    const u128 mid = mid1 + mid2 + carry;
    const u64 quot = x_hi * mu_hi + static_cast<u64>(mid >> 64);
    u64 r = x_lo - quot * q;
    // The quotient estimate can be short by up to three for inputs near
    // 2^128 (e.g. key-switch accumulators), so loop instead of a single fixup.
    while (r >= q) r -= q;
    return r;
  }

  u64 mul(u64 a, u64 b) const { return reduce(u128{a} * b); }
};

// Shoup-style multiplication by a fixed operand w with precomputed
// w_shoup = floor(w * 2^64 / q). Used for twiddle factors.
inline u64 mul_mod_shoup(u64 x, u64 w, u64 w_shoup, u64 q) {
  const u64 hi = static_cast<u64>((u128{x} * w_shoup) >> 64);
  u64 r = x * w - hi * q;
  if (r >= q) r -= q;
  return r;
}

inline u64 shoup_precompute(u64 w, u64 q) {
  return static_cast<u64>((u128{w} << 64) / q);
}

inline u64 pow_mod(u64 base, u64 exp, u64 q) {
  const BarrettReducer red(q);
  u64 result = 1 % q;
  u64 b = base % q;
  while (exp > 0) {
    if (exp & 1) result = red.mul(result, b);
    b = red.mul(b, b);
    exp >>= 1;
  }
  return result;
}

/// Modular inverse for prime q via Fermat.
inline u64 inv_mod_prime(u64 a, u64 q) { return pow_mod(a, q - 2, q); }

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  const BarrettReducer red(n);
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = red.mul(x, x);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace hesim

#endif  // HESIM_MODULAR_HPP
