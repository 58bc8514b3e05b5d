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

#ifndef HESIM_NTT_HPP
#define HESIM_NTT_HPP

#include <vector>

#include "hesim/common.hpp"
#include "hesim/modular.hpp"

namespace hesim::ring {

// One NTT-friendly prime q = 1 (mod 2*ring_dim) together with the twiddle
// tables for the negacyclic transform over Z_q[X]/(X^ring_dim + 1).
// Forward tables hold psi^bitrev(i), inverse tables psi^-bitrev(i), each with
// Shoup companions. Immutable after construction and shareable across threads.
class PrimeModulus {
 public:
  PrimeModulus(u64 q, u64 psi, u32 ring_dim)
      : q_(q), psi_(psi), n_(ring_dim), red_(q) {
    const int logn = log2_exact(n_);
    fwd_.resize(n_);
    fwd_shoup_.resize(n_);
    inv_.resize(n_);
    inv_shoup_.resize(n_);
    const u64 psi_inv = inv_mod_prime(psi, q);
    u64 fpow = 1, ipow = 1;
    for (u32 i = 0; i < n_; ++i) {
      const u32 r = bit_reverse(i, logn);
      fwd_[r] = fpow;
      inv_[r] = ipow;
      fpow = red_.mul(fpow, psi);
      ipow = red_.mul(ipow, psi_inv);
    }
    for (u32 i = 0; i < n_; ++i) {
      fwd_shoup_[i] = shoup_precompute(fwd_[i], q);
      inv_shoup_[i] = shoup_precompute(inv_[i], q);
    }
    n_inv_ = inv_mod_prime(n_, q);
    n_inv_shoup_ = shoup_precompute(n_inv_, q);
  }

  u64 q() const { return q_; }
  u64 psi() const { return psi_; }
  u32 ring_dim() const { return n_; }
  const BarrettReducer& reducer() const { return red_; }

  u64 mul(u64 a, u64 b) const { return red_.mul(a, b); }

  // In-place forward negacyclic NTT (Cooley-Tukey, bit-reversed twiddles).
  void ntt_forward(u64* a) const {
    u32 t = n_;
    for (u32 m = 1; m < n_; m <<= 1) {
      t >>= 1;
      for (u32 i = 0; i < m; ++i) {
        const u32 j1 = 2 * i * t;
        const u64 w = fwd_[m + i];
        const u64 ws = fwd_shoup_[m + i];
        for (u32 j = j1; j < j1 + t; ++j) {
          const u64 u = a[j];
          const u64 v = mul_mod_shoup(a[j + t], w, ws, q_);
          a[j] = add_mod(u, v, q_);
          a[j + t] = sub_mod(u, v, q_);
        }
      }
    }
  }

  // In-place inverse negacyclic NTT (Gentleman-Sande), including the final
  // scaling by 1/n.
  void ntt_inverse(u64* a) const {
    u32 t = 1;
    for (u32 m = n_; m > 1; m >>= 1) {
      u32 j1 = 0;
      const u32 h = m >> 1;
      for (u32 i = 0; i < h; ++i) {
        const u64 w = inv_[h + i];
        const u64 ws = inv_shoup_[h + i];
        for (u32 j = j1; j < j1 + t; ++j) {
          const u64 u = a[j];
          const u64 v = a[j + t];
          a[j] = add_mod(u, v, q_);
          a[j + t] = mul_mod_shoup(sub_mod(u, v, q_), w, ws, q_);
        }
        j1 += t << 1;
      }
      t <<= 1;
    }
    for (u32 j = 0; j < n_; ++j) {
      a[j] = mul_mod_shoup(a[j], n_inv_, n_inv_shoup_, q_);
    }
  }

 private:
  static u32 bit_reverse(u32 x, int bits) {
    u32 r = 0;
    for (int i = 0; i < bits; ++i) {
      r = (r << 1) | (x & 1);
      x >>= 1;
    }
    return r;
  }

  u64 q_;
  u64 psi_;
  u32 n_;
  BarrettReducer red_;
  u64 n_inv_ = 0;
  u64 n_inv_shoup_ = 0;
  std::vector<u64> fwd_, fwd_shoup_, inv_, inv_shoup_;
};

/// Finds a primitive 2n-th root of unity modulo q (requires q = 1 mod 2n).
/// Deterministic: probes generators in increasing order.
inline u64 find_primitive_root(u64 q, u32 ring_dim) {
  const u64 two_n = 2ull * ring_dim;
  const u64 cofactor = (q - 1) / two_n;
  for (u64 g = 2;; ++g) {
    const u64 psi = pow_mod(g, cofactor, q);
    if (psi == 0 || psi == 1) continue;
    if (pow_mod(psi, ring_dim, q) == q - 1) return psi;  // psi^n = -1
  }
}

}  // namespace hesim::ring

#endif  // HESIM_NTT_HPP
