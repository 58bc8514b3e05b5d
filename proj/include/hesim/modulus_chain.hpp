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

#ifndef HESIM_MODULUS_CHAIN_HPP
#define HESIM_MODULUS_CHAIN_HPP

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <vector>

#include "hesim/common.hpp"
#include "hesim/modular.hpp"
#include "hesim/ntt.hpp"

namespace hesim::ring {

// RNS modulus chain [q_0, q_1, ..., q_lmax] plus one auxiliary prime used by
// key switching. q_0 is the decryption modulus (first_modulus_bits wide); the
// scaling primes sit near 2^scaling_modulus_bits. The implicit ciphertext
// modulus at level l is Q_l = q_0 * ... * q_l.
//
// Scaling primes are picked so that the per-level scale factor chain
// sf(l-1) = sf(l)^2 / q_l stays pinned to 2^scaling_modulus_bits; a greedy
// nearest-prime choice per level keeps the relative drift around 2^-20.
//
// All primes are kept below 2^60 so that key-switch accumulators can sum
// dozens of 120-bit products in a 128-bit register without overflow.
class ModulusChain {
 public:
  ModulusChain(u32 ring_dim, int max_level, int first_modulus_bits,
               int scaling_modulus_bits)
      : ring_dim_(ring_dim),
        first_modulus_bits_(first_modulus_bits),
        scaling_modulus_bits_(scaling_modulus_bits) {
    if (!is_power_of_two(ring_dim)) {
      throw ConfigError("ring dimension must be a power of two");
    }
    if (max_level < 0) throw ConfigError("max_level must be >= 0");
    if (first_modulus_bits < scaling_modulus_bits) {
      throw ConfigError("first modulus must be at least as wide as scaling moduli");
    }
    if (first_modulus_bits > 60 || scaling_modulus_bits < 20) {
      throw ConfigError("modulus sizes outside supported range [20, 60]");
    }

    std::set<u64> used;
    // Auxiliary prime first (largest), then the first modulus right below it,
    // so the key-switch scale-down always divides by the biggest prime.
    const u64 top = (first_modulus_bits == 60) ? ~u64{0} >> 4
                                               : (u64{1} << first_modulus_bits) - 1;
    const u64 special_q = find_prime_below(top, used);
    used.insert(special_q);
    const u64 q0 = find_prime_below(special_q - 1, used);
    used.insert(q0);

    std::vector<u64> qs(static_cast<size_t>(max_level) + 1);
    qs[0] = q0;
    const long double base = std::ldexp(1.0L, scaling_modulus_bits);
    std::vector<long double> sf(static_cast<size_t>(max_level) + 1);
    sf[static_cast<size_t>(max_level)] = base;
    for (int l = max_level; l >= 1; --l) {
      const long double target = sf[l] * sf[l] / base;
      const u64 q = find_prime_near(target, used);
      used.insert(q);
      qs[static_cast<size_t>(l)] = q;
      sf[static_cast<size_t>(l) - 1] = sf[l] * sf[l] / static_cast<long double>(q);
    }
    scale_chain_ = std::move(sf);

    primes_.reserve(qs.size());
    for (u64 q : qs) {
      primes_.emplace_back(q, find_primitive_root(q, ring_dim), ring_dim);
    }
    special_ = std::make_unique<PrimeModulus>(
        special_q, find_primitive_root(special_q, ring_dim), ring_dim);

    // Cross-modulus constants for rescaling and the key-switch scale-down.
    const size_t count = primes_.size();
    rescale_inv_.assign(count, {});
    rescale_mod_.assign(count, {});
    for (size_t l = 1; l < count; ++l) {
      rescale_inv_[l].resize(l);
      rescale_mod_[l].resize(l);
      for (size_t i = 0; i < l; ++i) {
        const u64 qi = primes_[i].q();
        rescale_inv_[l][i] = inv_mod_prime(primes_[l].q() % qi, qi);
        rescale_mod_[l][i] = primes_[l].q() % qi;
      }
    }
    special_inv_.resize(count);
    special_mod_.resize(count);
    for (size_t i = 0; i < count; ++i) {
      const u64 qi = primes_[i].q();
      special_inv_[i] = inv_mod_prime(special_q % qi, qi);
      special_mod_[i] = special_q % qi;
    }
  }

  u32 ring_dim() const { return ring_dim_; }
  int max_level() const { return static_cast<int>(primes_.size()) - 1; }
  int first_modulus_bits() const { return first_modulus_bits_; }
  int scaling_modulus_bits() const { return scaling_modulus_bits_; }

  const PrimeModulus& prime(size_t i) const { return primes_[i]; }
  size_t prime_count() const { return primes_.size(); }
  const PrimeModulus& special() const { return *special_; }

  /// Canonical scale factor carried by a fresh encoding at the given level.
  long double scale_at(int level) const {
    return scale_chain_[static_cast<size_t>(level)];
  }

  /// q_l^{-1} mod q_i and q_l mod q_i, for dropping limb l (requires i < l).
  u64 last_inv_mod(size_t l, size_t i) const { return rescale_inv_[l][i]; }
  u64 last_mod(size_t l, size_t i) const { return rescale_mod_[l][i]; }

  /// P^{-1} mod q_i and P mod q_i for the auxiliary prime P.
  u64 special_inv_mod(size_t i) const { return special_inv_[i]; }
  u64 special_mod(size_t i) const { return special_mod_[i]; }

  bool same_primes(const ModulusChain& other) const {
    if (ring_dim_ != other.ring_dim_ || prime_count() != other.prime_count())
      return false;
    for (size_t i = 0; i < prime_count(); ++i) {
      if (primes_[i].q() != other.primes_[i].q()) return false;
    }
    return special_->q() == other.special_->q();
  }

 private:
  u64 find_prime_below(u64 start, const std::set<u64>& used) const {
    const u64 two_n = 2ull * ring_dim_;
    u64 cand = (start / two_n) * two_n + 1;
    if (cand > start) cand -= two_n;
    for (; cand > two_n; cand -= two_n) {
      if (!used.count(cand) && is_prime_u64(cand)) return cand;
    }
    throw ConfigError("no NTT prime found below requested bound");
  }

  u64 find_prime_near(long double target, const std::set<u64>& used) const {
    const u64 two_n = 2ull * ring_dim_;
    const u64 center = (static_cast<u64>(std::llroundl(target)) / two_n) * two_n + 1;
    for (u64 offset = 0;; offset += two_n) {
      for (const u64 cand : {center + offset, center - offset}) {
        if (cand <= two_n || cand >= (u64{1} << 62)) continue;
        if (!used.count(cand) && is_prime_u64(cand)) return cand;
        if (offset == 0) break;
      }
    }
  }

  u32 ring_dim_;
  int first_modulus_bits_;
  int scaling_modulus_bits_;
  std::vector<PrimeModulus> primes_;
  std::unique_ptr<PrimeModulus> special_;
  std::vector<long double> scale_chain_;
  std::vector<std::vector<u64>> rescale_inv_;
  std::vector<std::vector<u64>> rescale_mod_;
  std::vector<u64> special_inv_;
  std::vector<u64> special_mod_;
};

}  // namespace hesim::ring

#endif  // HESIM_MODULUS_CHAIN_HPP
