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

#ifndef HESIM_RING_POLY_HPP
#define HESIM_RING_POLY_HPP

#include <utility>
#include <vector>

#include "hesim/common.hpp"
#include "hesim/modulus_chain.hpp"
#include "hesim/rng.hpp"

namespace hesim::ring {

enum class PolyDomain : u8 { Coefficient = 0, Evaluation = 1 };

// Element of Z_q[X]/(X^n + 1) in RNS form: one coefficient array per prime of
// the chain, limbs 0..active_level. Value-like; operations return new
// polynomials and never mutate their inputs.
class RingPoly {
 public:
  RingPoly() = default;
  RingPoly(u32 ring_dim, int level, PolyDomain domain)
      : domain_(domain),
        limbs_(static_cast<size_t>(level) + 1,
               std::vector<u64>(ring_dim, 0)) {}

  int active_level() const { return static_cast<int>(limbs_.size()) - 1; }
  u32 ring_dim() const {
    return limbs_.empty() ? 0 : static_cast<u32>(limbs_[0].size());
  }
  PolyDomain domain() const { return domain_; }
  void set_domain(PolyDomain d) { domain_ = d; }

  std::vector<u64>& limb(size_t i) { return limbs_[i]; }
  const std::vector<u64>& limb(size_t i) const { return limbs_[i]; }
  size_t limb_count() const { return limbs_.size(); }

  void drop_limbs_to(int level) {
    limbs_.resize(static_cast<size_t>(level) + 1);
  }

  bool operator==(const RingPoly& other) const {
    return domain_ == other.domain_ && limbs_ == other.limbs_;
  }

 private:
  PolyDomain domain_ = PolyDomain::Coefficient;
  std::vector<std::vector<u64>> limbs_;
};

inline void check_same_shape(const RingPoly& a, const RingPoly& b) {
  if (a.active_level() != b.active_level()) {
    throw LevelMismatchError("ring polynomials have different active levels");
  }
  if (a.domain() != b.domain()) {
    throw DomainMismatchError("ring polynomials are in different domains");
  }
}

inline RingPoly ntt_forward(const ModulusChain& chain, const RingPoly& p) {
  if (p.domain() != PolyDomain::Coefficient) {
    throw DomainMismatchError("ntt_forward expects a coefficient-domain input");
  }
  RingPoly out = p;
  for (size_t j = 0; j < out.limb_count(); ++j) {
    chain.prime(j).ntt_forward(out.limb(j).data());
  }
  out.set_domain(PolyDomain::Evaluation);
  return out;
}

inline RingPoly ntt_inverse(const ModulusChain& chain, const RingPoly& p) {
  if (p.domain() != PolyDomain::Evaluation) {
    throw DomainMismatchError("ntt_inverse expects an evaluation-domain input");
  }
  RingPoly out = p;
  for (size_t j = 0; j < out.limb_count(); ++j) {
    chain.prime(j).ntt_inverse(out.limb(j).data());
  }
  out.set_domain(PolyDomain::Coefficient);
  return out;
}

inline RingPoly to_domain(const ModulusChain& chain, const RingPoly& p,
                          PolyDomain d) {
  if (p.domain() == d) return p;
  return d == PolyDomain::Evaluation ? ntt_forward(chain, p)
                                     : ntt_inverse(chain, p);
}

inline RingPoly poly_add(const ModulusChain& chain, const RingPoly& a,
                         const RingPoly& b) {
  check_same_shape(a, b);
  RingPoly out = a;
  for (size_t j = 0; j < out.limb_count(); ++j) {
    const u64 q = chain.prime(j).q();
    const auto& bj = b.limb(j);
    auto& oj = out.limb(j);
    for (size_t c = 0; c < oj.size(); ++c) oj[c] = add_mod(oj[c], bj[c], q);
  }
  return out;
}

inline RingPoly poly_sub(const ModulusChain& chain, const RingPoly& a,
                         const RingPoly& b) {
  check_same_shape(a, b);
  RingPoly out = a;
  for (size_t j = 0; j < out.limb_count(); ++j) {
    const u64 q = chain.prime(j).q();
    const auto& bj = b.limb(j);
    auto& oj = out.limb(j);
    for (size_t c = 0; c < oj.size(); ++c) oj[c] = sub_mod(oj[c], bj[c], q);
  }
  return out;
}

inline RingPoly poly_negate(const ModulusChain& chain, const RingPoly& a) {
  RingPoly out = a;
  for (size_t j = 0; j < out.limb_count(); ++j) {
    const u64 q = chain.prime(j).q();
    for (auto& c : out.limb(j)) c = neg_mod(c, q);
  }
  return out;
}

/// Negacyclic product. Inputs are converted to the evaluation domain as
/// needed; the result is returned in the evaluation domain.
inline RingPoly poly_mul(const ModulusChain& chain, const RingPoly& a,
                         const RingPoly& b) {
  if (a.active_level() != b.active_level()) {
    throw LevelMismatchError("poly_mul operands have different active levels");
  }
  const RingPoly ae = to_domain(chain, a, PolyDomain::Evaluation);
  const RingPoly be = to_domain(chain, b, PolyDomain::Evaluation);
  RingPoly out = ae;
  for (size_t j = 0; j < out.limb_count(); ++j) {
    const auto& red = chain.prime(j).reducer();
    const auto& bj = be.limb(j);
    auto& oj = out.limb(j);
    for (size_t c = 0; c < oj.size(); ++c) oj[c] = red.mul(oj[c], bj[c]);
  }
  return out;
}

/// Applies X -> X^galois_elt with negacyclic sign handling. Accepts either
/// domain (evaluation inputs are converted and converted back).
inline RingPoly automorphism(const ModulusChain& chain, const RingPoly& p,
                             u64 galois_elt) {
  const u64 n = p.ring_dim();
  const u64 two_n = 2 * n;
  if ((galois_elt & 1) == 0 || galois_elt == 0 || galois_elt >= two_n) {
    throw ConfigError("galois element must be odd and in (0, 2*ring_dim)");
  }
  if (p.domain() == PolyDomain::Evaluation) {
    return ntt_forward(
        chain, automorphism(chain, ntt_inverse(chain, p), galois_elt));
  }
  RingPoly out(p.ring_dim(), p.active_level(), PolyDomain::Coefficient);
  for (size_t j = 0; j < p.limb_count(); ++j) {
    const u64 q = chain.prime(j).q();
    const auto& src = p.limb(j);
    auto& dst = out.limb(j);
    for (u64 i = 0; i < n; ++i) {
      const u64 target = (i * galois_elt) % two_n;
      if (target < n) {
        dst[target] = src[i];
      } else {
        dst[target - n] = neg_mod(src[i], q);
      }
    }
  }
  return out;
}

/// Exact RNS scale-down by the last prime of the active chain: the result
/// represents round(value / q_last) with at most one unit of rounding error
/// per coefficient. Input is converted to the coefficient domain if needed;
/// the result is coefficient-domain.
inline RingPoly drop_last_limb(const ModulusChain& chain, const RingPoly& p) {
  if (p.active_level() < 1) {
    throw LevelExhaustedError("drop_last_limb: already at level 0");
  }
  const RingPoly pc = to_domain(chain, p, PolyDomain::Coefficient);
  const size_t last = pc.limb_count() - 1;
  const u64 q_last = chain.prime(last).q();
  const u64 half = q_last >> 1;
  RingPoly out(pc.ring_dim(), pc.active_level() - 1, PolyDomain::Coefficient);
  const auto& d = pc.limb(last);
  for (size_t i = 0; i < last; ++i) {
    const auto& red = chain.prime(i).reducer();
    const u64 qi = chain.prime(i).q();
    const u64 q_last_mod = chain.last_mod(last, i);
    const u64 inv = chain.last_inv_mod(last, i);
    const auto& src = pc.limb(i);
    auto& dst = out.limb(i);
    for (size_t c = 0; c < src.size(); ++c) {
      // Subtract the centered representative of (value mod q_last).
      u64 v = sub_mod(src[c], red.reduce(d[c]), qi);
      if (d[c] > half) v = add_mod(v, q_last_mod, qi);
      dst[c] = red.mul(v, inv);
    }
  }
  return out;
}

inline RingPoly sample_uniform(const ModulusChain& chain, int level, Rng& rng,
                               PolyDomain domain = PolyDomain::Coefficient) {
  RingPoly out(chain.ring_dim(), level, domain);
  for (size_t j = 0; j < out.limb_count(); ++j) {
    const u64 q = chain.prime(j).q();
    for (auto& c : out.limb(j)) c = rng.uniform_below(q);
  }
  return out;
}

/// Builds a coefficient-domain polynomial from small signed values,
/// replicated across every limb.
inline RingPoly from_small_values(const ModulusChain& chain, int level,
                                  const std::vector<int>& values) {
  RingPoly out(chain.ring_dim(), level, PolyDomain::Coefficient);
  for (size_t j = 0; j < out.limb_count(); ++j) {
    const u64 q = chain.prime(j).q();
    auto& dst = out.limb(j);
    for (size_t c = 0; c < values.size(); ++c) {
      const int v = values[c];
      dst[c] = v >= 0 ? static_cast<u64>(v) : q - static_cast<u64>(-v);
    }
  }
  return out;
}

/// Uniform ternary polynomial with coefficients in {-1, 0, 1}.
inline RingPoly sample_ternary(const ModulusChain& chain, int level, Rng& rng) {
  std::vector<int> vals(chain.ring_dim());
  for (auto& v : vals) v = static_cast<int>(rng.uniform_below(3)) - 1;
  return from_small_values(chain, level, vals);
}

/// Ternary polynomial with exactly `weight` nonzero coefficients.
inline RingPoly sample_sparse_ternary(const ModulusChain& chain, int level,
                                      u32 weight, Rng& rng) {
  const u32 n = chain.ring_dim();
  if (weight > n) throw ConfigError("sparse ternary weight exceeds ring_dim");
  std::vector<int> vals(n, 0);
  // Floyd-style sampling of distinct positions.
  std::vector<u32> positions;
  positions.reserve(weight);
  for (u32 placed = 0; placed < weight;) {
    const u32 pos = static_cast<u32>(rng.uniform_below(n));
    if (vals[pos] != 0) continue;
    vals[pos] = rng.uniform_below(2) == 0 ? -1 : 1;
    ++placed;
  }
  return from_small_values(chain, level, vals);
}

/// Centered discrete error polynomial with standard deviation close to sigma
/// (centered binomial with parameter round(2*sigma^2)).
inline RingPoly sample_error(const ModulusChain& chain, int level, double sigma,
                             Rng& rng) {
  int k = static_cast<int>(std::llround(2.0 * sigma * sigma));
  k = std::max(1, std::min(32, k));
  std::vector<int> vals(chain.ring_dim());
  for (auto& v : vals) v = rng.centered_binomial(k);
  return from_small_values(chain, level, vals);
}

}  // namespace hesim::ring

#endif  // HESIM_RING_POLY_HPP
