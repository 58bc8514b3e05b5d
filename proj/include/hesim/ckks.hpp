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

// Leveled CKKS-style scheme over the RNS ring layer: encode/decode, key
// generation, encryption, homomorphic add/multiply/rotate with
// relinearization and rescaling, level alignment, and a simulated refresh.
//
// DO NOT use this for anything security-sensitive. Parameters are desk-scale
// and deliberately insecure, and the refresh operation decrypts internally.

#ifndef HESIM_CKKS_HPP
#define HESIM_CKKS_HPP

#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "hesim/common.hpp"
#include "hesim/encoding.hpp"
#include "hesim/modulus_chain.hpp"
#include "hesim/ring_poly.hpp"
#include "hesim/rng.hpp"

namespace hesim::ckks {

struct ContextParams {
  u32 ring_dim = u32{1} << 13;
  u32 batch_size = 64;
  int max_level = 33;      // multiplicative depth of a fresh ciphertext
  int refresh_level = 25;  // depth restored by refresh()
  int scale_bits = 40;
  int first_modulus_bits = 60;
  double error_sigma = 3.2;
  bool sparse_secret = false;
  u32 sparse_weight = 64;
  // Simulated refresh decrypts and re-encrypts internally; it can be turned
  // off for contexts that must never touch the secret key after setup.
  bool allow_insecure_refresh = true;
};

class CkksContext {
 public:
  // Toy parameters, no security claim of any kind.
  static constexpr bool kInsecureToy = true;

  explicit CkksContext(const ContextParams& params)
      : params_(params),
        chain_(params.ring_dim, params.max_level, params.first_modulus_bits,
               params.scale_bits),
        encoder_(params.ring_dim, params.batch_size) {
    if (params.refresh_level <= 0 || params.refresh_level > params.max_level) {
      throw ConfigError("refresh_level must satisfy 0 < l_refresh <= l_max");
    }
    if (params.error_sigma <= 0) throw ConfigError("error_sigma must be positive");
  }

  const ContextParams& params() const { return params_; }
  const ring::ModulusChain& chain() const { return chain_; }
  const CkksEncoder& encoder() const { return encoder_; }

  u32 ring_dim() const { return params_.ring_dim; }
  u32 batch_size() const { return params_.batch_size; }
  int max_level() const { return params_.max_level; }
  int refresh_level() const { return params_.refresh_level; }
  long double scale_at(int level) const { return chain_.scale_at(level); }

  bool compatible_with(const CkksContext& other) const {
    return chain_.same_primes(other.chain_) &&
           params_.batch_size == other.params_.batch_size;
  }

 private:
  ContextParams params_;
  ring::ModulusChain chain_;
  CkksEncoder encoder_;
};

using ContextPtr = std::shared_ptr<const CkksContext>;

inline ContextPtr make_context(const ContextParams& params) {
  return std::make_shared<const CkksContext>(params);
}

struct CkksPlaintext {
  ring::RingPoly poly;  // coefficient domain
  long double scale = 1.0L;
  int level = 0;
  u32 logical_len = 0;
};

struct CkksCiphertext {
  ring::RingPoly c0, c1;  // evaluation domain
  long double scale = 1.0L;
  int level = 0;
  u32 logical_len = 0;
  // Rough upper estimate of the absolute per-slot error; diagnostic only.
  double noise_budget_hint = 0.0;
};

// Polynomial over the full chain basis plus the auxiliary key-switch prime.
struct ExtPoly {
  ring::RingPoly main;            // limbs over q_0..q_lmax
  std::vector<u64> special_limb;  // limb modulo the auxiliary prime
};

struct SecretKey {
  ExtPoly s_coeff;  // coefficient domain (serialized form)
  ExtPoly s_eval;   // evaluation domain (cached)
};

struct PublicKey {
  ring::RingPoly pk0, pk1;  // evaluation domain, limbs at max level
};

struct KskEntry {
  ExtPoly b, a;  // evaluation domain
};

using KskKey = std::vector<KskEntry>;  // one entry per decomposition digit

struct RelinKey {
  KskKey key;
};

struct RotKeySet {
  std::map<u64, KskKey> by_galois;  // galois element -> key material
};

struct KeyBundle {
  SecretKey sk;
  PublicKey pk;
  RelinKey relin;
};

namespace detail {

inline ExtPoly ext_from_small_values(const CkksContext& ctx,
                                     const std::vector<int>& values) {
  const auto& chain = ctx.chain();
  ExtPoly out;
  out.main = ring::from_small_values(chain, ctx.max_level(), values);
  const u64 p = chain.special().q();
  out.special_limb.resize(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    const int v = values[i];
    out.special_limb[i] = v >= 0 ? static_cast<u64>(v) : p - static_cast<u64>(-v);
  }
  return out;
}

inline ExtPoly ext_to_eval(const CkksContext& ctx, const ExtPoly& p) {
  ExtPoly out;
  out.main = ring::ntt_forward(ctx.chain(), p.main);
  out.special_limb = p.special_limb;
  ctx.chain().special().ntt_forward(out.special_limb.data());
  return out;
}

inline ExtPoly ext_sample_uniform(const CkksContext& ctx, Rng& rng) {
  // Sampled directly in the evaluation domain (a uniform polynomial is
  // uniform in either domain).
  ExtPoly out;
  out.main = ring::sample_uniform(ctx.chain(), ctx.max_level(), rng,
                                  ring::PolyDomain::Evaluation);
  const u64 p = ctx.chain().special().q();
  out.special_limb.resize(ctx.ring_dim());
  for (auto& c : out.special_limb) c = rng.uniform_below(p);
  return out;
}

inline ExtPoly ext_sample_error(const CkksContext& ctx, Rng& rng) {
  std::vector<int> vals(ctx.ring_dim());
  int k = static_cast<int>(std::llround(2.0 * ctx.params().error_sigma *
                                        ctx.params().error_sigma));
  k = std::max(1, std::min(32, k));
  for (auto& v : vals) v = rng.centered_binomial(k);
  return ext_from_small_values(ctx, vals);
}

/// Coefficient-domain automorphism of an extended polynomial.
inline ExtPoly ext_automorphism(const CkksContext& ctx, const ExtPoly& p,
                                u64 galois_elt) {
  ExtPoly out;
  out.main = ring::automorphism(ctx.chain(), p.main, galois_elt);
  const u64 n = ctx.ring_dim();
  const u64 two_n = 2 * n;
  const u64 q = ctx.chain().special().q();
  out.special_limb.assign(n, 0);
  for (u64 i = 0; i < n; ++i) {
    const u64 target = (i * galois_elt) % two_n;
    if (target < n) {
      out.special_limb[target] = p.special_limb[i];
    } else {
      out.special_limb[target - n] = neg_mod(p.special_limb[i], q);
    }
  }
  return out;
}

inline std::vector<int> sample_secret_values(const CkksContext& ctx, Rng& rng) {
  const u32 n = ctx.ring_dim();
  std::vector<int> vals(n, 0);
  if (ctx.params().sparse_secret) {
    for (u32 placed = 0; placed < ctx.params().sparse_weight;) {
      const u32 pos = static_cast<u32>(rng.uniform_below(n));
      if (vals[pos] != 0) continue;
      vals[pos] = rng.uniform_below(2) == 0 ? -1 : 1;
      ++placed;
    }
  } else {
    for (auto& v : vals) v = static_cast<int>(rng.uniform_below(3)) - 1;
  }
  return vals;
}

}  // namespace detail

/// Galois element implementing a rotation by `steps` slots (steps already
/// normalized into [0, batch)).
inline u64 galois_for_rotation(const CkksContext& ctx, u32 steps) {
  const u64 two_n = 2ull * ctx.ring_dim();
  u64 g = 1;
  for (u32 i = 0; i < steps; ++i) g = (g * 5) % two_n;
  return g;
}

inline u32 normalize_rotation(const CkksContext& ctx, int k) {
  const int b = static_cast<int>(ctx.batch_size());
  return static_cast<u32>(((k % b) + b) % b);
}

// ---------------------------------------------------------------------------
// Encoding

inline CkksPlaintext encode(const CkksContext& ctx,
                            const std::vector<double>& values, int level) {
  if (level < 0 || level > ctx.max_level()) {
    throw LevelMismatchError("encode: level outside the modulus chain");
  }
  const long double scale = ctx.scale_at(level);
  const std::vector<i64> coeffs = ctx.encoder().encode(values, scale);
  CkksPlaintext pt;
  pt.poly = ring::RingPoly(ctx.ring_dim(), level, ring::PolyDomain::Coefficient);
  for (size_t j = 0; j < pt.poly.limb_count(); ++j) {
    const u64 q = ctx.chain().prime(j).q();
    auto& limb = pt.poly.limb(j);
    for (size_t c = 0; c < coeffs.size(); ++c) {
      const i64 v = coeffs[c];
      if (v >= 0) {
        limb[c] = static_cast<u64>(v) % q;
      } else {
        const u64 r = static_cast<u64>(-v) % q;
        limb[c] = r == 0 ? 0 : q - r;
      }
    }
  }
  pt.scale = scale;
  pt.level = level;
  pt.logical_len = static_cast<u32>(values.size());
  return pt;
}

namespace detail {
inline std::vector<i64> centered_coeffs(const CkksContext& ctx,
                                        const ring::RingPoly& poly) {
  // The message magnitude stays far below q_0/2, so limb 0 alone carries the
  // exact centered value.
  const u64 q0 = ctx.chain().prime(0).q();
  const auto& limb = poly.limb(0);
  std::vector<i64> out(limb.size());
  for (size_t c = 0; c < limb.size(); ++c) {
    out[c] = limb[c] > q0 / 2 ? -static_cast<i64>(q0 - limb[c])
                              : static_cast<i64>(limb[c]);
  }
  return out;
}
}  // namespace detail

inline std::vector<double> decode(const CkksContext& ctx,
                                  const CkksPlaintext& pt) {
  return ctx.encoder().decode(detail::centered_coeffs(ctx, pt.poly), pt.scale,
                              pt.logical_len);
}

/// Decodes every batch slot, including ones beyond the logical length.
inline std::vector<double> decode_full_batch(const CkksContext& ctx,
                                             const CkksPlaintext& pt) {
  return ctx.encoder().decode(detail::centered_coeffs(ctx, pt.poly), pt.scale,
                              ctx.batch_size());
}

// ---------------------------------------------------------------------------
// Key generation

namespace detail {

/// Builds key-switch material that re-encrypts target * digit sums under s:
/// entry j satisfies b_j + a_j * s = e_j + P * g_j * target (mod Q_lmax * P),
/// with g_j the CRT basis element of digit j.
inline KskKey make_ksk(const CkksContext& ctx, const ExtPoly& target_eval,
                       const ExtPoly& s_eval, Rng& rng) {
  const auto& chain = ctx.chain();
  const u32 n = ctx.ring_dim();
  const size_t digits = chain.prime_count();
  KskKey key(digits);
  for (size_t j = 0; j < digits; ++j) {
    ExtPoly a = ext_sample_uniform(ctx, rng);
    ExtPoly e = ext_to_eval(ctx, ext_sample_error(ctx, rng));
    ExtPoly b;
    b.main = ring::RingPoly(n, ctx.max_level(), ring::PolyDomain::Evaluation);
    b.special_limb.assign(n, 0);
    for (size_t i = 0; i < digits; ++i) {
      const auto& red = chain.prime(i).reducer();
      const u64 q = chain.prime(i).q();
      const u64 p_mod_q = chain.special_mod(i);
      const auto& ai = a.main.limb(i);
      const auto& si = s_eval.main.limb(i);
      const auto& ei = e.main.limb(i);
      const auto& ti = target_eval.main.limb(i);
      auto& bi = b.main.limb(i);
      for (u32 c = 0; c < n; ++c) {
        u64 v = sub_mod(ei[c], red.mul(ai[c], si[c]), q);
        if (i == j) v = add_mod(v, red.mul(p_mod_q, ti[c]), q);
        bi[c] = v;
      }
    }
    // P * g_j * target vanishes modulo the auxiliary prime itself.
    {
      const auto& red = chain.special().reducer();
      const u64 p = chain.special().q();
      for (u32 c = 0; c < n; ++c) {
        b.special_limb[c] =
            sub_mod(e.special_limb[c],
                    red.mul(a.special_limb[c], s_eval.special_limb[c]), p);
      }
    }
    key[j].b = std::move(b);
    key[j].a = std::move(a);
  }
  return key;
}

}  // namespace detail

inline KeyBundle keygen(const CkksContext& ctx, Rng& rng) {
  KeyBundle bundle;
  const std::vector<int> s_vals = detail::sample_secret_values(ctx, rng);
  bundle.sk.s_coeff = detail::ext_from_small_values(ctx, s_vals);
  bundle.sk.s_eval = detail::ext_to_eval(ctx, bundle.sk.s_coeff);

  // pk = (-a*s + e, a) over the chain modulus.
  const ring::RingPoly a = ring::sample_uniform(
      ctx.chain(), ctx.max_level(), rng, ring::PolyDomain::Evaluation);
  const ring::RingPoly e = ring::ntt_forward(
      ctx.chain(),
      ring::sample_error(ctx.chain(), ctx.max_level(), ctx.params().error_sigma,
                         rng));
  bundle.pk.pk0 = ring::poly_sub(
      ctx.chain(), e, ring::poly_mul(ctx.chain(), a, bundle.sk.s_eval.main));
  bundle.pk.pk1 = a;

  // Relinearization key for s^2.
  ExtPoly s_sq;
  s_sq.main =
      ring::poly_mul(ctx.chain(), bundle.sk.s_eval.main, bundle.sk.s_eval.main);
  const auto& sred = ctx.chain().special().reducer();
  s_sq.special_limb.resize(ctx.ring_dim());
  for (u32 c = 0; c < ctx.ring_dim(); ++c) {
    s_sq.special_limb[c] = sred.mul(bundle.sk.s_eval.special_limb[c],
                                    bundle.sk.s_eval.special_limb[c]);
  }
  bundle.relin.key = detail::make_ksk(ctx, s_sq, bundle.sk.s_eval, rng);
  return bundle;
}

/// One key-switch entry per distinct galois element of the requested rotation
/// indices (indices are reduced modulo the batch size; duplicates collapse).
inline RotKeySet rotation_keygen(const CkksContext& ctx, const SecretKey& sk,
                                 const std::vector<int>& indices, Rng& rng) {
  std::set<u64> galois;
  for (int k : indices) {
    const u32 steps = normalize_rotation(ctx, k);
    if (steps != 0) galois.insert(galois_for_rotation(ctx, steps));
  }
  RotKeySet set;
  for (u64 g : galois) {
    const ExtPoly s_rot = detail::ext_to_eval(
        ctx, detail::ext_automorphism(ctx, sk.s_coeff, g));
    set.by_galois.emplace(g, detail::make_ksk(ctx, s_rot, sk.s_eval, rng));
  }
  return set;
}

inline void merge_rotation_keys(RotKeySet& dst, RotKeySet&& src) {
  for (auto& [g, key] : src.by_galois) dst.by_galois[g] = std::move(key);
}

// ---------------------------------------------------------------------------
// Encrypt / decrypt

namespace detail {
inline ring::RingPoly restrict_level(const ring::RingPoly& p, int level) {
  ring::RingPoly out = p;
  out.drop_limbs_to(level);
  return out;
}

inline double fresh_noise_estimate(const CkksContext& ctx) {
  const double n = static_cast<double>(ctx.ring_dim());
  const double sigma = ctx.params().error_sigma;
  const double coeff_sd = sigma * (std::sqrt(2.0 * n / 3.0) + 1.0);
  return 6.0 * coeff_sd * std::sqrt(n) /
         static_cast<double>(ctx.scale_at(ctx.max_level()));
}
}  // namespace detail

inline CkksCiphertext encrypt(const CkksContext& ctx, const CkksPlaintext& pt,
                              const PublicKey& pk, Rng& rng) {
  if (pt.level > ctx.max_level()) {
    throw LevelMismatchError("encrypt: plaintext above the maximum level");
  }
  const auto& chain = ctx.chain();
  const int level = pt.level;
  const ring::RingPoly u = ring::ntt_forward(
      chain, ring::sample_ternary(chain, level, rng));
  const ring::RingPoly e1 = ring::ntt_forward(
      chain, ring::sample_error(chain, level, ctx.params().error_sigma, rng));
  const ring::RingPoly e2 = ring::ntt_forward(
      chain, ring::sample_error(chain, level, ctx.params().error_sigma, rng));
  const ring::RingPoly pk0 = detail::restrict_level(pk.pk0, level);
  const ring::RingPoly pk1 = detail::restrict_level(pk.pk1, level);
  const ring::RingPoly mu = ring::ntt_forward(chain, pt.poly);

  CkksCiphertext ct;
  ct.c0 = ring::poly_add(chain, ring::poly_add(chain, ring::poly_mul(chain, pk0, u), e1), mu);
  ct.c1 = ring::poly_add(chain, ring::poly_mul(chain, pk1, u), e2);
  ct.scale = pt.scale;
  ct.level = level;
  ct.logical_len = pt.logical_len;
  ct.noise_budget_hint = detail::fresh_noise_estimate(ctx);
  return ct;
}

inline CkksPlaintext decrypt(const CkksContext& ctx, const CkksCiphertext& ct,
                             const SecretKey& sk) {
  const auto& chain = ctx.chain();
  const ring::RingPoly s = detail::restrict_level(sk.s_eval.main, ct.level);
  const ring::RingPoly mu_eval =
      ring::poly_add(chain, ct.c0, ring::poly_mul(chain, ct.c1, s));
  CkksPlaintext pt;
  pt.poly = ring::ntt_inverse(chain, mu_eval);
  pt.scale = ct.scale;
  pt.level = ct.level;
  pt.logical_len = ct.logical_len;
  return pt;
}

// ---------------------------------------------------------------------------
// Key switching core

namespace detail {

/// Key-switches a coefficient-domain polynomial d (limbs 0..level): returns
/// coefficient-domain (ks0, ks1) with ks0 + ks1*s ~= d * target. Digits are
/// the plain RNS residues of d; products are accumulated over the extended
/// basis and scaled back down by the auxiliary prime.
inline std::pair<ring::RingPoly, ring::RingPoly> key_switch(
    const CkksContext& ctx, const ring::RingPoly& d, const KskKey& key) {
  const auto& chain = ctx.chain();
  const u32 n = ctx.ring_dim();
  const int level = d.active_level();
  const size_t rows = static_cast<size_t>(level) + 2;  // chain limbs + special
  const size_t special_row = rows - 1;

  std::vector<std::vector<u128>> acc0(rows, std::vector<u128>(n, 0));
  std::vector<std::vector<u128>> acc1(rows, std::vector<u128>(n, 0));
  std::vector<u64> digit(n);

  for (int j = 0; j <= level; ++j) {
    const u64 qj = chain.prime(static_cast<size_t>(j)).q();
    const auto& src = d.limb(static_cast<size_t>(j));
    const auto& entry = key[static_cast<size_t>(j)];
    for (size_t row = 0; row < rows; ++row) {
      const ring::PrimeModulus& target = row == special_row
                                             ? chain.special()
                                             : chain.prime(row);
      const u64 qi = target.q();
      if (qj <= qi) {
        std::copy(src.begin(), src.end(), digit.begin());
      } else {
        const auto& red = target.reducer();
        for (u32 c = 0; c < n; ++c) digit[c] = red.reduce(src[c]);
      }
      target.ntt_forward(digit.data());
      const auto& kb = row == special_row
                           ? entry.b.special_limb
                           : entry.b.main.limb(row);
      const auto& ka = row == special_row
                           ? entry.a.special_limb
                           : entry.a.main.limb(row);
      auto& a0 = acc0[row];
      auto& a1 = acc1[row];
      for (u32 c = 0; c < n; ++c) {
        a0[c] += u128{digit[c]} * kb[c];
        a1[c] += u128{digit[c]} * ka[c];
      }
    }
  }

  // Reduce the accumulators, go back to coefficients, divide by P.
  auto finish = [&](std::vector<std::vector<u128>>& acc) {
    std::vector<std::vector<u64>> limbs(rows, std::vector<u64>(n));
    for (size_t row = 0; row < rows; ++row) {
      const ring::PrimeModulus& target = row == special_row
                                             ? chain.special()
                                             : chain.prime(row);
      const auto& red = target.reducer();
      for (u32 c = 0; c < n; ++c) limbs[row][c] = red.reduce(acc[row][c]);
      target.ntt_inverse(limbs[row].data());
    }
    const u64 p = chain.special().q();
    const u64 half_p = p >> 1;
    const auto& special = limbs[special_row];
    ring::RingPoly out(n, level, ring::PolyDomain::Coefficient);
    for (int i = 0; i <= level; ++i) {
      const auto& red = chain.prime(static_cast<size_t>(i)).reducer();
      const u64 qi = chain.prime(static_cast<size_t>(i)).q();
      const u64 p_mod = chain.special_mod(static_cast<size_t>(i));
      const u64 p_inv = chain.special_inv_mod(static_cast<size_t>(i));
      const auto& src = limbs[static_cast<size_t>(i)];
      auto& dst = out.limb(static_cast<size_t>(i));
      for (u32 c = 0; c < n; ++c) {
        u64 v = sub_mod(src[c], red.reduce(special[c]), qi);
        if (special[c] > half_p) v = add_mod(v, p_mod, qi);
        dst[c] = red.mul(v, p_inv);
      }
    }
    return out;
  };

  return {finish(acc0), finish(acc1)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Level management

namespace detail {

/// Multiplies limbs by an integer constant (valid in either domain).
inline void scale_limbs_inplace(const CkksContext& ctx, ring::RingPoly& p,
                                i64 constant) {
  const bool negative = constant < 0;
  const u64 w = negative ? static_cast<u64>(-constant)
                         : static_cast<u64>(constant);
  for (size_t j = 0; j < p.limb_count(); ++j) {
    const auto& red = ctx.chain().prime(j).reducer();
    const u64 q = ctx.chain().prime(j).q();
    const u64 wq = red.reduce(w);
    for (auto& c : p.limb(j)) {
      c = red.mul(c, wq);
      if (negative) c = neg_mod(c, q);
    }
  }
}

/// Rescales an evaluation-domain ciphertext by the last prime and snaps the
/// tracked scale to the canonical per-level value (the snap absorbs a
/// relative model error of about 2^-scale_bits).
inline void rescale_inplace(const CkksContext& ctx, CkksCiphertext& ct) {
  const auto& chain = ctx.chain();
  ct.c0 = ring::ntt_forward(chain, ring::drop_last_limb(chain, ct.c0));
  ct.c1 = ring::ntt_forward(chain, ring::drop_last_limb(chain, ct.c1));
  ct.level -= 1;
  ct.scale = ctx.scale_at(ct.level);
}

/// Brings a ciphertext down one level while keeping the canonical scale:
/// multiply by round(sf_l) and rescale, i.e. a multiplication by 1.0.
inline void drop_one_level_inplace(const CkksContext& ctx, CkksCiphertext& ct) {
  if (ct.level < 1) throw LevelExhaustedError("cannot drop below level 0");
  const i64 w = static_cast<i64>(llroundl(ctx.scale_at(ct.level)));
  scale_limbs_inplace(ctx, ct.c0, w);
  scale_limbs_inplace(ctx, ct.c1, w);
  rescale_inplace(ctx, ct);
}

inline void check_scales_match(const CkksCiphertext& a, long double scale_b) {
  const long double rel = fabsl(a.scale - scale_b) / a.scale;
  if (rel > 1e-9L) {
    throw LevelMismatchError("operands carry incompatible scales");
  }
}

}  // namespace detail

inline int level_of(const CkksCiphertext& ct) { return ct.level; }

inline CkksCiphertext drop_to_level(const CkksContext& ctx,
                                    const CkksCiphertext& ct, int target) {
  if (target > ct.level) {
    throw LevelMismatchError("drop_to_level: target above current level");
  }
  CkksCiphertext out = ct;
  while (out.level > target) detail::drop_one_level_inplace(ctx, out);
  return out;
}

inline std::pair<CkksCiphertext, CkksCiphertext> align_levels(
    const CkksContext& ctx, const CkksCiphertext& a, const CkksCiphertext& b) {
  const int target = std::min(a.level, b.level);
  return {drop_to_level(ctx, a, target), drop_to_level(ctx, b, target)};
}

// ---------------------------------------------------------------------------
// Arithmetic

inline CkksCiphertext add(const CkksContext& ctx, const CkksCiphertext& a,
                          const CkksCiphertext& b) {
  auto [x, y] = align_levels(ctx, a, b);
  detail::check_scales_match(x, y.scale);
  CkksCiphertext out;
  out.c0 = ring::poly_add(ctx.chain(), x.c0, y.c0);
  out.c1 = ring::poly_add(ctx.chain(), x.c1, y.c1);
  out.scale = x.scale;
  out.level = x.level;
  out.logical_len = std::max(a.logical_len, b.logical_len);
  out.noise_budget_hint = a.noise_budget_hint + b.noise_budget_hint;
  return out;
}

inline CkksCiphertext sub(const CkksContext& ctx, const CkksCiphertext& a,
                          const CkksCiphertext& b) {
  auto [x, y] = align_levels(ctx, a, b);
  detail::check_scales_match(x, y.scale);
  CkksCiphertext out;
  out.c0 = ring::poly_sub(ctx.chain(), x.c0, y.c0);
  out.c1 = ring::poly_sub(ctx.chain(), x.c1, y.c1);
  out.scale = x.scale;
  out.level = x.level;
  out.logical_len = std::max(a.logical_len, b.logical_len);
  out.noise_budget_hint = a.noise_budget_hint + b.noise_budget_hint;
  return out;
}

namespace detail {
inline CkksPlaintext align_plaintext(const CkksContext& ctx,
                                     const CkksPlaintext& pt, int level) {
  if (pt.level < level) {
    throw LevelMismatchError("plaintext below the ciphertext level");
  }
  CkksPlaintext out = pt;
  out.poly.drop_limbs_to(level);
  out.level = level;
  // Limb dropping keeps the scale; accept only canonically scaled plaintexts.
  const long double canon = ctx.scale_at(level);
  if (fabsl(out.scale - canon) / canon > 1e-9L) {
    throw LevelMismatchError("plaintext scale does not match its level");
  }
  return out;
}
}  // namespace detail

inline CkksCiphertext add_plain(const CkksContext& ctx,
                                const CkksCiphertext& ct,
                                const CkksPlaintext& pt) {
  const CkksPlaintext p = detail::align_plaintext(ctx, pt, ct.level);
  detail::check_scales_match(ct, p.scale);
  CkksCiphertext out = ct;
  out.c0 = ring::poly_add(
      ctx.chain(), ct.c0,
      ring::to_domain(ctx.chain(), p.poly, ring::PolyDomain::Evaluation));
  return out;
}

inline CkksCiphertext sub_plain(const CkksContext& ctx,
                                const CkksCiphertext& ct,
                                const CkksPlaintext& pt) {
  const CkksPlaintext p = detail::align_plaintext(ctx, pt, ct.level);
  detail::check_scales_match(ct, p.scale);
  CkksCiphertext out = ct;
  out.c0 = ring::poly_sub(
      ctx.chain(), ct.c0,
      ring::to_domain(ctx.chain(), p.poly, ring::PolyDomain::Evaluation));
  return out;
}

/// Adds the same scalar to every slot; consumes no level.
inline CkksCiphertext add_scalar(const CkksContext& ctx,
                                 const CkksCiphertext& ct, double value) {
  const i64 w = static_cast<i64>(llroundl(
      static_cast<long double>(value) * ct.scale));
  CkksCiphertext out = ct;
  for (size_t j = 0; j < out.c0.limb_count(); ++j) {
    const u64 q = ctx.chain().prime(j).q();
    const u64 neg = w < 0 ? static_cast<u64>(-w) % q : 0;
    const u64 wq = w >= 0 ? static_cast<u64>(w) % q : (neg == 0 ? 0 : q - neg);
    // A constant polynomial evaluates to the constant at every root.
    for (auto& c : out.c0.limb(j)) c = add_mod(c, wq, q);
  }
  return out;
}

inline CkksCiphertext sub_scalar(const CkksContext& ctx,
                                 const CkksCiphertext& ct, double value) {
  return add_scalar(ctx, ct, -value);
}

/// Ciphertext-ciphertext product: tensor, relinearize, rescale.
inline CkksCiphertext mul(const CkksContext& ctx, const CkksCiphertext& a,
                          const CkksCiphertext& b, const RelinKey& relin) {
  auto [x, y] = align_levels(ctx, a, b);
  if (x.level < 1) {
    throw LevelExhaustedError("mul: no level left; refresh required");
  }
  detail::check_scales_match(x, y.scale);
  const auto& chain = ctx.chain();
  const ring::RingPoly d0 = ring::poly_mul(chain, x.c0, y.c0);
  const ring::RingPoly d1 = ring::poly_add(chain,
                                           ring::poly_mul(chain, x.c0, y.c1),
                                           ring::poly_mul(chain, x.c1, y.c0));
  const ring::RingPoly d2 = ring::poly_mul(chain, x.c1, y.c1);

  auto [ks0, ks1] =
      detail::key_switch(ctx, ring::ntt_inverse(chain, d2), relin.key);

  CkksCiphertext out;
  out.c0 = ring::poly_add(chain, ring::ntt_inverse(chain, d0), ks0);
  out.c1 = ring::poly_add(chain, ring::ntt_inverse(chain, d1), ks1);
  out.c0 = ring::ntt_forward(chain, out.c0);
  out.c1 = ring::ntt_forward(chain, out.c1);
  out.scale = x.scale * y.scale;
  out.level = x.level;
  out.logical_len = std::max(a.logical_len, b.logical_len);
  detail::rescale_inplace(ctx, out);
  out.noise_budget_hint = a.noise_budget_hint + b.noise_budget_hint +
                          detail::fresh_noise_estimate(ctx);
  return out;
}

/// Ciphertext-plaintext product: no relinearization, one rescale.
inline CkksCiphertext mul_plain(const CkksContext& ctx,
                                const CkksCiphertext& ct,
                                const CkksPlaintext& pt) {
  if (ct.level < 1) {
    throw LevelExhaustedError("mul_plain: no level left; refresh required");
  }
  const CkksPlaintext p = detail::align_plaintext(ctx, pt, ct.level);
  const ring::RingPoly mu =
      ring::to_domain(ctx.chain(), p.poly, ring::PolyDomain::Evaluation);
  CkksCiphertext out = ct;
  out.c0 = ring::poly_mul(ctx.chain(), ct.c0, mu);
  out.c1 = ring::poly_mul(ctx.chain(), ct.c1, mu);
  out.scale = ct.scale * p.scale;
  detail::rescale_inplace(ctx, out);
  out.noise_budget_hint = ct.noise_budget_hint +
                          detail::fresh_noise_estimate(ctx);
  return out;
}

/// Ciphertext-scalar product via an integer constant at the canonical scale.
inline CkksCiphertext mul_scalar(const CkksContext& ctx,
                                 const CkksCiphertext& ct, double value) {
  if (ct.level < 1) {
    throw LevelExhaustedError("mul_scalar: no level left; refresh required");
  }
  if (std::abs(value) * static_cast<double>(ctx.scale_at(ct.level)) >
      0x1.0p62) {
    throw ConfigError("mul_scalar: scalar too large for the scale");
  }
  const i64 w = static_cast<i64>(llroundl(
      static_cast<long double>(value) * ctx.scale_at(ct.level)));
  CkksCiphertext out = ct;
  detail::scale_limbs_inplace(ctx, out.c0, w);
  detail::scale_limbs_inplace(ctx, out.c1, w);
  out.scale = ct.scale * ctx.scale_at(ct.level);
  detail::rescale_inplace(ctx, out);
  out.noise_budget_hint =
      ct.noise_budget_hint * std::max(1.0, std::abs(value));
  return out;
}

/// Cyclic slot rotation by k (positive k moves slot j+k into slot j, i.e.
/// data moves toward lower indices); circular with respect to the batch.
/// Consumes no level.
inline CkksCiphertext rotate(const CkksContext& ctx, const CkksCiphertext& ct,
                             int k, const RotKeySet& keys) {
  const u32 steps = normalize_rotation(ctx, k);
  if (steps == 0) return ct;
  const u64 g = galois_for_rotation(ctx, steps);
  const auto it = keys.by_galois.find(g);
  if (it == keys.by_galois.end()) {
    throw MissingRotationKeyError("no rotation key for index " +
                                  std::to_string(k));
  }
  const auto& chain = ctx.chain();
  const ring::RingPoly a0 = ring::automorphism(
      chain, ring::ntt_inverse(chain, ct.c0), g);
  const ring::RingPoly a1 = ring::automorphism(
      chain, ring::ntt_inverse(chain, ct.c1), g);
  auto [ks0, ks1] = detail::key_switch(ctx, a1, it->second);
  CkksCiphertext out = ct;
  out.c0 = ring::ntt_forward(chain, ring::poly_add(chain, a0, ks0));
  out.c1 = ring::ntt_forward(chain, ks1);
  out.noise_budget_hint = ct.noise_budget_hint + 1e-9;
  return out;
}

// ---------------------------------------------------------------------------
// Simulated refresh

enum class RefreshPolicy { Standard, Iterative };

/// Noise amplitude presets matching the two refresh flavors.
inline double refresh_noise_default(RefreshPolicy policy) {
  return policy == RefreshPolicy::Standard ? 1e-6 : 1e-9;
}

/// Level guard threshold: the iterative flavor needs one extra level to start.
inline int refresh_start_levels(RefreshPolicy policy) {
  return policy == RefreshPolicy::Standard ? 1 : 2;
}

/// Simulated bootstrap: decrypts internally, perturbs every slot by uniform
/// noise of the given amplitude, and re-encrypts at the refresh level. This
/// preserves level accounting and error dynamics but provides no security;
/// it is only available when the context was built with
/// allow_insecure_refresh.
inline CkksCiphertext refresh(const CkksContext& ctx, const CkksCiphertext& ct,
                              const KeyBundle& keys, Rng& rng,
                              double noise_amplitude) {
  if (!ctx.params().allow_insecure_refresh) {
    throw ConfigError("refresh disabled: context forbids insecure re-encryption");
  }
  if (ct.level < 1) {
    throw LevelExhaustedError(
        "refresh requires one remaining multiplicative level to start");
  }
  const CkksPlaintext pt = decrypt(ctx, ct, keys.sk);
  std::vector<double> values = decode_full_batch(ctx, pt);
  for (auto& v : values) v += rng.symmetric_real(noise_amplitude);

  const long double scale = ctx.scale_at(ctx.refresh_level());
  const std::vector<i64> coeffs = ctx.encoder().encode_full_batch(values, scale);
  CkksPlaintext fresh;
  fresh.poly = ring::RingPoly(ctx.ring_dim(), ctx.refresh_level(),
                              ring::PolyDomain::Coefficient);
  for (size_t j = 0; j < fresh.poly.limb_count(); ++j) {
    const u64 q = ctx.chain().prime(j).q();
    auto& limb = fresh.poly.limb(j);
    for (size_t c = 0; c < coeffs.size(); ++c) {
      const i64 v = coeffs[c];
      if (v >= 0) {
        limb[c] = static_cast<u64>(v) % q;
      } else {
        const u64 r = static_cast<u64>(-v) % q;
        limb[c] = r == 0 ? 0 : q - r;
      }
    }
  }
  fresh.scale = scale;
  fresh.level = ctx.refresh_level();
  fresh.logical_len = ct.logical_len;
  CkksCiphertext out = encrypt(ctx, fresh, keys.pk, rng);
  out.noise_budget_hint = noise_amplitude + detail::fresh_noise_estimate(ctx);
  return out;
}

}  // namespace hesim::ckks

#endif  // HESIM_CKKS_HPP
