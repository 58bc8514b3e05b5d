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

#ifndef HESIM_ENCODING_HPP
#define HESIM_ENCODING_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "hesim/common.hpp"

namespace hesim::ckks {

// Canonical-embedding transforms between slot values and integer polynomial
// coefficients.
//
// A real polynomial mu of degree < n_ring is evaluated at the primitive
// 2*n_ring-th roots of unity zeta^(5^j), one per slot. Packing the low and
// high coefficient halves into complex numbers p_k = mu_k + i*mu_{k+n/2}
// turns both directions into a half-size FFT over the 5^j-indexed roots,
// since zeta^(5^j * n/2) = i for every j.
//
// Batches smaller than n_ring/2 are replicated periodically across the full
// slot vector, which keeps CKKS rotations circular with respect to the batch.
class CkksEncoder {
 public:
  using cplx = std::complex<double>;

  CkksEncoder(u32 ring_dim, u32 batch_size)
      : n_(ring_dim), slots_(ring_dim / 2), batch_(batch_size) {
    if (!is_power_of_two(ring_dim) || ring_dim < 8) {
      throw ConfigError("ring dimension must be a power of two >= 8");
    }
    if (!is_power_of_two(batch_size) || batch_size > slots_ || batch_size == 0) {
      throw ConfigError("batch size must be a power of two <= ring_dim / 2");
    }
    const u32 two_n = 2 * n_;
    roots_.resize(two_n);
    for (u32 t = 0; t < two_n; ++t) {
      const double angle = 2.0 * M_PI * static_cast<double>(t) /
                           static_cast<double>(two_n);
      roots_[t] = cplx(std::cos(angle), std::sin(angle));
    }
  }

  u32 ring_dim() const { return n_; }
  u32 slot_count() const { return slots_; }
  u32 batch_size() const { return batch_; }

  /// Encodes up to batch_size real values into rounded integer coefficients
  /// at the given scale. Values are zero-padded to the batch and replicated
  /// across all slots.
  std::vector<i64> encode(const std::vector<double>& values,
                          long double scale) const {
    if (values.size() > batch_) {
      throw ShapeError("encode: more values than the batch size");
    }
    for (double v : values) {
      if (!std::isfinite(v)) throw ConfigError("encode: non-finite input");
    }
    std::vector<cplx> slots(slots_);
    for (u32 j = 0; j < slots_; ++j) {
      const u32 src = j % batch_;
      slots[j] = src < values.size() ? cplx(values[src], 0.0) : cplx(0.0, 0.0);
    }
    return coeffs_from_slots(slots, scale);
  }

  /// Encodes one value per slot without zero-padding (used by refresh, which
  /// must preserve whatever the full batch currently holds).
  std::vector<i64> encode_full_batch(const std::vector<double>& batch_values,
                                     long double scale) const {
    if (batch_values.size() != batch_) {
      throw ShapeError("encode_full_batch: need exactly batch_size values");
    }
    std::vector<cplx> slots(slots_);
    for (u32 j = 0; j < slots_; ++j) {
      slots[j] = cplx(batch_values[j % batch_], 0.0);
    }
    return coeffs_from_slots(slots, scale);
  }

  /// Decodes the first `count` slots from centered coefficients.
  std::vector<double> decode(const std::vector<i64>& coeffs, long double scale,
                             u32 count) const {
    std::vector<cplx> p(slots_);
    for (u32 k = 0; k < slots_; ++k) {
      p[k] = cplx(static_cast<double>(coeffs[k]),
                  static_cast<double>(coeffs[k + slots_]));
    }
    fft(p.data(), slots_);
    std::vector<double> out(count);
    const double inv_scale = static_cast<double>(1.0L / scale);
    for (u32 j = 0; j < count; ++j) out[j] = p[j].real() * inv_scale;
    return out;
  }

 private:
  std::vector<i64> coeffs_from_slots(std::vector<cplx>& slots,
                                     long double scale) const {
    ifft(slots.data(), slots_);
    std::vector<i64> coeffs(n_);
    const double s = static_cast<double>(scale);
    for (u32 k = 0; k < slots_; ++k) {
      coeffs[k] = llround(slots[k].real() * s);
      coeffs[k + slots_] = llround(slots[k].imag() * s);
    }
    return coeffs;
  }

  // Evaluates the degree-<m polynomial `a` at the roots zeta^(5^j mod 4m)
  // scaled into the 2n-th root table; the point set halves under squaring and
  // comes in +/- pairs, which yields the classic radix-2 butterflies.
  void fft(cplx* a, u32 m) const {
    if (m == 1) return;
    const u32 h = m / 2;
    std::vector<cplx> even(h), odd(h);
    for (u32 k = 0; k < h; ++k) {
      even[k] = a[2 * k];
      odd[k] = a[2 * k + 1];
    }
    fft(even.data(), h);
    fft(odd.data(), h);
    const u32 four_m = 4 * m;
    const u32 stride = 2 * n_ / four_m;
    u64 pow5 = 1;
    for (u32 j = 0; j < h; ++j) {
      const cplx t = roots_[static_cast<u32>(pow5) * stride] * odd[j];
      a[j] = even[j] + t;
      a[j + h] = even[j] - t;
      pow5 = (pow5 * 5) % four_m;
    }
  }

  void ifft(cplx* a, u32 m) const {
    if (m == 1) return;
    const u32 h = m / 2;
    std::vector<cplx> even(h), odd(h);
    const u32 four_m = 4 * m;
    const u32 stride = 2 * n_ / four_m;
    u64 pow5 = 1;
    for (u32 j = 0; j < h; ++j) {
      even[j] = 0.5 * (a[j] + a[j + h]);
      odd[j] = 0.5 * (a[j] - a[j + h]) *
               std::conj(roots_[static_cast<u32>(pow5) * stride]);
      pow5 = (pow5 * 5) % four_m;
    }
    ifft(even.data(), h);
    ifft(odd.data(), h);
    for (u32 k = 0; k < h; ++k) {
      a[2 * k] = even[k];
      a[2 * k + 1] = odd[k];
    }
  }

  u32 n_;
  u32 slots_;
  u32 batch_;
  std::vector<cplx> roots_;
};

}  // namespace hesim::ckks

#endif  // HESIM_ENCODING_HPP
