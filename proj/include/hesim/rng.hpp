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

#ifndef HESIM_RNG_HPP
#define HESIM_RNG_HPP

#include <random>

#include "hesim/common.hpp"

namespace hesim {

// Seedable generator with hand-rolled distributions. std::mt19937_64 output is
// pinned by the standard, and the sampling routines below avoid
// std::*_distribution, so identical seeds replay identical streams on every
// platform.
class Rng {
 public:
  explicit Rng(u64 seed) : eng_(seed) {}

  u64 next_u64() { return eng_(); }

  /// Uniform value in [0, bound) by rejection; bound must be nonzero.
  u64 uniform_below(u64 bound) {
    // Largest multiple of bound that fits in 64 bits.
    const u64 limit = bound * (~u64{0} / bound);
    u64 x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double unit_real() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [-amplitude, amplitude].
  double symmetric_real(double amplitude) {
    return (2.0 * unit_real() - 1.0) * amplitude;
  }

  /// Centered binomial sample with parameter k: sum of k coin differences.
  /// Standard deviation sqrt(k/2); support [-k, k]. Requires k <= 32.
  int centered_binomial(int k) {
    const u64 bits = eng_();
    const u64 mask = (k == 32) ? 0xffffffffu : ((u64{1} << k) - 1);
    const int a = __builtin_popcountll(bits & mask);
    const int b = __builtin_popcountll((bits >> 32) & mask);
    return a - b;
  }

  /// Derive an independent child seed; used to give parallel cells their own
  /// deterministic streams.
  u64 fork_seed() { return eng_() ^ 0x9e3779b97f4a7c15ull; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace hesim

#endif  // HESIM_RNG_HPP
