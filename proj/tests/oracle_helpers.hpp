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

// Independent reference implementations used as test oracles. Everything in
// this header is deliberately naive and kept free of the library's own
// arithmetic paths.

#ifndef HESIM_TESTS_ORACLE_HELPERS_HPP
#define HESIM_TESTS_ORACLE_HELPERS_HPP

#include <cmath>
#include <cstdint>
#include <vector>

namespace hesim_test {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Schoolbook negacyclic convolution mod q: c_k = sum_{i+j=k} a_i b_j with
/// X^n = -1 wraparound.
inline std::vector<u64> schoolbook_negacyclic_mul(const std::vector<u64>& a,
                                                  const std::vector<u64>& b,
                                                  u64 q) {
  const size_t n = a.size();
  std::vector<u64> c(n, 0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      const u64 prod = static_cast<u64>((u128(a[i]) * b[j]) % q);
      const size_t k = i + j;
      if (k < n) {
        c[k] = (c[k] + prod) % q;
      } else {
        c[k - n] = (c[k - n] + q - prod) % q;  // negacyclic sign flip
      }
    }
  }
  return c;
}

/// CRT reconstruction of a residue vector into an unsigned 128-bit integer.
/// The product of the moduli must fit in 128 bits.
inline u128 crt_reconstruct_u128(const std::vector<u64>& residues,
                                 const std::vector<u64>& moduli) {
  u128 value = 0;
  u128 modulus = 1;
  for (size_t i = 0; i < residues.size(); ++i) {
    const u64 q = moduli[i];
    // Solve value + modulus * t = residues[i]  (mod q).
    const u64 cur = static_cast<u64>(value % q);
    const u64 m_mod = static_cast<u64>(modulus % q);
    // Modular inverse of m_mod via extended Euclid on 64-bit values.
    auto inv_mod = [](u64 a, u64 m) -> u64 {
      std::int64_t t = 0, new_t = 1;
      std::int64_t r = static_cast<std::int64_t>(m),
                   new_r = static_cast<std::int64_t>(a % m);
      while (new_r != 0) {
        const std::int64_t quot = r / new_r;
        t -= quot * new_t;
        std::swap(t, new_t);
        r -= quot * new_r;
        std::swap(r, new_r);
      }
      if (t < 0) t += static_cast<std::int64_t>(m);
      return static_cast<u64>(t);
    };
    const u64 diff = (residues[i] + q - cur) % q;
    const u64 t = static_cast<u64>((u128(diff) * inv_mod(m_mod, q)) % q);
    value += modulus * t;
    modulus *= q;
  }
  return value;
}

/// Reference circular shift: out[i] = in[(i - k) mod n]; positive k moves
/// elements forward.
template <typename T>
std::vector<T> reference_circshift(const std::vector<T>& in, long long k) {
  const long long n = static_cast<long long>(in.size());
  std::vector<T> out(in.size());
  for (long long i = 0; i < n; ++i) {
    long long src = (i - k) % n;
    if (src < 0) src += n;
    out[static_cast<size_t>(i)] = in[static_cast<size_t>(src)];
  }
  return out;
}

/// Reference 2-D circular shift by k rows and l columns on a row-major
/// matrix: out[i][j] = in[(i - k) mod n][(j - l) mod m].
inline std::vector<std::vector<double>> reference_circshift_2d(
    const std::vector<std::vector<double>>& in, long long k, long long l) {
  const long long n = static_cast<long long>(in.size());
  const long long m = static_cast<long long>(in[0].size());
  std::vector<std::vector<double>> out(in.size(),
                                       std::vector<double>(in[0].size()));
  for (long long i = 0; i < n; ++i) {
    for (long long j = 0; j < m; ++j) {
      long long si = (i - k) % n, sj = (j - l) % m;
      if (si < 0) si += n;
      if (sj < 0) sj += m;
      out[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          in[static_cast<size_t>(si)][static_cast<size_t>(sj)];
    }
  }
  return out;
}

/// Least-squares slope of y against x.
inline double regression_slope(const std::vector<double>& x,
                               const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace hesim_test

#endif  // HESIM_TESTS_ORACLE_HELPERS_HPP
