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

#ifndef HESIM_COMMON_HPP
#define HESIM_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hesim {

using u8 = std::uint8_t;
using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Base class for all errors thrown by this library.
class HesimError : public std::runtime_error {
 public:
  explicit HesimError(const std::string& what) : std::runtime_error(what) {}
};

/// A polynomial was used in the wrong representation (coefficient vs. NTT).
class DomainMismatchError : public HesimError {
 public:
  explicit DomainMismatchError(const std::string& what) : HesimError(what) {}
};

/// Operands live at incompatible levels or belong to different contexts.
class LevelMismatchError : public HesimError {
 public:
  explicit LevelMismatchError(const std::string& what) : HesimError(what) {}
};

/// No multiplicative level left; a refresh would be required to continue.
class LevelExhaustedError : public HesimError {
 public:
  explicit LevelExhaustedError(const std::string& what) : HesimError(what) {}
};

/// Rotation requested for an index whose evaluation key was never generated.
class MissingRotationKeyError : public HesimError {
 public:
  explicit MissingRotationKeyError(const std::string& what)
      : HesimError(what) {}
};

/// Vector/matrix shapes do not match, or data does not fit its capacity.
class ShapeError : public HesimError {
 public:
  explicit ShapeError(const std::string& what) : HesimError(what) {}
};

/// Invalid user-supplied configuration.
class ConfigError : public HesimError {
 public:
  explicit ConfigError(const std::string& what) : HesimError(what) {}
};

/// Malformed or incompatible serialized data.
class SerializeError : public HesimError {
 public:
  explicit SerializeError(const std::string& what) : HesimError(what) {}
};

inline constexpr bool is_power_of_two(u64 n) { return n != 0 && (n & (n - 1)) == 0; }

inline constexpr u64 next_power_of_two(u64 n) {
  u64 p = 1;
  while (p < n) p <<= 1;
  return p;
}

inline constexpr int log2_exact(u64 n) {
  int k = 0;
  while ((u64{1} << k) < n) ++k;
  return k;
}

}  // namespace hesim

#endif  // HESIM_COMMON_HPP
