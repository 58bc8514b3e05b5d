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

// Backend-agnostic secure vectors and matrices: circular shifts built from
// rotations and binary masks, column-major matrix packing, element-wise
// arithmetic, and level-guarded refresh. The Exact backend executes the same
// control flow on plain arrays with a virtual level ledger, so both backends
// traverse identical schedules and report identical operation counts.

#ifndef HESIM_SECURE_ARRAY_HPP
#define HESIM_SECURE_ARRAY_HPP

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <tuple>
#include <vector>

#include "hesim/ckks.hpp"
#include "hesim/common.hpp"

namespace hesim::secure {

enum class BackendKind : u8 { Exact = 0, Encrypted = 1 };

struct OpCounters {
  u64 adds = 0;
  u64 mults = 0;
  u64 rotates = 0;
  u64 bootstraps = 0;

  OpCounters delta_since(const OpCounters& base) const {
    return {adds - base.adds, mults - base.mults, rotates - base.rotates,
            bootstraps - base.bootstraps};
  }
  bool operator==(const OpCounters&) const = default;
};

// Cache of encoded {0,1} masks, keyed by the index pattern and the level the
// mask will be multiplied at. Filled during setup; lookups afterwards are
// read-mostly and guarded by a mutex for concurrent use.
class MaskCache {
 public:
  struct Key {
    u32 first;    // 1-indexed inclusive range within one block
    u32 last;
    u32 block;    // block length (capacity for vectors, nrows for matrices)
    u32 repeats;  // number of blocks
    int level;
    auto operator<=>(const Key&) const = default;
  };

  const ckks::CkksPlaintext& get(const ckks::CkksContext& ctx, const Key& key) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(key, build(ctx, key)).first;
    }
    return it->second;
  }

  static std::vector<double> mask_values(const Key& key, u32 capacity) {
    std::vector<double> mask(capacity, 0.0);
    for (u32 rep = 0; rep < key.repeats; ++rep) {
      for (u32 i = key.first; i <= key.last; ++i) {
        mask[rep * key.block + (i - 1)] = 1.0;
      }
    }
    return mask;
  }

 private:
  static ckks::CkksPlaintext build(const ckks::CkksContext& ctx,
                                   const Key& key) {
    ckks::CkksPlaintext pt = ckks::encode(
        ctx, mask_values(key, ctx.batch_size()), key.level);
    // Cached in the evaluation domain so repeated multiplications skip the
    // forward transform.
    pt.poly = ring::to_domain(ctx.chain(), pt.poly,
                              ring::PolyDomain::Evaluation);
    return pt;
  }

  std::mutex mutex_;
  std::map<Key, ckks::CkksPlaintext> cache_;
};

// Setup-time probe: records which rotation indices and mask patterns a piece
// of code touches, so keys and mask encodings can be prepared ahead of the
// steady-state loop.
struct OpRecorder {
  std::set<int> rotation_indices;
  std::set<MaskCache::Key> mask_patterns;  // level field zeroed
};

class Backend {
 public:
  static Backend exact(int max_level, int refresh_level) {
    Backend b;
    b.kind_ = BackendKind::Exact;
    b.max_level_ = max_level;
    b.refresh_level_ = refresh_level;
    b.counters_ = std::make_shared<OpCounters>();
    return b;
  }

  static Backend encrypted(ckks::ContextPtr ctx,
                           std::shared_ptr<ckks::KeyBundle> keys,
                           std::shared_ptr<ckks::RotKeySet> rot_keys, u64 seed,
                           double eps_boot = 1e-6,
                           ckks::RefreshPolicy policy =
                               ckks::RefreshPolicy::Standard) {
    Backend b;
    b.kind_ = BackendKind::Encrypted;
    b.ctx_ = std::move(ctx);
    b.keys_ = std::move(keys);
    b.rot_keys_ = std::move(rot_keys);
    b.rng_ = std::make_shared<Rng>(seed);
    b.eps_boot_ = eps_boot;
    b.policy_ = policy;
    b.max_level_ = b.ctx_->max_level();
    b.refresh_level_ = b.ctx_->refresh_level();
    b.counters_ = std::make_shared<OpCounters>();
    b.masks_ = std::make_shared<MaskCache>();
    return b;
  }

  BackendKind kind() const { return kind_; }
  bool is_encrypted() const { return kind_ == BackendKind::Encrypted; }
  int max_level() const { return max_level_; }
  int refresh_level() const { return refresh_level_; }
  double eps_boot() const { return eps_boot_; }
  ckks::RefreshPolicy refresh_policy() const { return policy_; }

  const ckks::CkksContext& ctx() const { return *ctx_; }
  const ckks::KeyBundle& keys() const { return *keys_; }
  const ckks::RotKeySet& rot_keys() const { return *rot_keys_; }
  Rng& rng() const { return *rng_; }
  MaskCache& masks() const { return *masks_; }
  OpCounters& counters() const { return *counters_; }
  void reset_counters() const { *counters_ = OpCounters{}; }

  void attach_recorder(std::shared_ptr<OpRecorder> rec) {
    recorder_ = std::move(rec);
  }
  OpRecorder* recorder() const { return recorder_.get(); }

 private:
  BackendKind kind_ = BackendKind::Exact;
  int max_level_ = 0;
  int refresh_level_ = 0;
  double eps_boot_ = 1e-6;
  ckks::RefreshPolicy policy_ = ckks::RefreshPolicy::Standard;
  ckks::ContextPtr ctx_;
  std::shared_ptr<ckks::KeyBundle> keys_;
  std::shared_ptr<ckks::RotKeySet> rot_keys_;
  std::shared_ptr<Rng> rng_;
  std::shared_ptr<OpCounters> counters_;
  std::shared_ptr<MaskCache> masks_;
  std::shared_ptr<OpRecorder> recorder_;
};

// Payload shared by vectors and matrices: either a ciphertext or a plain
// slot array with a virtual level counter mirroring the encrypted ledger.
struct SecurePayload {
  BackendKind kind = BackendKind::Exact;
  std::vector<double> plain;
  ckks::CkksCiphertext ct;
  int virtual_level = 0;
};

struct SecureVector {
  SecurePayload data;
  u32 length = 0;
  u32 capacity = 0;
};

struct SecureMatrix {
  SecurePayload data;
  u32 nrows = 0;
  u32 ncols = 0;
  u32 capacity = 0;
};

inline int levels_remaining(const SecurePayload& p) {
  return p.kind == BackendKind::Exact ? p.virtual_level : p.ct.level;
}
inline int levels_remaining(const SecureVector& v) {
  return levels_remaining(v.data);
}
inline int levels_remaining(const SecureMatrix& m) {
  return levels_remaining(m.data);
}

/// Smallest power of two that can hold `length` slots.
inline u32 default_capacity(u32 length) {
  return static_cast<u32>(next_power_of_two(length));
}

// ---------------------------------------------------------------------------
// Encode / decode at the array level

namespace detail {

inline SecurePayload make_payload(const Backend& b,
                                  const std::vector<double>& slots) {
  SecurePayload p;
  p.kind = b.kind();
  if (b.is_encrypted()) {
    std::vector<double> data = slots;
    data.resize(b.ctx().batch_size(), 0.0);
    const ckks::CkksPlaintext pt =
        ckks::encode(b.ctx(), data, b.ctx().max_level());
    p.ct = ckks::encrypt(b.ctx(), pt, b.keys().pk, b.rng());
  } else {
    p.plain = slots;
    p.virtual_level = b.max_level();
  }
  return p;
}

}  // namespace detail

inline SecureVector enc_vector(const Backend& b,
                               const std::vector<double>& data,
                               u32 capacity = 0) {
  if (data.empty()) throw ShapeError("enc_vector: data must be nonempty");
  if (capacity == 0) capacity = default_capacity(static_cast<u32>(data.size()));
  if (capacity < data.size()) {
    throw ShapeError("enc_vector: data exceeds capacity");
  }
  if (b.is_encrypted() && capacity != b.ctx().batch_size()) {
    throw ShapeError("enc_vector: capacity must equal the context batch size");
  }
  SecureVector v;
  v.length = static_cast<u32>(data.size());
  v.capacity = capacity;
  std::vector<double> slots = data;
  slots.resize(capacity, 0.0);
  v.data = detail::make_payload(b, slots);
  if (b.is_encrypted()) v.data.ct.logical_len = v.length;
  return v;
}

inline std::vector<double> dec_vector(const Backend& b, const SecureVector& v) {
  if (b.is_encrypted()) {
    ckks::CkksPlaintext pt = ckks::decrypt(b.ctx(), v.data.ct, b.keys().sk);
    pt.logical_len = v.length;
    return ckks::decode(b.ctx(), pt);
  }
  return {v.data.plain.begin(), v.data.plain.begin() + v.length};
}

/// Packs a row-major matrix column by column into a single logical vector:
/// element (i, j) lives at slot j*nrows + i.
inline SecureMatrix enc_matrix(const Backend& b,
                               const std::vector<std::vector<double>>& rows,
                               u32 capacity = 0) {
  if (rows.empty() || rows[0].empty()) {
    throw ShapeError("enc_matrix: data must be nonempty");
  }
  const u32 n = static_cast<u32>(rows.size());
  const u32 m = static_cast<u32>(rows[0].size());
  for (const auto& r : rows) {
    if (r.size() != m) throw ShapeError("enc_matrix: ragged rows");
  }
  if (capacity == 0) capacity = default_capacity(n * m);
  if (capacity < n * m) throw ShapeError("enc_matrix: data exceeds capacity");
  if (b.is_encrypted() && capacity != b.ctx().batch_size()) {
    throw ShapeError("enc_matrix: capacity must equal the context batch size");
  }
  std::vector<double> slots(capacity, 0.0);
  for (u32 j = 0; j < m; ++j) {
    for (u32 i = 0; i < n; ++i) slots[j * n + i] = rows[i][j];
  }
  SecureMatrix out;
  out.nrows = n;
  out.ncols = m;
  out.capacity = capacity;
  out.data = detail::make_payload(b, slots);
  if (b.is_encrypted()) out.data.ct.logical_len = n * m;
  return out;
}

inline std::vector<std::vector<double>> dec_matrix(const Backend& b,
                                                   const SecureMatrix& mt) {
  std::vector<double> packed;
  if (b.is_encrypted()) {
    ckks::CkksPlaintext pt = ckks::decrypt(b.ctx(), mt.data.ct, b.keys().sk);
    pt.logical_len = mt.nrows * mt.ncols;
    packed = ckks::decode(b.ctx(), pt);
  } else {
    packed.assign(mt.data.plain.begin(),
                  mt.data.plain.begin() + mt.nrows * mt.ncols);
  }
  std::vector<std::vector<double>> rows(mt.nrows,
                                        std::vector<double>(mt.ncols));
  for (u32 j = 0; j < mt.ncols; ++j) {
    for (u32 i = 0; i < mt.nrows; ++i) rows[i][j] = packed[j * mt.nrows + i];
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Raw counted operations (single choke points for both backends)

namespace detail {

inline void check_same_backend(const SecurePayload& a, const SecurePayload& b) {
  if (a.kind != b.kind) {
    throw ShapeError("operands live on different backends");
  }
}

/// CKKS rotation semantics: slot j receives slot (j + k) mod capacity.
inline SecurePayload raw_rotate(const Backend& b, const SecurePayload& p,
                                int k, u32 capacity) {
  const int kn =
      ((k % static_cast<int>(capacity)) + static_cast<int>(capacity)) %
      static_cast<int>(capacity);
  if (kn == 0) return p;
  b.counters().rotates += 1;
  if (auto* rec = b.recorder()) rec->rotation_indices.insert(kn);
  SecurePayload out = p;
  if (p.kind == BackendKind::Encrypted) {
    out.ct = ckks::rotate(b.ctx(), p.ct, kn, b.rot_keys());
  } else {
    for (u32 j = 0; j < capacity; ++j) {
      out.plain[j] = p.plain[(j + static_cast<u32>(kn)) % capacity];
    }
  }
  return out;
}

inline SecurePayload raw_mask_mul(const Backend& b, const SecurePayload& p,
                                  const MaskCache::Key& key, u32 capacity) {
  b.counters().mults += 1;
  if (auto* rec = b.recorder()) {
    MaskCache::Key pattern = key;
    pattern.level = 0;
    rec->mask_patterns.insert(pattern);
  }
  SecurePayload out = p;
  if (p.kind == BackendKind::Encrypted) {
    MaskCache::Key leveled = key;
    leveled.level = p.ct.level;
    out.ct = ckks::mul_plain(b.ctx(), p.ct, b.masks().get(b.ctx(), leveled));
  } else {
    if (p.virtual_level < 1) {
      throw LevelExhaustedError("mask multiply: no level left");
    }
    const std::vector<double> mask = MaskCache::mask_values(key, capacity);
    for (u32 j = 0; j < capacity; ++j) out.plain[j] = p.plain[j] * mask[j];
    out.virtual_level -= 1;
  }
  return out;
}

inline SecurePayload raw_add(const Backend& b, const SecurePayload& x,
                             const SecurePayload& y) {
  check_same_backend(x, y);
  b.counters().adds += 1;
  SecurePayload out = x;
  if (x.kind == BackendKind::Encrypted) {
    out.ct = ckks::add(b.ctx(), x.ct, y.ct);
  } else {
    out.virtual_level = std::min(x.virtual_level, y.virtual_level);
    for (size_t j = 0; j < out.plain.size(); ++j) {
      out.plain[j] = x.plain[j] + y.plain[j];
    }
  }
  return out;
}

inline SecurePayload raw_sub(const Backend& b, const SecurePayload& x,
                             const SecurePayload& y) {
  check_same_backend(x, y);
  b.counters().adds += 1;
  SecurePayload out = x;
  if (x.kind == BackendKind::Encrypted) {
    out.ct = ckks::sub(b.ctx(), x.ct, y.ct);
  } else {
    out.virtual_level = std::min(x.virtual_level, y.virtual_level);
    for (size_t j = 0; j < out.plain.size(); ++j) {
      out.plain[j] = x.plain[j] - y.plain[j];
    }
  }
  return out;
}

inline SecurePayload raw_hadamard(const Backend& b, const SecurePayload& x,
                                  const SecurePayload& y) {
  check_same_backend(x, y);
  b.counters().mults += 1;
  SecurePayload out = x;
  if (x.kind == BackendKind::Encrypted) {
    out.ct = ckks::mul(b.ctx(), x.ct, y.ct, b.keys().relin);
  } else {
    const int level = std::min(x.virtual_level, y.virtual_level);
    if (level < 1) throw LevelExhaustedError("hadamard: no level left");
    out.virtual_level = level - 1;
    for (size_t j = 0; j < out.plain.size(); ++j) {
      out.plain[j] = x.plain[j] * y.plain[j];
    }
  }
  return out;
}

inline SecurePayload raw_scale(const Backend& b, const SecurePayload& p,
                               double scalar) {
  b.counters().mults += 1;
  SecurePayload out = p;
  if (p.kind == BackendKind::Encrypted) {
    out.ct = ckks::mul_scalar(b.ctx(), p.ct, scalar);
  } else {
    if (p.virtual_level < 1) {
      throw LevelExhaustedError("scale_by: no level left");
    }
    out.virtual_level -= 1;
    for (auto& v : out.plain) v *= scalar;
  }
  return out;
}

inline SecurePayload raw_add_const(const Backend& b, const SecurePayload& p,
                                   double scalar) {
  b.counters().adds += 1;
  SecurePayload out = p;
  if (p.kind == BackendKind::Encrypted) {
    out.ct = ckks::add_scalar(b.ctx(), p.ct, scalar);
  } else {
    for (auto& v : out.plain) v += scalar;
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Circular shifts

/// Circular shift of the logical data: positive k moves elements forward.
/// A full-capacity vector is one rotation (zero levels); otherwise two
/// rotations are combined through a pair of complementary masks (one level).
inline SecureVector circshift(const Backend& b, const SecureVector& x,
                              long long k) {
  const long long len = static_cast<long long>(x.length);
  const u32 kn = static_cast<u32>(((k % len) + len) % len);
  if (kn == 0) return x;
  SecureVector out = x;
  if (x.length == x.capacity) {
    out.data = detail::raw_rotate(b, x.data, -static_cast<int>(kn), x.capacity);
    return out;
  }
  const SecurePayload u =
      detail::raw_rotate(b, x.data, -static_cast<int>(kn), x.capacity);
  const SecurePayload v = detail::raw_rotate(
      b, x.data, static_cast<int>(x.length - kn), x.capacity);
  const MaskCache::Key m1{kn + 1, x.length, x.capacity, 1, 0};
  const MaskCache::Key m2{1, kn, x.capacity, 1, 0};
  const SecurePayload u_masked = detail::raw_mask_mul(b, u, m1, x.capacity);
  const SecurePayload v_masked = detail::raw_mask_mul(b, v, m2, x.capacity);
  out.data = detail::raw_add(b, u_masked, v_masked);
  return out;
}

namespace detail {

inline SecureVector as_vector(const SecureMatrix& m) {
  SecureVector v;
  v.data = m.data;
  v.length = m.nrows * m.ncols;
  v.capacity = m.capacity;
  return v;
}

inline SecureMatrix as_matrix(const SecureVector& v, u32 nrows, u32 ncols) {
  SecureMatrix m;
  m.data = v.data;
  m.nrows = nrows;
  m.ncols = ncols;
  m.capacity = v.capacity;
  return m;
}

}  // namespace detail

/// Circular shift of a packed matrix by k rows and l columns. Row shifts mask
/// the wrapped and unwrapped parts of every column, then move both parts with
/// one combined packed-vector shift each.
inline SecureMatrix circshift(const Backend& b, const SecureMatrix& x,
                              long long k, long long l) {
  const long long n = static_cast<long long>(x.nrows);
  const long long m = static_cast<long long>(x.ncols);
  const u32 kn = static_cast<u32>(((k % n) + n) % n);
  const u32 ln = static_cast<u32>(((l % m) + m) % m);
  if (kn == 0) {
    if (ln == 0) return x;
    return detail::as_matrix(
        circshift(b, detail::as_vector(x), static_cast<long long>(ln) * n),
        x.nrows, x.ncols);
  }
  // Column-local masks: rows 1..n-k keep the straight part, rows n-k+1..n
  // wrap around within their column.
  const MaskCache::Key m1{1, x.nrows - kn, x.nrows, x.ncols, 0};
  const MaskCache::Key m2{x.nrows - kn + 1, x.nrows, x.nrows, x.ncols, 0};
  const SecurePayload u_masked =
      detail::raw_mask_mul(b, x.data, m1, x.capacity);
  const SecurePayload v_masked =
      detail::raw_mask_mul(b, x.data, m2, x.capacity);
  const long long s1 = static_cast<long long>(ln) * n + kn;
  const long long s2 = s1 - n;
  SecureMatrix out = x;
  if (ln == 0) {
    const SecurePayload a = detail::raw_rotate(
        b, u_masked, static_cast<int>(-s1), x.capacity);
    const SecurePayload c = detail::raw_rotate(
        b, v_masked, static_cast<int>(-s2), x.capacity);
    out.data = detail::raw_add(b, a, c);
    return out;
  }
  SecureVector uv = detail::as_vector(x);
  uv.data = u_masked;
  SecureVector vv = detail::as_vector(x);
  vv.data = v_masked;
  const SecureVector a = circshift(b, uv, s1);
  const SecureVector c = circshift(b, vv, s2);
  out.data = detail::raw_add(b, a.data, c.data);
  return out;
}

// ---------------------------------------------------------------------------
// Element-wise arithmetic

namespace detail {
inline void check_same_shape(const SecureVector& a, const SecureVector& b) {
  if (a.length != b.length || a.capacity != b.capacity) {
    throw ShapeError("secure vectors have different shapes");
  }
}
inline void check_same_shape(const SecureMatrix& a, const SecureMatrix& b) {
  if (a.nrows != b.nrows || a.ncols != b.ncols || a.capacity != b.capacity) {
    throw ShapeError("secure matrices have different shapes");
  }
}
}  // namespace detail

inline SecureVector ew_add(const Backend& b, const SecureVector& x,
                           const SecureVector& y) {
  detail::check_same_shape(x, y);
  SecureVector out = x;
  out.data = detail::raw_add(b, x.data, y.data);
  return out;
}
inline SecureVector ew_sub(const Backend& b, const SecureVector& x,
                           const SecureVector& y) {
  detail::check_same_shape(x, y);
  SecureVector out = x;
  out.data = detail::raw_sub(b, x.data, y.data);
  return out;
}
inline SecureVector ew_mul(const Backend& b, const SecureVector& x,
                           const SecureVector& y) {
  detail::check_same_shape(x, y);
  SecureVector out = x;
  out.data = detail::raw_hadamard(b, x.data, y.data);
  return out;
}
inline SecureVector scale_by(const Backend& b, const SecureVector& x,
                             double scalar) {
  SecureVector out = x;
  out.data = detail::raw_scale(b, x.data, scalar);
  return out;
}
inline SecureVector add_const(const Backend& b, const SecureVector& x,
                              double scalar) {
  SecureVector out = x;
  out.data = detail::raw_add_const(b, x.data, scalar);
  return out;
}

inline SecureMatrix ew_add(const Backend& b, const SecureMatrix& x,
                           const SecureMatrix& y) {
  detail::check_same_shape(x, y);
  SecureMatrix out = x;
  out.data = detail::raw_add(b, x.data, y.data);
  return out;
}
inline SecureMatrix ew_sub(const Backend& b, const SecureMatrix& x,
                           const SecureMatrix& y) {
  detail::check_same_shape(x, y);
  SecureMatrix out = x;
  out.data = detail::raw_sub(b, x.data, y.data);
  return out;
}
inline SecureMatrix ew_mul(const Backend& b, const SecureMatrix& x,
                           const SecureMatrix& y) {
  detail::check_same_shape(x, y);
  SecureMatrix out = x;
  out.data = detail::raw_hadamard(b, x.data, y.data);
  return out;
}
inline SecureMatrix scale_by(const Backend& b, const SecureMatrix& x,
                             double scalar) {
  SecureMatrix out = x;
  out.data = detail::raw_scale(b, x.data, scalar);
  return out;
}
inline SecureMatrix add_const(const Backend& b, const SecureMatrix& x,
                              double scalar) {
  SecureMatrix out = x;
  out.data = detail::raw_add_const(b, x.data, scalar);
  return out;
}

// ---------------------------------------------------------------------------
// Refresh

namespace detail {
inline SecurePayload refresh_payload(const Backend& b, const SecurePayload& p) {
  b.counters().bootstraps += 1;
  SecurePayload out = p;
  if (p.kind == BackendKind::Encrypted) {
    out.ct = ckks::refresh(b.ctx(), p.ct, b.keys(), b.rng(), b.eps_boot());
  } else {
    if (p.virtual_level < 1) {
      throw LevelExhaustedError(
          "refresh requires one remaining multiplicative level to start");
    }
    out.virtual_level = b.refresh_level();
  }
  return out;
}
}  // namespace detail

inline SecureVector refresh(const Backend& b, const SecureVector& x) {
  SecureVector out = x;
  out.data = detail::refresh_payload(b, x.data);
  return out;
}
inline SecureMatrix refresh(const Backend& b, const SecureMatrix& x) {
  SecureMatrix out = x;
  out.data = detail::refresh_payload(b, x.data);
  return out;
}

/// Refreshes exactly when the next step (which needs l_step levels) would
/// leave fewer levels than the refresh start requirement.
template <typename SecureArray>
SecureArray maybe_refresh(const Backend& b, const SecureArray& x, int l_step) {
  const int start = ckks::refresh_start_levels(b.refresh_policy());
  if (levels_remaining(x) - l_step < start) return refresh(b, x);
  return x;
}

template <typename SecureArray>
bool needs_refresh(const Backend& b, const SecureArray& x, int l_step) {
  return levels_remaining(x) - l_step <
         ckks::refresh_start_levels(b.refresh_policy());
}

}  // namespace hesim::secure

#endif  // HESIM_SECURE_ARRAY_HPP
