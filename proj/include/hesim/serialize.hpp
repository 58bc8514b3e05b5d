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

// Versioned binary serialization. Every object starts with the magic bytes
// "HSIM", a little-endian u16 format version, and a u16 object tag. Integers
// are little-endian; polynomial limbs are stored in level order (q_0 first).
// Round-trips are bit-exact.

#ifndef HESIM_SERIALIZE_HPP
#define HESIM_SERIALIZE_HPP

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include "hesim/ckks.hpp"
#include "hesim/common.hpp"
#include "hesim/secure_array.hpp"

namespace hesim::io {

inline constexpr u16 kFormatVersion = 1;

enum class ObjectTag : u16 {
  Context = 1,
  SecretKey = 2,
  PublicKey = 3,
  RelinKey = 4,
  RotKeySet = 5,
  Plaintext = 6,
  Ciphertext = 7,
  SecureVector = 8,
  SecureMatrix = 9,
};

class ByteWriter {
 public:
  void put_u8(u8 v) { bytes_.push_back(v); }
  void put_u16(u16 v) {
    for (int i = 0; i < 2; ++i) bytes_.push_back(static_cast<u8>(v >> (8 * i)));
  }
  void put_u32(u32 v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<u8>(v >> (8 * i)));
  }
  void put_u64(u64 v) {
    for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<u8>(v >> (8 * i)));
  }
  void put_i32(std::int32_t v) { put_u32(static_cast<u32>(v)); }
  void put_f64(double v) { put_u64(std::bit_cast<u64>(v)); }
  /// long double stored as an exact double-double pair.
  void put_ld(long double v) {
    const double hi = static_cast<double>(v);
    const double lo = static_cast<double>(v - static_cast<long double>(hi));
    put_f64(hi);
    put_f64(lo);
  }
  void put_u64_span(const std::vector<u64>& vs) {
    for (u64 v : vs) put_u64(v);
  }

  const std::vector<u8>& bytes() const { return bytes_; }

 private:
  std::vector<u8> bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(const std::vector<u8>& bytes) : bytes_(bytes) {}

  u8 get_u8() {
    need(1);
    return bytes_[pos_++];
  }
  u16 get_u16() {
    need(2);
    u16 v = 0;
    for (int i = 0; i < 2; ++i) v |= static_cast<u16>(bytes_[pos_++]) << (8 * i);
    return v;
  }
  u32 get_u32() {
    need(4);
    u32 v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<u32>(bytes_[pos_++]) << (8 * i);
    return v;
  }
  u64 get_u64() {
    need(8);
    u64 v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<u64>(bytes_[pos_++]) << (8 * i);
    return v;
  }
  std::int32_t get_i32() { return static_cast<std::int32_t>(get_u32()); }
  double get_f64() { return std::bit_cast<double>(get_u64()); }
  long double get_ld() {
    const double hi = get_f64();
    const double lo = get_f64();
    return static_cast<long double>(hi) + static_cast<long double>(lo);
  }
  std::vector<u64> get_u64_span(size_t count) {
    std::vector<u64> vs(count);
    for (auto& v : vs) v = get_u64();
    return vs;
  }
  bool exhausted() const { return pos_ == bytes_.size(); }

 private:
  void need(size_t n) {
    if (pos_ + n > bytes_.size()) {
      throw SerializeError("serialized data truncated");
    }
  }
  const std::vector<u8>& bytes_;
  size_t pos_ = 0;
};

inline void write_header(ByteWriter& w, ObjectTag tag) {
  w.put_u8('H');
  w.put_u8('S');
  w.put_u8('I');
  w.put_u8('M');
  w.put_u16(kFormatVersion);
  w.put_u16(static_cast<u16>(tag));
}

inline void read_header(ByteReader& r, ObjectTag expected) {
  const u8 m0 = r.get_u8(), m1 = r.get_u8(), m2 = r.get_u8(), m3 = r.get_u8();
  if (m0 != 'H' || m1 != 'S' || m2 != 'I' || m3 != 'M') {
    throw SerializeError("bad magic bytes");
  }
  const u16 version = r.get_u16();
  if (version != kFormatVersion) {
    throw SerializeError("unsupported format version");
  }
  const u16 tag = r.get_u16();
  if (tag != static_cast<u16>(expected)) {
    throw SerializeError("unexpected object tag");
  }
}

// ---------------------------------------------------------------------------
// Ring polynomials

inline void write_ring_poly(ByteWriter& w, const ring::RingPoly& p) {
  w.put_i32(p.active_level());
  w.put_u32(p.ring_dim());
  w.put_u8(static_cast<u8>(p.domain()));
  for (size_t j = 0; j < p.limb_count(); ++j) w.put_u64_span(p.limb(j));
}

inline ring::RingPoly read_ring_poly(ByteReader& r) {
  const int level = r.get_i32();
  const u32 n = r.get_u32();
  if (level < 0 || level > 1024 || !is_power_of_two(n)) {
    throw SerializeError("corrupt polynomial header");
  }
  const auto domain = static_cast<ring::PolyDomain>(r.get_u8());
  ring::RingPoly p(n, level, domain);
  for (size_t j = 0; j < p.limb_count(); ++j) p.limb(j) = r.get_u64_span(n);
  return p;
}

// ---------------------------------------------------------------------------
// Context

inline void write_context(ByteWriter& w, const ckks::CkksContext& ctx) {
  write_header(w, ObjectTag::Context);
  const auto& p = ctx.params();
  w.put_u32(p.ring_dim);
  w.put_u32(p.batch_size);
  w.put_i32(p.max_level);
  w.put_i32(p.refresh_level);
  w.put_i32(p.scale_bits);
  w.put_i32(p.first_modulus_bits);
  w.put_f64(p.error_sigma);
  w.put_u8(p.sparse_secret ? 1 : 0);
  w.put_u32(p.sparse_weight);
  w.put_u8(p.allow_insecure_refresh ? 1 : 0);
  // Primes are regenerated deterministically from the parameters; they are
  // stored anyway so that a reader can detect generator drift.
  w.put_u32(static_cast<u32>(ctx.chain().prime_count()));
  for (size_t j = 0; j < ctx.chain().prime_count(); ++j) {
    w.put_u64(ctx.chain().prime(j).q());
  }
  w.put_u64(ctx.chain().special().q());
}

inline ckks::ContextPtr read_context(ByteReader& r) {
  read_header(r, ObjectTag::Context);
  ckks::ContextParams p;
  p.ring_dim = r.get_u32();
  p.batch_size = r.get_u32();
  p.max_level = r.get_i32();
  p.refresh_level = r.get_i32();
  p.scale_bits = r.get_i32();
  p.first_modulus_bits = r.get_i32();
  p.error_sigma = r.get_f64();
  p.sparse_secret = r.get_u8() != 0;
  p.sparse_weight = r.get_u32();
  p.allow_insecure_refresh = r.get_u8() != 0;
  auto ctx = ckks::make_context(p);
  const u32 count = r.get_u32();
  if (count != ctx->chain().prime_count()) {
    throw SerializeError("prime count mismatch after context rebuild");
  }
  for (u32 j = 0; j < count; ++j) {
    if (r.get_u64() != ctx->chain().prime(j).q()) {
      throw SerializeError("prime mismatch after context rebuild");
    }
  }
  if (r.get_u64() != ctx->chain().special().q()) {
    throw SerializeError("auxiliary prime mismatch after context rebuild");
  }
  return ctx;
}

// ---------------------------------------------------------------------------
// Plaintext / ciphertext

inline void write_plaintext(ByteWriter& w, const ckks::CkksPlaintext& pt) {
  write_header(w, ObjectTag::Plaintext);
  w.put_i32(pt.level);
  w.put_u32(pt.logical_len);
  w.put_ld(pt.scale);
  write_ring_poly(w, pt.poly);
}

inline ckks::CkksPlaintext read_plaintext(ByteReader& r) {
  read_header(r, ObjectTag::Plaintext);
  ckks::CkksPlaintext pt;
  pt.level = r.get_i32();
  pt.logical_len = r.get_u32();
  pt.scale = r.get_ld();
  pt.poly = read_ring_poly(r);
  return pt;
}

inline void write_ciphertext(ByteWriter& w, const ckks::CkksCiphertext& ct) {
  write_header(w, ObjectTag::Ciphertext);
  w.put_i32(ct.level);
  w.put_u32(ct.logical_len);
  w.put_ld(ct.scale);
  w.put_f64(ct.noise_budget_hint);
  write_ring_poly(w, ct.c0);
  write_ring_poly(w, ct.c1);
}

inline ckks::CkksCiphertext read_ciphertext(ByteReader& r) {
  read_header(r, ObjectTag::Ciphertext);
  ckks::CkksCiphertext ct;
  ct.level = r.get_i32();
  ct.logical_len = r.get_u32();
  ct.scale = r.get_ld();
  ct.noise_budget_hint = r.get_f64();
  ct.c0 = read_ring_poly(r);
  ct.c1 = read_ring_poly(r);
  return ct;
}

// ---------------------------------------------------------------------------
// Keys

namespace detail {

inline void write_ext_poly(ByteWriter& w, const ckks::ExtPoly& p) {
  write_ring_poly(w, p.main);
  w.put_u32(static_cast<u32>(p.special_limb.size()));
  w.put_u64_span(p.special_limb);
}

inline ckks::ExtPoly read_ext_poly(ByteReader& r) {
  ckks::ExtPoly p;
  p.main = read_ring_poly(r);
  p.special_limb = r.get_u64_span(r.get_u32());
  return p;
}

inline void write_ksk(ByteWriter& w, const ckks::KskKey& key) {
  w.put_u32(static_cast<u32>(key.size()));
  for (const auto& entry : key) {
    write_ext_poly(w, entry.b);
    write_ext_poly(w, entry.a);
  }
}

inline ckks::KskKey read_ksk(ByteReader& r) {
  ckks::KskKey key(r.get_u32());
  for (auto& entry : key) {
    entry.b = read_ext_poly(r);
    entry.a = read_ext_poly(r);
  }
  return key;
}

}  // namespace detail

inline void write_secret_key(ByteWriter& w, const ckks::SecretKey& sk) {
  write_header(w, ObjectTag::SecretKey);
  detail::write_ext_poly(w, sk.s_coeff);
}

inline ckks::SecretKey read_secret_key(ByteReader& r,
                                       const ckks::CkksContext& ctx) {
  read_header(r, ObjectTag::SecretKey);
  ckks::SecretKey sk;
  sk.s_coeff = detail::read_ext_poly(r);
  if (sk.s_coeff.main.ring_dim() != ctx.ring_dim()) {
    throw SerializeError("secret key ring dimension mismatch");
  }
  sk.s_eval = ckks::detail::ext_to_eval(ctx, sk.s_coeff);
  return sk;
}

inline void write_public_key(ByteWriter& w, const ckks::PublicKey& pk) {
  write_header(w, ObjectTag::PublicKey);
  write_ring_poly(w, pk.pk0);
  write_ring_poly(w, pk.pk1);
}

inline ckks::PublicKey read_public_key(ByteReader& r) {
  read_header(r, ObjectTag::PublicKey);
  ckks::PublicKey pk;
  pk.pk0 = read_ring_poly(r);
  pk.pk1 = read_ring_poly(r);
  return pk;
}

inline void write_relin_key(ByteWriter& w, const ckks::RelinKey& key) {
  write_header(w, ObjectTag::RelinKey);
  detail::write_ksk(w, key.key);
}

inline ckks::RelinKey read_relin_key(ByteReader& r) {
  read_header(r, ObjectTag::RelinKey);
  return ckks::RelinKey{detail::read_ksk(r)};
}

inline void write_rot_keys(ByteWriter& w, const ckks::RotKeySet& set) {
  write_header(w, ObjectTag::RotKeySet);
  w.put_u32(static_cast<u32>(set.by_galois.size()));
  for (const auto& [g, key] : set.by_galois) {
    w.put_u64(g);
    detail::write_ksk(w, key);
  }
}

inline ckks::RotKeySet read_rot_keys(ByteReader& r) {
  read_header(r, ObjectTag::RotKeySet);
  ckks::RotKeySet set;
  const u32 count = r.get_u32();
  for (u32 i = 0; i < count; ++i) {
    const u64 g = r.get_u64();
    set.by_galois.emplace(g, detail::read_ksk(r));
  }
  return set;
}

// ---------------------------------------------------------------------------
// Secure arrays: shape header plus either a ciphertext or plain slots

namespace detail {

inline void write_payload(ByteWriter& w, const secure::SecurePayload& p) {
  w.put_u8(static_cast<u8>(p.kind));
  w.put_i32(p.virtual_level);
  if (p.kind == secure::BackendKind::Encrypted) {
    write_ciphertext(w, p.ct);
  } else {
    w.put_u32(static_cast<u32>(p.plain.size()));
    for (double v : p.plain) w.put_f64(v);
  }
}

inline secure::SecurePayload read_payload(ByteReader& r) {
  secure::SecurePayload p;
  p.kind = static_cast<secure::BackendKind>(r.get_u8());
  p.virtual_level = r.get_i32();
  if (p.kind == secure::BackendKind::Encrypted) {
    p.ct = read_ciphertext(r);
  } else {
    p.plain.resize(r.get_u32());
    for (auto& v : p.plain) v = r.get_f64();
  }
  return p;
}

}  // namespace detail

inline void write_secure_vector(ByteWriter& w, const secure::SecureVector& v) {
  write_header(w, ObjectTag::SecureVector);
  w.put_u32(v.length);
  w.put_u32(v.capacity);
  detail::write_payload(w, v.data);
}

inline secure::SecureVector read_secure_vector(ByteReader& r) {
  read_header(r, ObjectTag::SecureVector);
  secure::SecureVector v;
  v.length = r.get_u32();
  v.capacity = r.get_u32();
  v.data = detail::read_payload(r);
  return v;
}

inline void write_secure_matrix(ByteWriter& w, const secure::SecureMatrix& m) {
  write_header(w, ObjectTag::SecureMatrix);
  w.put_u32(m.nrows);
  w.put_u32(m.ncols);
  w.put_u32(m.capacity);
  detail::write_payload(w, m.data);
}

inline secure::SecureMatrix read_secure_matrix(ByteReader& r) {
  read_header(r, ObjectTag::SecureMatrix);
  secure::SecureMatrix m;
  m.nrows = r.get_u32();
  m.ncols = r.get_u32();
  m.capacity = r.get_u32();
  m.data = detail::read_payload(r);
  return m;
}

// ---------------------------------------------------------------------------
// Files

inline void save_bytes(const std::string& path, const std::vector<u8>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SerializeError("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

inline std::vector<u8> load_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw SerializeError("cannot open for reading: " + path);
  const auto size = in.tellg();
  in.seekg(0);
  std::vector<u8> bytes(static_cast<size_t>(size));
  in.read(reinterpret_cast<char*>(bytes.data()), size);
  return bytes;
}

}  // namespace hesim::io

#endif  // HESIM_SERIALIZE_HPP
