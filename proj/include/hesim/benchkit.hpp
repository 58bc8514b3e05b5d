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

// Primitive-operation benchmark harness: per-operation L-infinity error
// against the unencrypted reference and wall time, swept over the maximum
// multiplicative depth. Test data follows the fixed vectors used throughout:
// the length-64 sine ramp, the constant vector 1 + pi/30, and the scalar
// 1 + pi/30.

#ifndef HESIM_BENCHKIT_HPP
#define HESIM_BENCHKIT_HPP

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "hesim/ckks.hpp"
#include "hesim/common.hpp"

namespace hesim::benchkit {

enum class BenchOp {
  Encode,
  EncryptDecrypt,
  AddCC,
  AddCP,
  AddCS,
  MulCC,
  MulCP,
  MulCS,
  RotateM1,
  Rotate5,
  RotateM25,
  Refresh,
};

inline const std::vector<BenchOp>& all_bench_ops() {
  static const std::vector<BenchOp> ops = {
      BenchOp::Encode,   BenchOp::EncryptDecrypt, BenchOp::AddCC,
      BenchOp::AddCP,    BenchOp::AddCS,          BenchOp::MulCC,
      BenchOp::MulCP,    BenchOp::MulCS,          BenchOp::RotateM1,
      BenchOp::Rotate5,  BenchOp::RotateM25,      BenchOp::Refresh,
  };
  return ops;
}

inline std::string bench_op_name(BenchOp op) {
  switch (op) {
    case BenchOp::Encode: return "encode";
    case BenchOp::EncryptDecrypt: return "encrypt_decrypt";
    case BenchOp::AddCC: return "add_cc";
    case BenchOp::AddCP: return "add_cp";
    case BenchOp::AddCS: return "add_cs";
    case BenchOp::MulCC: return "mul_cc";
    case BenchOp::MulCP: return "mul_cp";
    case BenchOp::MulCS: return "mul_cs";
    case BenchOp::RotateM1: return "rotate_m1";
    case BenchOp::Rotate5: return "rotate_5";
    case BenchOp::RotateM25: return "rotate_m25";
    case BenchOp::Refresh: return "refresh";
  }
  return "?";
}

inline BenchOp bench_op_from_name(const std::string& name) {
  for (BenchOp op : all_bench_ops()) {
    if (bench_op_name(op) == name) return op;
  }
  throw ConfigError("unknown benchmark op: " + name);
}

struct BenchSpec {
  std::vector<BenchOp> ops = all_bench_ops();
  std::vector<int> depths = {5, 13, 21, 29};
  int repetitions = 5;  // averaging window, at least 5
  bool correlated = false;
  u32 ring_dim = u32{1} << 13;
  int scale_bits = 40;
  u32 batch = 64;
  double eps_boot = 1e-6;
  u64 seed = 1;

  void validate() const {
    if (repetitions < 5) throw ConfigError("repetitions must be >= 5");
    if (ops.empty() || depths.empty()) {
      throw ConfigError("bench spec needs ops and depths");
    }
  }
};

struct ReportRow {
  std::string op;
  int l_max = 0;
  int rep = 0;
  double error = 0;
  double seconds = 0;
  int levels_consumed = 0;
};

namespace detail {

inline std::vector<double> sine_vector(u32 len) {
  std::vector<double> v(len);
  for (u32 i = 0; i < len; ++i) {
    v[i] = std::sin(2.0 * M_PI * static_cast<double>(i + 1) /
                    static_cast<double>(len));
  }
  return v;
}

inline double linf(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace detail

/// Runs one (op, depth) cell: `repetitions` timed executions with the error
/// measured against plain double arithmetic on the same data.
inline std::vector<ReportRow> run_bench_cell(BenchOp op, int depth,
                                             const BenchSpec& spec) {
  ckks::ContextParams params;
  params.ring_dim = spec.ring_dim;
  params.batch_size = spec.batch;
  params.max_level = depth;
  params.refresh_level = std::max(1, depth - 2);
  params.scale_bits = spec.scale_bits;
  const auto ctx = ckks::make_context(params);
  // Per-cell seed derived from (op, depth) so cells are order-independent.
  Rng rng(spec.seed * 1000003 + static_cast<u64>(op) * 131 +
          static_cast<u64>(depth));
  const ckks::KeyBundle keys = ckks::keygen(*ctx, rng);
  ckks::RotKeySet rot;
  if (op == BenchOp::RotateM1 || op == BenchOp::Rotate5 ||
      op == BenchOp::RotateM25) {
    rot = ckks::rotation_keygen(*ctx, keys.sk, {-1, 5, -25}, rng);
  }

  const std::vector<double> main_data = detail::sine_vector(spec.batch);
  const double scalar = 1.0 + M_PI / 30.0;
  const std::vector<double> const_vec(spec.batch, scalar);
  const ckks::CkksPlaintext pt_main = ckks::encode(*ctx, main_data, depth);
  const ckks::CkksPlaintext pt_const = ckks::encode(*ctx, const_vec, depth);
  const ckks::CkksCiphertext ct_main =
      ckks::encrypt(*ctx, pt_main, keys.pk, rng);
  ckks::CkksCiphertext ct_other = ckks::encrypt(*ctx, pt_const, keys.pk, rng);

  std::vector<ReportRow> rows;
  for (int rep = 0; rep < spec.repetitions; ++rep) {
    if (!spec.correlated &&
        (op == BenchOp::AddCC || op == BenchOp::MulCC)) {
      ct_other = ckks::encrypt(*ctx, pt_const, keys.pk, rng);
    }
    ReportRow row;
    row.op = bench_op_name(op);
    row.l_max = depth;
    row.rep = rep;

    std::vector<double> reference = main_data;
    std::vector<double> result;
    const double t0 = detail::now_seconds();
    int level_after = depth;
    switch (op) {
      case BenchOp::Encode: {
        const ckks::CkksPlaintext pt = ckks::encode(*ctx, main_data, depth);
        row.seconds = detail::now_seconds() - t0;
        result = ckks::decode(*ctx, pt);
        break;
      }
      case BenchOp::EncryptDecrypt: {
        const ckks::CkksCiphertext ct =
            ckks::encrypt(*ctx, pt_main, keys.pk, rng);
        const ckks::CkksPlaintext pt = ckks::decrypt(*ctx, ct, keys.sk);
        row.seconds = detail::now_seconds() - t0;
        result = ckks::decode(*ctx, pt);
        level_after = ct.level;
        break;
      }
      case BenchOp::AddCC: {
        const auto out = ckks::add(*ctx, ct_main, ct_other);
        row.seconds = detail::now_seconds() - t0;
        for (u32 i = 0; i < spec.batch; ++i) reference[i] += scalar;
        result = ckks::decode(*ctx, ckks::decrypt(*ctx, out, keys.sk));
        level_after = out.level;
        break;
      }
      case BenchOp::AddCP: {
        const auto out = ckks::add_plain(*ctx, ct_main, pt_const);
        row.seconds = detail::now_seconds() - t0;
        for (u32 i = 0; i < spec.batch; ++i) reference[i] += scalar;
        result = ckks::decode(*ctx, ckks::decrypt(*ctx, out, keys.sk));
        level_after = out.level;
        break;
      }
      case BenchOp::AddCS: {
        const auto out = ckks::add_scalar(*ctx, ct_main, scalar);
        row.seconds = detail::now_seconds() - t0;
        for (u32 i = 0; i < spec.batch; ++i) reference[i] += scalar;
        result = ckks::decode(*ctx, ckks::decrypt(*ctx, out, keys.sk));
        level_after = out.level;
        break;
      }
      case BenchOp::MulCC: {
        const auto out = ckks::mul(*ctx, ct_main, ct_other, keys.relin);
        row.seconds = detail::now_seconds() - t0;
        for (u32 i = 0; i < spec.batch; ++i) reference[i] *= scalar;
        result = ckks::decode(*ctx, ckks::decrypt(*ctx, out, keys.sk));
        level_after = out.level;
        break;
      }
      case BenchOp::MulCP: {
        const auto out = ckks::mul_plain(*ctx, ct_main, pt_const);
        row.seconds = detail::now_seconds() - t0;
        for (u32 i = 0; i < spec.batch; ++i) reference[i] *= scalar;
        result = ckks::decode(*ctx, ckks::decrypt(*ctx, out, keys.sk));
        level_after = out.level;
        break;
      }
      case BenchOp::MulCS: {
        const auto out = ckks::mul_scalar(*ctx, ct_main, scalar);
        row.seconds = detail::now_seconds() - t0;
        for (u32 i = 0; i < spec.batch; ++i) reference[i] *= scalar;
        result = ckks::decode(*ctx, ckks::decrypt(*ctx, out, keys.sk));
        level_after = out.level;
        break;
      }
      case BenchOp::RotateM1:
      case BenchOp::Rotate5:
      case BenchOp::RotateM25: {
        const int k = op == BenchOp::RotateM1 ? -1
                      : op == BenchOp::Rotate5 ? 5
                                               : -25;
        const auto out = ckks::rotate(*ctx, ct_main, k, rot);
        row.seconds = detail::now_seconds() - t0;
        // rotate(x, k): slot j receives slot j + k.
        reference.resize(spec.batch);
        for (u32 i = 0; i < spec.batch; ++i) {
          reference[i] =
              main_data[(i + static_cast<u32>(
                                 ((k % static_cast<int>(spec.batch)) +
                                  static_cast<int>(spec.batch)))) %
                        spec.batch];
        }
        result = ckks::decode(*ctx, ckks::decrypt(*ctx, out, keys.sk));
        level_after = out.level;
        break;
      }
      case BenchOp::Refresh: {
        const auto out =
            ckks::refresh(*ctx, ct_main, keys, rng, spec.eps_boot);
        row.seconds = detail::now_seconds() - t0;
        result = ckks::decode(*ctx, ckks::decrypt(*ctx, out, keys.sk));
        level_after = out.level;
        break;
      }
    }
    row.error = detail::linf(result, reference);
    row.levels_consumed = depth - level_after;
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<ReportRow> run_bench(const BenchSpec& spec) {
  spec.validate();
  std::vector<ReportRow> rows;
  for (BenchOp op : spec.ops) {
    for (int depth : spec.depths) {
      const auto cell = run_bench_cell(op, depth, spec);
      rows.insert(rows.end(), cell.begin(), cell.end());
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Repeated-addition noise growth

struct NoisePoint {
  int n = 0;
  double error = 0;
};

/// L-infinity error of n-fold addition, either of one fixed ciphertext
/// (correlated noise) or of independently encrypted copies (uncorrelated).
inline std::vector<NoisePoint> addition_noise_curve(
    const std::vector<int>& ns, bool correlated, u32 ring_dim, int scale_bits,
    u64 seed) {
  ckks::ContextParams params;
  params.ring_dim = ring_dim;
  params.batch_size = 64;
  params.max_level = 2;
  params.refresh_level = 1;
  params.scale_bits = scale_bits;
  const auto ctx = ckks::make_context(params);
  Rng rng(seed);
  const ckks::KeyBundle keys = ckks::keygen(*ctx, rng);
  const std::vector<double> data = detail::sine_vector(64);
  const ckks::CkksPlaintext pt = ckks::encode(*ctx, data, 2);

  std::vector<NoisePoint> points;
  for (int n : ns) {
    Rng op_rng(seed + static_cast<u64>(n) * 7919);
    ckks::CkksCiphertext base = ckks::encrypt(*ctx, pt, keys.pk, op_rng);
    ckks::CkksCiphertext acc = base;
    for (int i = 1; i < n; ++i) {
      acc = correlated
                ? ckks::add(*ctx, acc, base)
                : ckks::add(*ctx, acc,
                            ckks::encrypt(*ctx, pt, keys.pk, op_rng));
    }
    std::vector<double> reference(64);
    for (u32 i = 0; i < 64; ++i) reference[i] = data[i] * n;
    const auto got = ckks::decode(*ctx, ckks::decrypt(*ctx, acc, keys.sk));
    points.push_back({n, detail::linf(got, reference)});
  }
  return points;
}

inline double log_log_slope(const std::vector<NoisePoint>& points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(points.size());
  for (const auto& p : points) {
    const double x = std::log(static_cast<double>(p.n));
    const double y = std::log(p.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace hesim::benchkit

#endif  // HESIM_BENCHKIT_HPP
