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

// Acceptance suite: one check per numbered criterion, each printing a single
// PASS/FAIL line. Tolerances are fixed here, not configurable.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hesim/hesim.hpp"
#include "oracle_helpers.hpp"

using namespace hesim;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const std::string& line) { g_notes.push_back(line); }

bool close_rel(double value, double target, double rel_tol) {
  return std::abs(value - target) <= rel_tol * std::abs(target);
}

bool close_abs(double value, double target, double abs_tol) {
  return std::abs(value - target) <= abs_tol;
}

void report_criterion(int criterion, const std::string& name, bool pass) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              name.c_str());
  for (const auto& line : g_notes) std::printf("        %s\n", line.c_str());
  g_notes.clear();
  if (!pass) ++g_failures;
}

struct SweepResult {
  std::vector<double> errors;  // per grid size
  std::vector<double> eocs;    // between consecutive sizes
};

SweepResult convergence_sweep(pde::Scheme scheme, int dim,
                              const std::vector<u32>& ns,
                              const secure::Backend* encrypted_template,
                              int lmax, int lrefresh, u64 seed) {
  SweepResult result;
  for (size_t i = 0; i < ns.size(); ++i) {
    pde::GridSpec grid{dim, ns[i], ns[i]};
    pde::AdvectionConfig cfg;
    cfg.scheme = scheme;
    cfg.t_end = 0.5;
    secure::Backend backend = secure::Backend::exact(lmax, lrefresh);
    if (encrypted_template) {
      const u32 packed = dim == 1 ? ns[i] : ns[i] * ns[i];
      ckks::ContextParams params;
      params.ring_dim = u32{1} << 13;
      params.batch_size = static_cast<u32>(next_power_of_two(packed));
      params.max_level = lmax;
      params.refresh_level = lrefresh;
      auto ctx = ckks::make_context(params);
      Rng key_rng(seed + i);
      auto keys =
          std::make_shared<ckks::KeyBundle>(ckks::keygen(*ctx, key_rng));
      auto rot = std::make_shared<ckks::RotKeySet>();
      backend = secure::Backend::encrypted(std::move(ctx), std::move(keys),
                                           std::move(rot), seed + 100 + i,
                                           1e-6);
    }
    const pde::RunResult r = pde::run_simulation(cfg, grid, backend);
    result.errors.push_back(r.l2_vs_exact);
    if (i > 0) {
      result.eocs.push_back(
          pde::eoc(result.errors[i - 1], result.errors[i]).value_or(0.0));
    }
  }
  return result;
}

std::string fmt3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

std::string join(const std::vector<double>& vs) {
  std::string out;
  for (double v : vs) {
    if (!out.empty()) out += ", ";
    out += fmt3(v);
  }
  return out;
}

// ---------------------------------------------------------------------------

bool criterion_1_exact_convergence() {
  bool pass = true;
  const std::vector<u32> ns = {32, 64, 128, 256};

  const SweepResult lw1 = convergence_sweep(pde::Scheme::LaxWendroff, 1, ns,
                                            nullptr, 300, 200, 0);
  note("1D LW  e_32 = " + fmt3(lw1.errors[0]) + " (target 1.07e-02 +- 2%), EOC = " +
       join(lw1.eocs));
  pass &= close_rel(lw1.errors[0], 1.07e-2, 0.02);
  for (double e : lw1.eocs) pass &= close_abs(e, 2.00, 0.05);

  const SweepResult uw1 = convergence_sweep(pde::Scheme::Upwind, 1, ns,
                                            nullptr, 300, 200, 0);
  note("1D UW  e_32 = " + fmt3(uw1.errors[0]) + " (target 1.01e-01 +- 2%), EOC = " +
       join(uw1.eocs));
  pass &= close_rel(uw1.errors[0], 1.01e-1, 0.02);
  const std::vector<double> uw1_targets = {0.95, 0.97, 0.99};
  for (size_t i = 0; i < uw1_targets.size(); ++i) {
    pass &= close_abs(uw1.eocs[i], uw1_targets[i], 0.05);
  }

  const SweepResult uw2 = convergence_sweep(pde::Scheme::Upwind, 2, ns,
                                            nullptr, 300, 200, 0);
  note("2D UW  EOC = " + join(uw2.eocs) + " (targets 0.82/0.90/0.95 +- 0.05)");
  const std::vector<double> uw2_targets = {0.82, 0.90, 0.95};
  for (size_t i = 0; i < uw2_targets.size(); ++i) {
    pass &= close_abs(uw2.eocs[i], uw2_targets[i], 0.05);
  }

  const SweepResult lw2 = convergence_sweep(pde::Scheme::LaxWendroff, 2, ns,
                                            nullptr, 300, 200, 0);
  note("2D LW  EOC = " + join(lw2.eocs) + " (target 2.00 +- 0.05)");
  for (double e : lw2.eocs) pass &= close_abs(e, 2.00, 0.05);
  return pass;
}

bool criterion_2_encrypted_convergence() {
  bool pass = true;
  const secure::Backend marker = secure::Backend::exact(1, 1);
  const int lmax = 11, lrefresh = 9;

  const SweepResult lw1 = convergence_sweep(
      pde::Scheme::LaxWendroff, 1, {32, 64, 128}, &marker, lmax, lrefresh, 10);
  note("1D LW  EOC = " + join(lw1.eocs) + " (target 2.00 +- 0.1)");
  for (double e : lw1.eocs) pass &= close_abs(e, 2.00, 0.1);

  const SweepResult uw1 = convergence_sweep(
      pde::Scheme::Upwind, 1, {32, 64, 128}, &marker, lmax, lrefresh, 20);
  note("1D UW  EOC = " + join(uw1.eocs) + " (targets 0.95/0.97 +- 0.1)");
  const std::vector<double> uw1_targets = {0.95, 0.97};
  for (size_t i = 0; i < uw1_targets.size(); ++i) {
    pass &= close_abs(uw1.eocs[i], uw1_targets[i], 0.1);
  }

  const SweepResult uw2 = convergence_sweep(pde::Scheme::Upwind, 2, {32, 64},
                                            &marker, lmax, lrefresh, 30);
  note("2D UW  EOC = " + join(uw2.eocs) + " (target 0.82 +- 0.1)");
  pass &= close_abs(uw2.eocs[0], 0.82, 0.1);

  const SweepResult lw2 = convergence_sweep(pde::Scheme::LaxWendroff, 2,
                                            {32, 64}, &marker, lmax, lrefresh,
                                            40);
  note("2D LW  EOC = " + join(lw2.eocs) + " (target 2.00 +- 0.1)");
  pass &= close_abs(lw2.eocs[0], 2.00, 0.1);
  return pass;
}

bool criterion_3_operation_counts() {
  struct Cell {
    pde::Scheme scheme;
    int dim;
    bool at_capacity;
    u32 nx, ny;
  };
  const std::vector<Cell> cells = {
      {pde::Scheme::Upwind, 1, true, 64, 1},
      {pde::Scheme::Upwind, 1, false, 13, 1},
      {pde::Scheme::LaxWendroff, 1, true, 64, 1},
      {pde::Scheme::LaxWendroff, 1, false, 13, 1},
      {pde::Scheme::Upwind, 2, true, 4, 4},
      {pde::Scheme::Upwind, 2, false, 5, 3},
      {pde::Scheme::LaxWendroff, 2, true, 4, 4},
      {pde::Scheme::LaxWendroff, 2, false, 5, 3},
  };
  bool pass = true;
  for (const auto& cell : cells) {
    const secure::Backend b = secure::Backend::exact(10, 6);
    pde::GridSpec grid{cell.dim, cell.nx, cell.ny};
    pde::AdvectionConfig cfg;
    cfg.scheme = cell.scheme;
    const pde::StepCoefficients c =
        pde::compute_coefficients(cfg, grid, 0.5 * grid.dx());
    if (cell.dim == 1) {
      std::vector<double> u0(cell.nx, 0.25);
      u0[2] = -0.5;
      const secure::SecureVector u = secure::enc_vector(b, u0);
      (void)(cell.scheme == pde::Scheme::Upwind ? pde::step_upwind_1d(b, u, c)
                                                : pde::step_lw_1d(b, u, c));
    } else {
      std::vector<std::vector<double>> u0(cell.nx,
                                          std::vector<double>(cell.ny, 0.25));
      const secure::SecureMatrix u = secure::enc_matrix(b, u0);
      (void)(cell.scheme == pde::Scheme::Upwind ? pde::step_upwind_2d(b, u, c)
                                                : pde::step_lw_2d(b, u, c));
    }
    const pde::StepOpCounts expect =
        pde::expected_step_ops(cell.scheme, cell.dim, cell.at_capacity);
    const secure::OpCounters got = b.counters();
    const bool ok = got.adds == expect.adds && got.mults == expect.mults &&
                    got.rotates == expect.rotates;
    note(std::string(pde::scheme_name(cell.scheme)) + " " +
         std::to_string(cell.dim) + "D " +
         (cell.at_capacity ? "capacity" : "sub-capacity") + ": adds " +
         std::to_string(got.adds) + "/" + std::to_string(expect.adds) +
         ", mults " + std::to_string(got.mults) + "/" +
         std::to_string(expect.mults) + ", rotates " +
         std::to_string(got.rotates) + "/" + std::to_string(expect.rotates));
    pass &= ok;
  }
  return pass;
}

bool criterion_4_circshift_levels() {
  bool pass = true;
  Rng rng(4);
  // Expected level cost per (k pattern, l pattern): sub-capacity then
  // capacity regime.
  const int expect_sub[2][2] = {{0, 1}, {1, 2}};
  const int expect_cap[2][2] = {{0, 0}, {1, 1}};

  auto run = [&](const secure::Backend& b, bool at_capacity) {
    const u32 nrows = at_capacity ? 4u : 5u;
    const u32 ncols = at_capacity ? 4u : 3u;
    std::vector<std::vector<double>> data(nrows,
                                          std::vector<double>(ncols));
    for (auto& row : data) {
      for (auto& v : row) v = 2.0 * rng.unit_real() - 1.0;
    }
    const u32 capacity = 16;
    const secure::SecureMatrix m = secure::enc_matrix(b, data, capacity);
    for (int kp = 0; kp < 2; ++kp) {
      for (int lp = 0; lp < 2; ++lp) {
        const long long k = kp == 0 ? 0 : 1;
        const long long l = lp == 0 ? 0 : 1;
        const int before = secure::levels_remaining(m);
        const int consumed =
            before - secure::levels_remaining(secure::circshift(b, m, k, l));
        const int expect =
            at_capacity ? expect_cap[kp][lp] : expect_sub[kp][lp];
        if (consumed != expect) {
          note("(k" + std::string(kp ? "!=0" : "=0") + ", l" +
               std::string(lp ? "!=0" : "=0") + ") " +
               (at_capacity ? "capacity" : "sub-capacity") + ": consumed " +
               std::to_string(consumed) + ", expected " +
               std::to_string(expect));
          pass = false;
        }
      }
    }
  };

  for (bool at_capacity : {false, true}) {
    run(secure::Backend::exact(8, 4), at_capacity);
    // Encrypted backend over a small ring, batch 16.
    ckks::ContextParams params;
    params.ring_dim = 256;
    params.batch_size = 16;
    params.max_level = 6;
    params.refresh_level = 4;
    auto ctx = ckks::make_context(params);
    Rng key_rng(400 + at_capacity);
    auto keys = std::make_shared<ckks::KeyBundle>(ckks::keygen(*ctx, key_rng));
    std::vector<int> all;
    for (int i = 1; i < 16; ++i) all.push_back(i);
    auto rot = std::make_shared<ckks::RotKeySet>(
        ckks::rotation_keygen(*ctx, keys->sk, all, key_rng));
    run(secure::Backend::encrypted(ctx, keys, rot, 41), at_capacity);
  }
  if (pass) note("all four (k,l) patterns x both regimes x both backends");
  return pass;
}

bool criterion_5_circshift_oracle() {
  bool pass = true;
  Rng rng(5);
  u64 checked_exact = 0;

  // Exact backend: exhaustive and bit-exact.
  for (u32 len = 1; len <= 16 && pass; ++len) {
    for (u32 cap : {8u, 16u, 32u}) {
      if (cap < len) continue;
      const secure::Backend b = secure::Backend::exact(8, 4);
      std::vector<double> v(len);
      for (auto& x : v) x = 2.0 * rng.unit_real() - 1.0;
      secure::SecureVector sv = secure::enc_vector(b, v, cap);
      for (u32 j = len; j < cap; ++j) sv.data.plain[j] = 1e9;
      for (long long k = -static_cast<long long>(len);
           k <= static_cast<long long>(len); ++k) {
        if (secure::dec_vector(b, secure::circshift(b, sv, k)) !=
            hesim_test::reference_circshift(v, k)) {
          note("exact vector mismatch at len " + std::to_string(len) +
               " cap " + std::to_string(cap) + " k " + std::to_string(k));
          pass = false;
          break;
        }
        ++checked_exact;
      }
    }
  }
  // Exact matrices up to 6x6, all shifts.
  for (u32 n = 2; n <= 6 && pass; ++n) {
    for (u32 m = 2; m <= 6 && pass; ++m) {
      const secure::Backend b = secure::Backend::exact(8, 4);
      std::vector<std::vector<double>> a(n, std::vector<double>(m));
      for (auto& row : a) {
        for (auto& x : row) x = 2.0 * rng.unit_real() - 1.0;
      }
      const secure::SecureMatrix sm = secure::enc_matrix(b, a);
      for (long long k = -static_cast<long long>(n);
           k <= static_cast<long long>(n) && pass; ++k) {
        for (long long l = -static_cast<long long>(m);
             l <= static_cast<long long>(m); ++l) {
          if (secure::dec_matrix(b, secure::circshift(b, sm, k, l)) !=
              hesim_test::reference_circshift_2d(a, k, l)) {
            note("exact matrix mismatch at " + std::to_string(n) + "x" +
                 std::to_string(m) + " shift (" + std::to_string(k) + "," +
                 std::to_string(l) + ")");
            pass = false;
            break;
          }
          ++checked_exact;
        }
      }
    }
  }

  // Encrypted backend within 1e-6.
  u64 checked_enc = 0;
  auto enc_backend = [](u32 ring, u32 batch, u64 seed) {
    ckks::ContextParams params;
    params.ring_dim = ring;
    params.batch_size = batch;
    params.max_level = 5;
    params.refresh_level = 3;
    auto ctx = ckks::make_context(params);
    Rng key_rng(seed);
    auto keys = std::make_shared<ckks::KeyBundle>(ckks::keygen(*ctx, key_rng));
    std::vector<int> all;
    for (u32 i = 1; i < batch; ++i) all.push_back(static_cast<int>(i));
    auto rot = std::make_shared<ckks::RotKeySet>(
        ckks::rotation_keygen(*ctx, keys->sk, all, key_rng));
    return secure::Backend::encrypted(ctx, keys, rot, seed + 1);
  };
  for (u32 cap : {8u, 16u, 32u}) {
    const secure::Backend b = enc_backend(64u * (cap / 8u), cap, 500 + cap);
    for (u32 len : {cap - 3, cap}) {
      if (len == 0 || len > cap) continue;
      std::vector<double> v(len);
      for (auto& x : v) x = 2.0 * rng.unit_real() - 1.0;
      const secure::SecureVector sv = secure::enc_vector(b, v, cap);
      for (long long k = -static_cast<long long>(len);
           k <= static_cast<long long>(len); ++k) {
        const double err = hesim_test::max_abs_diff(
            secure::dec_vector(b, secure::circshift(b, sv, k)),
            hesim_test::reference_circshift(v, k));
        if (err >= 1e-6) {
          note("encrypted vector error " + fmt3(err) + " at cap " +
               std::to_string(cap) + " len " + std::to_string(len));
          pass = false;
        }
        ++checked_enc;
      }
    }
  }
  {
    const secure::Backend b = enc_backend(256, 64, 600);
    std::vector<std::vector<double>> a(6, std::vector<double>(6));
    for (auto& row : a) {
      for (auto& x : row) x = 2.0 * rng.unit_real() - 1.0;
    }
    const secure::SecureMatrix sm = secure::enc_matrix(b, a, 64);
    for (long long k = -6; k <= 6; ++k) {
      for (long long l = -6; l <= 6; ++l) {
        const auto got = secure::dec_matrix(b, secure::circshift(b, sm, k, l));
        const auto expect = hesim_test::reference_circshift_2d(a, k, l);
        double err = 0;
        for (size_t i = 0; i < got.size(); ++i) {
          err = std::max(err, hesim_test::max_abs_diff(got[i], expect[i]));
        }
        if (err >= 1e-6) {
          note("encrypted matrix error " + fmt3(err) + " at shift (" +
               std::to_string(k) + "," + std::to_string(l) + ")");
          pass = false;
        }
        ++checked_enc;
      }
    }
  }
  note(std::to_string(checked_exact) + " exact shifts bit-exact, " +
       std::to_string(checked_enc) + " encrypted shifts within 1e-6");
  return pass;
}

bool criterion_6_noise_growth() {
  const std::vector<int> ns = {2, 4, 8, 16, 32, 64, 128};
  const auto corr =
      benchkit::addition_noise_curve(ns, true, u32{1} << 13, 40, 6001);
  const auto uncorr =
      benchkit::addition_noise_curve(ns, false, u32{1} << 13, 40, 6002);
  const double slope_corr = benchkit::log_log_slope(corr);
  const double slope_uncorr = benchkit::log_log_slope(uncorr);
  note("correlated slope = " + fmt3(slope_corr) + " (target 1.0 +- 0.2)");
  note("uncorrelated slope = " + fmt3(slope_uncorr) + " (target 0.5 +- 0.2)");
  return close_abs(slope_corr, 1.0, 0.2) && close_abs(slope_uncorr, 0.5, 0.2);
}

bool criterion_7_level_semantics() {
  bool pass = true;
  ckks::ContextParams params;
  params.ring_dim = 1 << 10;
  params.batch_size = 16;
  params.max_level = 6;
  params.refresh_level = 4;
  const auto ctx = ckks::make_context(params);
  Rng rng(7);
  const ckks::KeyBundle keys = ckks::keygen(*ctx, rng);
  const std::vector<double> ones(16, 1.0);
  auto fresh = [&] {
    return ckks::encrypt(*ctx, ckks::encode(*ctx, ones, 6), keys.pk, rng);
  };

  // Binary-tree product of 2^k fresh ciphertexts consumes exactly k levels.
  for (int k = 1; k <= 3; ++k) {
    std::vector<ckks::CkksCiphertext> layer;
    for (int i = 0; i < (1 << k); ++i) layer.push_back(fresh());
    while (layer.size() > 1) {
      std::vector<ckks::CkksCiphertext> next;
      for (size_t i = 0; i + 1 < layer.size(); i += 2) {
        next.push_back(ckks::mul(*ctx, layer[i], layer[i + 1], keys.relin));
      }
      layer = std::move(next);
    }
    if (layer[0].level != 6 - k) {
      note("tree of 2^" + std::to_string(k) + " landed at level " +
           std::to_string(layer[0].level));
      pass = false;
    }
  }

  // mul at level 0 always raises.
  ckks::CkksCiphertext bottom = ckks::drop_to_level(*ctx, fresh(), 0);
  bool threw = false;
  try {
    (void)ckks::mul(*ctx, bottom, bottom, keys.relin);
  } catch (const LevelExhaustedError&) {
    threw = true;
  }
  pass &= threw;

  // refresh restores l_refresh exactly.
  const ckks::CkksCiphertext refreshed =
      ckks::refresh(*ctx, ckks::drop_to_level(*ctx, fresh(), 2), keys, rng,
                    1e-6);
  pass &= refreshed.level == ctx->refresh_level();

  // Guard fires iff level - l_step < 1.
  const secure::Backend b = secure::Backend::exact(6, 4);
  secure::SecureVector x = secure::enc_vector(b, ones, 16);
  x = secure::scale_by(b, x, 1.0);
  x = secure::scale_by(b, x, 1.0);
  x = secure::scale_by(b, x, 1.0);  // level 3
  pass &= !secure::needs_refresh(b, x, 2);  // 3 - 2 >= 1
  x = secure::scale_by(b, x, 1.0);          // level 2
  pass &= secure::needs_refresh(b, x, 2);   // 2 - 2 < 1
  note("tree depths, level-0 guard, refresh level, and guard boundary all exact");
  return pass;
}

bool criterion_8_bootstrap_schedule() {
  bool pass = true;
  const auto ledger = pde::bootstrap_schedule(33, 25, 2, 96);
  pass &= !ledger.empty() && ledger[0] == 17;
  const int period = 24 / 2;  // floor((l_refresh - 1) / l_step) = 12
  for (size_t i = 1; i < ledger.size(); ++i) {
    pass &= ledger[i] - ledger[i - 1] == static_cast<u32>(period);
  }
  note("ledger first refresh at step " + std::to_string(ledger[0]) +
       ", then every " + std::to_string(period) +
       " steps (= floor((l_refresh-1)/l_step))");

  // A real sub-capacity 1D Lax-Wendroff run (l_step = 2) follows the ledger.
  pde::GridSpec grid{1, 48, 48};  // capacity 64 > 48
  pde::AdvectionConfig cfg;
  cfg.scheme = pde::Scheme::LaxWendroff;
  cfg.t_end = 1.0;
  const pde::RunResult r =
      pde::run_simulation(cfg, grid, secure::Backend::exact(33, 25));
  pass &= r.l_step == 2;
  const auto expect = pde::bootstrap_schedule(33, 25, 2, r.steps);
  pass &= r.bootstrap_steps == expect;
  note("sub-capacity LW-1D run of " + std::to_string(r.steps) +
       " steps refreshed at the ledger's indices");
  return pass;
}

bool criterion_9_substitute_checks() {
  // Absolute runtimes, 128-bit parameterization, and real bootstrapping
  // internals are out of scope; determinism and serialization round-trips
  // stand in for them.
  bool pass = true;
  ckks::ContextParams params;
  params.ring_dim = 1 << 9;
  params.batch_size = 32;
  params.max_level = 4;
  params.refresh_level = 3;

  auto pipeline = [&] {
    const auto ctx = ckks::make_context(params);
    Rng rng(99991);
    const ckks::KeyBundle keys = ckks::keygen(*ctx, rng);
    const ckks::RotKeySet rot =
        ckks::rotation_keygen(*ctx, keys.sk, {1, -1}, rng);
    std::vector<double> v(32);
    for (size_t i = 0; i < v.size(); ++i) {
      v[i] = std::sin(2.0 * M_PI * (i + 1) / 32.0);
    }
    ckks::CkksCiphertext ct =
        ckks::encrypt(*ctx, ckks::encode(*ctx, v, 4), keys.pk, rng);
    ct = ckks::mul(*ctx, ct, ct, keys.relin);
    ct = ckks::rotate(*ctx, ct, 1, rot);
    ct = ckks::refresh(*ctx, ct, keys, rng, 1e-6);
    io::ByteWriter w;
    io::write_ciphertext(w, ct);
    return w.bytes();
  };
  const auto run1 = pipeline();
  const auto run2 = pipeline();
  pass &= run1 == run2;
  note("identical seeds produce byte-identical serialized results");

  // Serialization round-trip is bit-exact.
  const auto ctx = ckks::make_context(params);
  Rng rng(77);
  const ckks::KeyBundle keys = ckks::keygen(*ctx, rng);
  const ckks::CkksCiphertext ct = ckks::encrypt(
      *ctx, ckks::encode(*ctx, std::vector<double>(32, 0.25), 4), keys.pk,
      rng);
  io::ByteWriter w;
  io::write_ciphertext(w, ct);
  io::ByteReader r(w.bytes());
  const ckks::CkksCiphertext back = io::read_ciphertext(r);
  io::ByteWriter w2;
  io::write_ciphertext(w2, back);
  pass &= w.bytes() == w2.bytes();
  note("serialization round-trip is bit-exact");
  note("absolute runtimes / 128-bit parameters / real bootstrapping: "
       "explicitly not reproduced");
  return pass;
}

}  // namespace

int main() {
  std::printf("hesim acceptance suite\n");
  report_criterion(1, "exact-backend convergence table (t in [0,0.5], CFL 0.5)",
         criterion_1_exact_convergence());
  report_criterion(2, "encrypted-backend convergence at ring 2^13, eps_boot 1e-6",
         criterion_2_encrypted_convergence());
  report_criterion(3, "per-step operation counts, all 8 configurations (exact equality)",
         criterion_3_operation_counts());
  report_criterion(4, "circshift level ledger, 4 patterns x 2 regimes (exact equality)",
         criterion_4_circshift_levels());
  report_criterion(5, "circshift oracle equivalence (exact bit-exact, encrypted 1e-6)",
         criterion_5_circshift_oracle());
  report_criterion(6, "noise-growth slopes over repeated additions (n = 2..128)",
         criterion_6_noise_growth());
  report_criterion(7, "level semantics: tree depth, level-0 error, refresh, guard",
         criterion_7_level_semantics());
  report_criterion(8, "bootstrap scheduling ledger (l_max 33, l_refresh 25, l_step 2)",
         criterion_8_bootstrap_schedule());
  report_criterion(9, "substitute checks: determinism + bit-exact serialization",
         criterion_9_substitute_checks());
  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d criterion(s) FAILED\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
