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

// Finite-difference solvers for the 1D/2D linear advection equation on
// periodic domains, expressed entirely through the secure-array operations
// (element-wise arithmetic, circular shifts, plaintext scalars), with a
// refresh-guarded time loop, per-step operation counters, and L2/EOC
// metrology.

#ifndef HESIM_SOLVERS_HPP
#define HESIM_SOLVERS_HPP

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "hesim/secure_array.hpp"

namespace hesim::pde {

enum class Scheme { Upwind, LaxWendroff };

inline const char* scheme_name(Scheme s) {
  return s == Scheme::Upwind ? "upwind" : "lax_wendroff";
}

struct GridSpec {
  int dim = 1;  // 1 or 2
  u32 nx = 64;
  u32 ny = 64;

  double dx() const { return 1.0 / static_cast<double>(nx); }
  double dy() const { return 1.0 / static_cast<double>(ny); }

  void validate() const {
    if (dim != 1 && dim != 2) throw ConfigError("grid dim must be 1 or 2");
    if (nx < 4 || (dim == 2 && ny < 4)) {
      throw ConfigError("grids need at least 4 nodes per direction");
    }
  }
};

struct AdvectionConfig {
  double a_x = 1.0;
  double a_y = 1.0;
  double cfl = 0.5;
  double t_end = 1.0;
  Scheme scheme = Scheme::LaxWendroff;
  std::function<double(double)> u0_1d;          // defaults to sin(2 pi x)
  std::function<double(double, double)> u0_2d;  // defaults to the product sine

  void validate(int dim) const {
    if (a_x <= 0 || (dim == 2 && a_y <= 0)) {
      throw ConfigError("advection speeds must be positive");
    }
    if (cfl <= 0 || cfl > 1) throw ConfigError("cfl must be in (0, 1]");
    if (t_end <= 0) throw ConfigError("t_end must be positive");
  }

  double initial_1d(double x) const {
    return u0_1d ? u0_1d(x) : std::sin(2.0 * M_PI * x);
  }
  double initial_2d(double x, double y) const {
    return u0_2d ? u0_2d(x, y)
                 : std::sin(2.0 * M_PI * x) * std::sin(2.0 * M_PI * y);
  }
};

// Plaintext stencil factors, computed before the loop and never encrypted.
struct StepCoefficients {
  double cx = 0, cy = 0;  // a * dt / dx
  // Factored Lax-Wendroff terms.
  double center = 0;
  double x_minus = 0, x_plus = 0;  // coefficients of circshift(u, -1/+1)
  double y_minus = 0, y_plus = 0;
  double cross = 0;
};

inline StepCoefficients compute_coefficients(const AdvectionConfig& cfg,
                                             const GridSpec& grid, double dt) {
  StepCoefficients c;
  c.cx = cfg.a_x * dt / grid.dx();
  if (grid.dim == 2) c.cy = cfg.a_y * dt / grid.dy();
  const double cx2 = c.cx * c.cx;
  const double cy2 = c.cy * c.cy;
  if (grid.dim == 1) {
    c.center = 1.0 - cx2;
  } else {
    c.center = 1.0 - cx2 - cy2;
  }
  c.x_minus = 0.5 * (cx2 - c.cx);
  c.x_plus = 0.5 * (cx2 + c.cx);
  c.y_minus = 0.5 * (cy2 - c.cy);
  c.y_plus = 0.5 * (cy2 + c.cy);
  c.cross = 0.25 * c.cx * c.cy;
  return c;
}

// ---------------------------------------------------------------------------
// Static operation/level accounting (one time step)

struct StepOpCounts {
  u64 adds = 0;
  u64 mults = 0;
  u64 rotates = 0;
  bool operator==(const StepOpCounts&) const = default;
};

/// Per-step operation counts for every scheme/dimension/capacity regime.
inline StepOpCounts expected_step_ops(Scheme scheme, int dim,
                                      bool at_capacity) {
  if (scheme == Scheme::Upwind && dim == 1) {
    return at_capacity ? StepOpCounts{2, 1, 1} : StepOpCounts{3, 3, 2};
  }
  if (scheme == Scheme::Upwind && dim == 2) {
    return at_capacity ? StepOpCounts{5, 4, 3} : StepOpCounts{6, 6, 4};
  }
  if (scheme == Scheme::LaxWendroff && dim == 1) {
    return at_capacity ? StepOpCounts{2, 3, 2} : StepOpCounts{4, 7, 4};
  }
  return at_capacity ? StepOpCounts{14, 18, 14} : StepOpCounts{24, 38, 24};
}

/// Multiplicative levels one time step consumes.
inline int expected_l_step(Scheme scheme, int dim, bool at_capacity) {
  if (dim == 1) return at_capacity ? 1 : 2;
  if (scheme == Scheme::Upwind) return 2;
  return at_capacity ? 2 : 3;  // 2D Lax-Wendroff
}

// ---------------------------------------------------------------------------
// Single time steps

inline secure::SecureVector step_upwind_1d(const secure::Backend& b,
                                           const secure::SecureVector& u,
                                           const StepCoefficients& c) {
  const secure::SecureVector shifted = secure::circshift(b, u, 1);
  const secure::SecureVector diff = secure::ew_sub(b, u, shifted);
  const secure::SecureVector flux = secure::scale_by(b, diff, c.cx);
  return secure::ew_sub(b, u, flux);
}

inline secure::SecureVector step_lw_1d(const secure::Backend& b,
                                       const secure::SecureVector& u,
                                       const StepCoefficients& c) {
  const secure::SecureVector left = secure::circshift(b, u, -1);   // u_{i+1}
  const secure::SecureVector right = secure::circshift(b, u, 1);   // u_{i-1}
  secure::SecureVector out = secure::scale_by(b, u, c.center);
  out = secure::ew_add(b, out, secure::scale_by(b, left, c.x_minus));
  out = secure::ew_add(b, out, secure::scale_by(b, right, c.x_plus));
  return out;
}

inline secure::SecureMatrix step_upwind_2d(const secure::Backend& b,
                                           const secure::SecureMatrix& u,
                                           const StepCoefficients& c) {
  const secure::SecureMatrix sx = secure::circshift(b, u, 1, 0);
  const secure::SecureMatrix sy = secure::circshift(b, u, 0, 1);
  const secure::SecureMatrix fx =
      secure::scale_by(b, secure::ew_sub(b, u, sx), c.cx);
  const secure::SecureMatrix fy =
      secure::scale_by(b, secure::ew_sub(b, u, sy), c.cy);
  return secure::ew_sub(b, secure::ew_sub(b, u, fx), fy);
}

inline secure::SecureMatrix step_lw_2d(const secure::Backend& b,
                                       const secure::SecureMatrix& u,
                                       const StepCoefficients& c) {
  using secure::SecureMatrix;
  const SecureMatrix sxm = secure::circshift(b, u, -1, 0);
  const SecureMatrix sxp = secure::circshift(b, u, 1, 0);
  const SecureMatrix sym = secure::circshift(b, u, 0, -1);
  const SecureMatrix syp = secure::circshift(b, u, 0, 1);
  const SecureMatrix smm = secure::circshift(b, u, -1, -1);
  const SecureMatrix smp = secure::circshift(b, u, -1, 1);
  const SecureMatrix spm = secure::circshift(b, u, 1, -1);
  const SecureMatrix spp = secure::circshift(b, u, 1, 1);

  const SecureMatrix corner = secure::ew_add(
      b, secure::ew_sub(b, secure::ew_sub(b, smm, smp), spm), spp);

  SecureMatrix out = secure::scale_by(b, u, c.center);
  out = secure::ew_add(b, out, secure::scale_by(b, sxm, c.x_minus));
  out = secure::ew_add(b, out, secure::scale_by(b, sxp, c.x_plus));
  out = secure::ew_add(b, out, secure::scale_by(b, sym, c.y_minus));
  out = secure::ew_add(b, out, secure::scale_by(b, syp, c.y_plus));
  out = secure::ew_add(b, out, secure::scale_by(b, corner, c.cross));
  return out;
}

// ---------------------------------------------------------------------------
// Exact solution and error metrology

inline double wrap_unit(double x) {
  double w = std::fmod(x, 1.0);
  if (w < 0) w += 1.0;
  return w;
}

inline std::vector<double> exact_solution_1d(const GridSpec& grid,
                                             const AdvectionConfig& cfg,
                                             double t) {
  std::vector<double> u(grid.nx);
  for (u32 i = 0; i < grid.nx; ++i) {
    const double x = static_cast<double>(i) * grid.dx();
    u[i] = cfg.initial_1d(wrap_unit(x - cfg.a_x * t));
  }
  return u;
}

inline std::vector<std::vector<double>> exact_solution_2d(
    const GridSpec& grid, const AdvectionConfig& cfg, double t) {
  std::vector<std::vector<double>> u(grid.nx, std::vector<double>(grid.ny));
  for (u32 i = 0; i < grid.nx; ++i) {
    for (u32 j = 0; j < grid.ny; ++j) {
      const double x = static_cast<double>(i) * grid.dx();
      const double y = static_cast<double>(j) * grid.dy();
      u[i][j] = cfg.initial_2d(wrap_unit(x - cfg.a_x * t),
                               wrap_unit(y - cfg.a_y * t));
    }
  }
  return u;
}

/// Discrete L2 error with 1/N weights.
inline double l2_error(const std::vector<double>& u,
                       const std::vector<double>& u_exact) {
  if (u.size() != u_exact.size()) throw ShapeError("l2_error: size mismatch");
  double sum = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - u_exact[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(u.size()));
}

inline double l2_error(const std::vector<std::vector<double>>& u,
                       const std::vector<std::vector<double>>& u_exact) {
  if (u.size() != u_exact.size()) throw ShapeError("l2_error: size mismatch");
  double sum = 0;
  size_t count = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    if (u[i].size() != u_exact[i].size()) {
      throw ShapeError("l2_error: size mismatch");
    }
    for (size_t j = 0; j < u[i].size(); ++j) {
      const double d = u[i][j] - u_exact[i][j];
      sum += d * d;
      ++count;
    }
  }
  return std::sqrt(sum / static_cast<double>(count));
}

inline double linf_diff(const std::vector<double>& a,
                        const std::vector<double>& b) {
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Experimental order of convergence; empty when either error vanishes.
inline std::optional<double> eoc(double e_coarse, double e_fine) {
  if (e_coarse <= 0 || e_fine <= 0) return std::nullopt;
  return std::log2(e_coarse / e_fine);
}

// ---------------------------------------------------------------------------
// Bootstrap scheduling ledger

/// Deterministic refresh schedule: 1-indexed steps at which the guard fires,
/// as a pure function of the level budget. Matches the loop in
/// run_simulation by construction.
inline std::vector<u32> bootstrap_schedule(
    int l_max, int l_refresh, int l_step, u32 total_steps,
    ckks::RefreshPolicy policy = ckks::RefreshPolicy::Standard) {
  std::vector<u32> indices;
  const int start = ckks::refresh_start_levels(policy);
  int level = l_max;
  for (u32 s = 1; s <= total_steps; ++s) {
    if (level - l_step < start) {
      indices.push_back(s);
      level = l_refresh;
    }
    level -= l_step;
    if (level < 0) throw LevelExhaustedError("schedule under-provisioned");
  }
  return indices;
}

// ---------------------------------------------------------------------------
// Full simulation

struct TimeGrid {
  double dt = 0;
  u32 total_steps = 0;
  bool has_partial_step = false;
  double partial_dt = 0;

  double step_dt(u32 step_1_indexed) const {
    return (has_partial_step && step_1_indexed == total_steps) ? partial_dt
                                                               : dt;
  }
};

inline TimeGrid make_time_grid(const AdvectionConfig& cfg,
                               const GridSpec& grid) {
  TimeGrid tg;
  // CFL over the summed directional speeds: cfl = dt * (a_x/dx + a_y/dy).
  double speed_sum = cfg.a_x / grid.dx();
  if (grid.dim == 2) speed_sum += cfg.a_y / grid.dy();
  tg.dt = cfg.cfl / speed_sum;
  const double raw = cfg.t_end / tg.dt;
  u32 full = static_cast<u32>(std::floor(raw + 1e-9));
  const double rem = cfg.t_end - static_cast<double>(full) * tg.dt;
  if (rem > 1e-9 * cfg.t_end) {
    tg.has_partial_step = true;
    tg.partial_dt = rem;
    tg.total_steps = full + 1;
  } else {
    tg.total_steps = full;
  }
  return tg;
}

struct RunResult {
  u32 steps = 0;
  double dt = 0;
  int l_step = 0;
  double setup_seconds = 0;
  double l2_vs_exact = 0;          // at t_end, against the analytic solution
  std::vector<double> final_1d;    // populated in 1D
  std::vector<std::vector<double>> final_2d;  // populated in 2D
  std::vector<double> step_error_vs_twin;     // per-step Linf gap
  std::vector<double> step_seconds;
  std::vector<int> step_levels;               // level after each step
  std::vector<secure::OpCounters> step_counters;  // per-step deltas
  std::vector<u32> bootstrap_steps;               // 1-indexed
  secure::OpCounters total_counters;
};

namespace detail {

inline double seconds_since(
    const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

template <typename ArrayT, typename StepFn, typename DecodeFn>
RunResult run_loop(const AdvectionConfig& cfg, const GridSpec& grid,
                   const secure::Backend& backend, const secure::Backend& twin,
                   ArrayT u, ArrayT u_twin, int l_step, const TimeGrid& tg,
                   StepFn&& do_step, DecodeFn&& decode_slots) {
  RunResult result;
  result.steps = tg.total_steps;
  result.dt = tg.dt;
  result.l_step = l_step;

  const bool track_twin = backend.is_encrypted();
  StepCoefficients coeffs = compute_coefficients(cfg, grid, tg.dt);

  for (u32 s = 1; s <= tg.total_steps; ++s) {
    const double this_dt = tg.step_dt(s);
    if (this_dt != tg.dt) coeffs = compute_coefficients(cfg, grid, this_dt);

    const bool fire = secure::needs_refresh(backend, u, l_step);
    if (track_twin &&
        fire != secure::needs_refresh(twin, u_twin, l_step)) {
      throw HesimError("backends disagree on the refresh schedule");
    }
    if (fire) {
      u = secure::refresh(backend, u);
      if (track_twin) u_twin = secure::refresh(twin, u_twin);
      result.bootstrap_steps.push_back(s);
    }

    const secure::OpCounters before = backend.counters();
    const auto t0 = std::chrono::steady_clock::now();
    u = do_step(backend, u, coeffs);
    result.step_seconds.push_back(seconds_since(t0));
    result.step_counters.push_back(backend.counters().delta_since(before));
    result.step_levels.push_back(secure::levels_remaining(u));

    if (track_twin) {
      u_twin = do_step(twin, u_twin, coeffs);
      if (secure::levels_remaining(u_twin) != secure::levels_remaining(u)) {
        throw HesimError("backends disagree on level accounting");
      }
      result.step_error_vs_twin.push_back(
          linf_diff(decode_slots(backend, u), decode_slots(twin, u_twin)));
    } else {
      result.step_error_vs_twin.push_back(0.0);
    }
  }
  result.total_counters = backend.counters();

  if constexpr (std::is_same_v<ArrayT, secure::SecureVector>) {
    result.final_1d = secure::dec_vector(backend, u);
    result.l2_vs_exact =
        l2_error(result.final_1d, exact_solution_1d(grid, cfg, cfg.t_end));
  } else {
    result.final_2d = secure::dec_matrix(backend, u);
    result.l2_vs_exact =
        l2_error(result.final_2d, exact_solution_2d(grid, cfg, cfg.t_end));
  }
  return result;
}

/// Dry-runs one step on a recording exact backend: verifies the static op
/// table and level cost, and returns the recorded rotation indices and mask
/// patterns for key/mask preparation.
template <typename MakeArray, typename StepFn>
secure::OpRecorder probe_step(const AdvectionConfig& cfg, const GridSpec& grid,
                              int max_level, int refresh_level,
                              bool at_capacity, MakeArray&& make_array,
                              StepFn&& do_step) {
  secure::Backend probe = secure::Backend::exact(max_level, refresh_level);
  auto recorder = std::make_shared<secure::OpRecorder>();
  probe.attach_recorder(recorder);
  auto u = make_array(probe);
  const StepCoefficients coeffs =
      compute_coefficients(cfg, grid, make_time_grid(cfg, grid).dt);
  const int level_before = secure::levels_remaining(u);
  u = do_step(probe, u, coeffs);
  const int consumed = level_before - secure::levels_remaining(u);
  const int expected_levels =
      expected_l_step(cfg.scheme, grid.dim, at_capacity);
  if (consumed != expected_levels) {
    throw HesimError("dry run consumed " + std::to_string(consumed) +
                     " levels, expected " + std::to_string(expected_levels));
  }
  const StepOpCounts expect = expected_step_ops(cfg.scheme, grid.dim,
                                                at_capacity);
  const secure::OpCounters got = probe.counters();
  if (got.adds != expect.adds || got.mults != expect.mults ||
      got.rotates != expect.rotates) {
    throw HesimError("dry run op counts diverge from the static table");
  }
  return *recorder;
}

inline void prepare_encrypted_backend(const secure::Backend& backend,
                                      const secure::OpRecorder& recorder) {
  // Rotation keys for every recorded index, merged into the shared set.
  std::vector<int> indices(recorder.rotation_indices.begin(),
                           recorder.rotation_indices.end());
  if (!indices.empty()) {
    ckks::RotKeySet more = ckks::rotation_keygen(
        backend.ctx(), backend.keys().sk, indices, backend.rng());
    ckks::merge_rotation_keys(
        const_cast<ckks::RotKeySet&>(backend.rot_keys()), std::move(more));
  }
  // Masks at every level they can be used at.
  for (const auto& pattern : recorder.mask_patterns) {
    for (int level = 1; level <= backend.max_level(); ++level) {
      secure::MaskCache::Key key = pattern;
      key.level = level;
      backend.masks().get(backend.ctx(), key);
    }
  }
}

}  // namespace detail

/// Runs a full simulation per the refresh-guarded one-step loop. Setup
/// (dry-run verification, rotation keys, mask cache, initial encryption) is
/// timed separately from the stepping loop. Encrypted runs drive an exact
/// twin through the identical schedule to expose the per-step error the
/// encryption introduces.
inline RunResult run_simulation(const AdvectionConfig& cfg,
                                const GridSpec& grid,
                                const secure::Backend& backend) {
  grid.validate();
  cfg.validate(grid.dim);
  const TimeGrid tg = make_time_grid(cfg, grid);
  const auto setup_start = std::chrono::steady_clock::now();

  const secure::Backend twin = secure::Backend::exact(
      backend.max_level(), backend.refresh_level());

  RunResult result;
  if (grid.dim == 1) {
    std::vector<double> u0(grid.nx);
    for (u32 i = 0; i < grid.nx; ++i) {
      u0[i] = cfg.initial_1d(static_cast<double>(i) * grid.dx());
    }
    const u32 capacity = backend.is_encrypted()
                             ? backend.ctx().batch_size()
                             : secure::default_capacity(grid.nx);
    const bool at_capacity = capacity == grid.nx;
    auto stepper = [&cfg](const secure::Backend& b,
                          const secure::SecureVector& u,
                          const StepCoefficients& c) {
      return cfg.scheme == Scheme::Upwind ? step_upwind_1d(b, u, c)
                                          : step_lw_1d(b, u, c);
    };
    const secure::OpRecorder recorder = detail::probe_step(
        cfg, grid, backend.max_level(), backend.refresh_level(), at_capacity,
        [&](const secure::Backend& b) { return secure::enc_vector(b, u0, capacity); },
        stepper);
    if (backend.is_encrypted()) {
      detail::prepare_encrypted_backend(backend, recorder);
    }
    backend.reset_counters();
    secure::SecureVector u = secure::enc_vector(backend, u0, capacity);
    secure::SecureVector u_twin = secure::enc_vector(twin, u0, capacity);
    const double setup_seconds = detail::seconds_since(setup_start);
    result = detail::run_loop<secure::SecureVector>(
        cfg, grid, backend, twin, std::move(u), std::move(u_twin),
        expected_l_step(cfg.scheme, grid.dim, at_capacity), tg, stepper,
        [](const secure::Backend& b, const secure::SecureVector& v) {
          return secure::dec_vector(b, v);
        });
    result.setup_seconds = setup_seconds;
  } else {
    std::vector<std::vector<double>> u0(grid.nx,
                                        std::vector<double>(grid.ny));
    for (u32 i = 0; i < grid.nx; ++i) {
      for (u32 j = 0; j < grid.ny; ++j) {
        u0[i][j] = cfg.initial_2d(static_cast<double>(i) * grid.dx(),
                                  static_cast<double>(j) * grid.dy());
      }
    }
    const u32 packed = grid.nx * grid.ny;
    const u32 capacity = backend.is_encrypted()
                             ? backend.ctx().batch_size()
                             : secure::default_capacity(packed);
    const bool at_capacity = capacity == packed;
    auto stepper = [&cfg](const secure::Backend& b,
                          const secure::SecureMatrix& u,
                          const StepCoefficients& c) {
      return cfg.scheme == Scheme::Upwind ? step_upwind_2d(b, u, c)
                                          : step_lw_2d(b, u, c);
    };
    const secure::OpRecorder recorder = detail::probe_step(
        cfg, grid, backend.max_level(), backend.refresh_level(), at_capacity,
        [&](const secure::Backend& b) { return secure::enc_matrix(b, u0, capacity); },
        stepper);
    if (backend.is_encrypted()) {
      detail::prepare_encrypted_backend(backend, recorder);
    }
    backend.reset_counters();
    secure::SecureMatrix u = secure::enc_matrix(backend, u0, capacity);
    secure::SecureMatrix u_twin = secure::enc_matrix(twin, u0, capacity);
    const double setup_seconds = detail::seconds_since(setup_start);
    result = detail::run_loop<secure::SecureMatrix>(
        cfg, grid, backend, twin, std::move(u), std::move(u_twin),
        expected_l_step(cfg.scheme, grid.dim, at_capacity), tg, stepper,
        [](const secure::Backend& b, const secure::SecureMatrix& m) {
          std::vector<double> flat;
          for (const auto& row : secure::dec_matrix(b, m)) {
            flat.insert(flat.end(), row.begin(), row.end());
          }
          return flat;
        });
    result.setup_seconds = setup_seconds;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Refresh-depth sweep (ledger model)

struct RefreshSweepRow {
  int l_refresh = 0;
  u64 bootstraps = 0;
  u64 total_ops = 0;
  double weighted_cost = 0;  // ops weighted by (level + 1), linear cost model
  double model_error = 0;    // bootstraps x eps_boot
};

/// Pure ledger computation: walks the schedule for each candidate l_refresh
/// and accumulates a level-weighted operation cost plus a per-bootstrap
/// charge proportional to l_max + 1.
inline std::vector<RefreshSweepRow> sweep_refresh_model(
    Scheme scheme, int dim, bool at_capacity, int l_max, u32 total_steps,
    const std::vector<int>& l_refresh_list, double eps_boot,
    double boot_cost_factor = 60.0) {
  std::vector<RefreshSweepRow> rows;
  const StepOpCounts ops = expected_step_ops(scheme, dim, at_capacity);
  const u64 ops_per_step = ops.adds + ops.mults + ops.rotates;
  const int l_step = expected_l_step(scheme, dim, at_capacity);
  for (int l_refresh : l_refresh_list) {
    if (l_refresh <= 0 || l_refresh > l_max) {
      throw ConfigError("l_refresh outside (0, l_max]");
    }
    RefreshSweepRow row;
    row.l_refresh = l_refresh;
    int level = l_max;
    double cost = 0;
    for (u32 s = 1; s <= total_steps; ++s) {
      if (level - l_step < 1) {
        row.bootstraps += 1;
        cost += boot_cost_factor * static_cast<double>(l_max + 1);
        level = l_refresh;
      }
      cost += static_cast<double>(ops_per_step) *
              static_cast<double>(level + 1);
      level -= l_step;
    }
    row.total_ops = ops_per_step * total_steps + row.bootstraps;
    row.weighted_cost = cost;
    row.model_error = static_cast<double>(row.bootstraps) * eps_boot;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hesim::pde

#endif  // HESIM_SOLVERS_HPP
