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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "hesim/solvers.hpp"
#include "oracle_helpers.hpp"

using namespace hesim;
using namespace hesim::pde;
using secure::Backend;

namespace {

// Direct index-based stencil references, independent of the secure-array
// path.
std::vector<double> stencil_upwind_1d(const std::vector<double>& u, double c) {
  const size_t n = u.size();
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) {
    const size_t im1 = (i + n - 1) % n;
    out[i] = u[i] - c * (u[i] - u[im1]);
  }
  return out;
}

std::vector<double> stencil_lw_1d(const std::vector<double>& u, double c) {
  const size_t n = u.size();
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) {
    const size_t im1 = (i + n - 1) % n;
    const size_t ip1 = (i + 1) % n;
    out[i] = u[i] - 0.5 * c * (u[ip1] - u[im1]) +
             0.5 * c * c * (u[ip1] - 2.0 * u[i] + u[im1]);
  }
  return out;
}

std::vector<std::vector<double>> stencil_upwind_2d(
    const std::vector<std::vector<double>>& u, double cx, double cy) {
  const size_t n = u.size(), m = u[0].size();
  std::vector<std::vector<double>> out(n, std::vector<double>(m));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) {
      const size_t im1 = (i + n - 1) % n;
      const size_t jm1 = (j + m - 1) % m;
      out[i][j] = u[i][j] - cx * (u[i][j] - u[im1][j]) -
                  cy * (u[i][j] - u[i][jm1]);
    }
  }
  return out;
}

std::vector<std::vector<double>> stencil_lw_2d(
    const std::vector<std::vector<double>>& u, double cx, double cy) {
  const size_t n = u.size(), m = u[0].size();
  std::vector<std::vector<double>> out(n, std::vector<double>(m));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) {
      const size_t im1 = (i + n - 1) % n, ip1 = (i + 1) % n;
      const size_t jm1 = (j + m - 1) % m, jp1 = (j + 1) % m;
      out[i][j] = (1.0 - cx * cx - cy * cy) * u[i][j] +
                  (0.5 * cx * cx - 0.5 * cx) * u[ip1][j] +
                  (0.5 * cx * cx + 0.5 * cx) * u[im1][j] +
                  (0.5 * cy * cy - 0.5 * cy) * u[i][jp1] +
                  (0.5 * cy * cy + 0.5 * cy) * u[i][jm1] +
                  0.25 * cx * cy *
                      (u[ip1][jp1] - u[ip1][jm1] - u[im1][jp1] + u[im1][jm1]);
    }
  }
  return out;
}

std::vector<double> sine_profile(u32 n) {
  std::vector<double> u(n);
  for (u32 i = 0; i < n; ++i) {
    u[i] = std::sin(2.0 * M_PI * static_cast<double>(i) /
                    static_cast<double>(n));
  }
  return u;
}

double max_abs_2d(const std::vector<std::vector<double>>& a,
                  const std::vector<std::vector<double>>& b) {
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, hesim_test::max_abs_diff(a[i], b[i]));
  }
  return m;
}

}  // namespace

TEST_CASE("one upwind step matches the stencil reference to 1e-12") {
  const Backend b = Backend::exact(8, 4);
  const std::vector<double> u0 = sine_profile(8);
  GridSpec grid{1, 8, 8};
  AdvectionConfig cfg;
  cfg.scheme = Scheme::Upwind;
  const double dt = 0.5 * grid.dx();
  const StepCoefficients c = compute_coefficients(cfg, grid, dt);
  const secure::SecureVector u = secure::enc_vector(b, u0, 8);
  const auto got = secure::dec_vector(b, step_upwind_1d(b, u, c));
  CHECK(hesim_test::max_abs_diff(got, stencil_upwind_1d(u0, c.cx)) < 1e-12);
}

TEST_CASE("one Lax-Wendroff step matches the stencil reference to 1e-12") {
  const Backend b = Backend::exact(8, 4);
  const std::vector<double> u0 = sine_profile(8);
  GridSpec grid{1, 8, 8};
  AdvectionConfig cfg;
  const double dt = 0.5 * grid.dx();
  const StepCoefficients c = compute_coefficients(cfg, grid, dt);
  const secure::SecureVector u = secure::enc_vector(b, u0, 8);
  const auto got = secure::dec_vector(b, step_lw_1d(b, u, c));
  CHECK(hesim_test::max_abs_diff(got, stencil_lw_1d(u0, c.cx)) < 1e-12);
}

TEST_CASE("2D steps match the stencil references to 1e-12") {
  Rng rng(5);
  std::vector<std::vector<double>> u0(8, std::vector<double>(8));
  for (auto& row : u0) {
    for (auto& v : row) v = 2.0 * rng.unit_real() - 1.0;
  }
  GridSpec grid{2, 8, 8};
  AdvectionConfig cfg;
  const double dt = 0.5 * grid.dx();
  const StepCoefficients c = compute_coefficients(cfg, grid, dt);
  const Backend b = Backend::exact(8, 4);
  const secure::SecureMatrix u = secure::enc_matrix(b, u0, 64);
  CHECK(max_abs_2d(secure::dec_matrix(b, step_upwind_2d(b, u, c)),
                   stencil_upwind_2d(u0, c.cx, c.cy)) < 1e-12);
  CHECK(max_abs_2d(secure::dec_matrix(b, step_lw_2d(b, u, c)),
                   stencil_lw_2d(u0, c.cx, c.cy)) < 1e-12);
}

TEST_CASE("a constant field is a fixed point of both schemes") {
  const Backend b = Backend::exact(8, 4);
  const std::vector<double> u0(8, 0.7);
  GridSpec grid{1, 8, 8};
  AdvectionConfig cfg;
  const StepCoefficients c = compute_coefficients(cfg, grid, 0.5 * grid.dx());
  const secure::SecureVector u = secure::enc_vector(b, u0, 8);
  const auto uw = secure::dec_vector(b, step_upwind_1d(b, u, c));
  const auto lw = secure::dec_vector(b, step_lw_1d(b, u, c));
  CHECK(hesim_test::max_abs_diff(uw, u0) < 1e-14);
  CHECK(hesim_test::max_abs_diff(lw, u0) < 1e-14);
}

TEST_CASE("a_y = 0 reduces the 2D upwind step to row-wise 1D upwind") {
  Rng rng(6);
  std::vector<std::vector<double>> u0(4, std::vector<double>(8));
  for (auto& row : u0) {
    for (auto& v : row) v = 2.0 * rng.unit_real() - 1.0;
  }
  AdvectionConfig cfg;
  cfg.scheme = Scheme::Upwind;
  StepCoefficients c;
  c.cx = 0.25;
  c.cy = 0.0;
  const Backend b = Backend::exact(8, 4);
  const secure::SecureMatrix u = secure::enc_matrix(b, u0, 32);
  const auto got = secure::dec_matrix(b, step_upwind_2d(b, u, c));
  // Column j of the result equals the 1D upwind step along x on column j.
  for (size_t j = 0; j < 8; ++j) {
    std::vector<double> col(4);
    for (size_t i = 0; i < 4; ++i) col[i] = u0[i][j];
    const auto expect = stencil_upwind_1d(col, c.cx);
    for (size_t i = 0; i < 4; ++i) {
      CHECK(std::abs(got[i][j] - expect[i]) < 1e-12);
    }
  }
}

TEST_CASE("per-step op counters match the table in all 8 configurations") {
  struct Cell {
    Scheme scheme;
    int dim;
    bool at_capacity;
    u32 nx, ny;
  };
  // Capacity cells use power-of-two data; sub-capacity cells do not.
  const std::vector<Cell> cells = {
      {Scheme::Upwind, 1, true, 64, 1},
      {Scheme::Upwind, 1, false, 13, 1},
      {Scheme::LaxWendroff, 1, true, 64, 1},
      {Scheme::LaxWendroff, 1, false, 13, 1},
      {Scheme::Upwind, 2, true, 4, 4},
      {Scheme::Upwind, 2, false, 5, 3},
      {Scheme::LaxWendroff, 2, true, 4, 4},
      {Scheme::LaxWendroff, 2, false, 5, 3},
  };
  for (const auto& cell : cells) {
    const Backend b = Backend::exact(10, 6);
    GridSpec grid{cell.dim, cell.nx, cell.ny};
    AdvectionConfig cfg;
    cfg.scheme = cell.scheme;
    const StepCoefficients c =
        compute_coefficients(cfg, grid, 0.5 * grid.dx());
    b.reset_counters();
    if (cell.dim == 1) {
      const secure::SecureVector u =
          secure::enc_vector(b, sine_profile(cell.nx));
      REQUIRE((u.capacity == cell.nx) == cell.at_capacity);
      (void)(cell.scheme == Scheme::Upwind ? step_upwind_1d(b, u, c)
                                           : step_lw_1d(b, u, c));
    } else {
      std::vector<std::vector<double>> u0(cell.nx,
                                          std::vector<double>(cell.ny, 0.5));
      u0[1][1] = -0.25;
      const secure::SecureMatrix u = secure::enc_matrix(b, u0);
      REQUIRE((u.capacity == cell.nx * cell.ny) == cell.at_capacity);
      (void)(cell.scheme == Scheme::Upwind ? step_upwind_2d(b, u, c)
                                           : step_lw_2d(b, u, c));
    }
    const StepOpCounts expect =
        expected_step_ops(cell.scheme, cell.dim, cell.at_capacity);
    const secure::OpCounters got = b.counters();
    CHECK(got.adds == expect.adds);
    CHECK(got.mults == expect.mults);
    CHECK(got.rotates == expect.rotates);
    CHECK(got.bootstraps == 0);
  }
}

TEST_CASE("expected level costs match an instrumented dry run") {
  for (Scheme scheme : {Scheme::Upwind, Scheme::LaxWendroff}) {
    for (bool at_capacity : {true, false}) {
      // 1D
      {
        const Backend b = Backend::exact(10, 6);
        const u32 n = at_capacity ? 16 : 13;
        const secure::SecureVector u =
            secure::enc_vector(b, sine_profile(n), 16);
        GridSpec grid{1, n, n};
        AdvectionConfig cfg;
        cfg.scheme = scheme;
        const StepCoefficients c =
            compute_coefficients(cfg, grid, 0.5 * grid.dx());
        const auto next = scheme == Scheme::Upwind ? step_upwind_1d(b, u, c)
                                                   : step_lw_1d(b, u, c);
        CHECK(10 - secure::levels_remaining(next) ==
              expected_l_step(scheme, 1, at_capacity));
      }
      // 2D
      {
        const Backend b = Backend::exact(10, 6);
        const u32 nx = at_capacity ? 4 : 5;
        const u32 ny = at_capacity ? 4 : 3;
        std::vector<std::vector<double>> u0(nx, std::vector<double>(ny, 0.3));
        const secure::SecureMatrix u = secure::enc_matrix(b, u0);
        GridSpec grid{2, nx, ny};
        AdvectionConfig cfg;
        cfg.scheme = scheme;
        const StepCoefficients c =
            compute_coefficients(cfg, grid, 0.5 * grid.dx());
        const auto next = scheme == Scheme::Upwind ? step_upwind_2d(b, u, c)
                                                   : step_lw_2d(b, u, c);
        CHECK(10 - secure::levels_remaining(next) ==
              expected_l_step(scheme, 2, at_capacity));
      }
    }
  }
}

TEST_CASE("both schemes preserve the discrete mean to 1e-12") {
  const Backend b = Backend::exact(40, 20);
  const u32 n = 32;
  const std::vector<double> u0 = sine_profile(n);
  GridSpec grid{1, n, n};
  AdvectionConfig cfg;
  const StepCoefficients c = compute_coefficients(cfg, grid, 0.5 * grid.dx());

  for (auto* step : {&step_upwind_1d, &step_lw_1d}) {
    secure::SecureVector u = secure::enc_vector(b, u0, n);
    const double mean0 =
        std::accumulate(u0.begin(), u0.end(), 0.0) / static_cast<double>(n);
    for (int s = 0; s < 16; ++s) u = (*step)(b, u, c);
    const auto v = secure::dec_vector(b, u);
    const double mean =
        std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
    CHECK(std::abs(mean - mean0) < 1e-12);
  }
}

TEST_CASE("exact_solution: t=0 identity, full period, half period") {
  GridSpec grid{1, 64, 64};
  AdvectionConfig cfg;  // a_x = 1, sine profile
  const auto at0 = exact_solution_1d(grid, cfg, 0.0);
  CHECK(hesim_test::max_abs_diff(at0, sine_profile(64)) < 1e-15);
  const auto at1 = exact_solution_1d(grid, cfg, 1.0);
  CHECK(hesim_test::max_abs_diff(at1, at0) < 1e-12);
  // Half period: sin(2 pi (x - 1/2)) = -sin(2 pi x).
  const auto half = exact_solution_1d(grid, cfg, 0.5);
  for (size_t i = 0; i < 64; ++i) {
    CHECK(std::abs(half[i] + at0[i]) < 1e-12);
  }
}

TEST_CASE("l2_error and eoc basics") {
  const std::vector<double> a = {1.0, 2.0, 3.0, 4.0};
  CHECK(l2_error(a, a) == 0.0);
  const std::vector<double> zero(4, 0.0);
  CHECK(l2_error(a, zero) ==
        doctest::Approx(std::sqrt((1.0 + 4.0 + 9.0 + 16.0) / 4.0)));
  CHECK(!eoc(0.0, 1.0).has_value());
  CHECK(eoc(4.0, 1.0).value() == doctest::Approx(2.0));
}

TEST_CASE("bootstrap schedule ledger: l_max 33, l_refresh 25, l_step 2") {
  const auto schedule = bootstrap_schedule(33, 25, 2, 100);
  REQUIRE(!schedule.empty());
  // Fresh budget: floor((33 - 1) / 2) = 16 steps fit, refresh before step 17.
  CHECK(schedule[0] == 17);
  // Afterwards every floor((25 - 1) / 2) = 12 steps.
  for (size_t i = 1; i < schedule.size(); ++i) {
    CHECK(schedule[i] - schedule[i - 1] == 12);
  }
}

TEST_CASE("bootstrap count over M steps is consistent with the ledger rate") {
  const int l_max = 33, l_refresh = 25, l_step = 2;
  const u32 steps = 500;
  const auto schedule = bootstrap_schedule(l_max, l_refresh, l_step, steps);
  const double rate = static_cast<double>(steps * l_step) /
                      static_cast<double>(l_refresh - 1);
  CHECK(std::abs(static_cast<double>(schedule.size()) - rate) <= rate * 0.1 + 2.0);
}

TEST_CASE("run_simulation on the exact backend: upwind damps, LW tracks") {
  GridSpec grid{1, 64, 64};
  AdvectionConfig cfg;
  cfg.t_end = 1.0;

  cfg.scheme = Scheme::Upwind;
  const RunResult uw =
      run_simulation(cfg, grid, Backend::exact(200, 150));
  cfg.scheme = Scheme::LaxWendroff;
  const RunResult lw =
      run_simulation(cfg, grid, Backend::exact(200, 150));

  REQUIRE(uw.steps == 128);  // dt = 0.5/64, t_end = 1
  CHECK(uw.dt == doctest::Approx(1.0 / 128.0));
  // First-order dissipation: upwind amplitude visibly below LW amplitude.
  double uw_max = 0, lw_max = 0;
  for (double v : uw.final_1d) uw_max = std::max(uw_max, std::abs(v));
  for (double v : lw.final_1d) lw_max = std::max(lw_max, std::abs(v));
  CHECK(uw_max / lw_max < 0.9);
  CHECK(lw.l2_vs_exact < uw.l2_vs_exact);

  // Counter trace equals steps x per-step table values.
  const StepOpCounts per = expected_step_ops(Scheme::LaxWendroff, 1, true);
  CHECK(lw.total_counters.adds == per.adds * lw.steps);
  CHECK(lw.total_counters.mults == per.mults * lw.steps);
  CHECK(lw.total_counters.rotates == per.rotates * lw.steps);
}

TEST_CASE("run_simulation schedules refreshes exactly per the ledger") {
  GridSpec grid{1, 64, 64};
  AdvectionConfig cfg;
  cfg.scheme = Scheme::LaxWendroff;
  cfg.t_end = 1.0;
  const Backend b = Backend::exact(33, 25);
  const RunResult r = run_simulation(cfg, grid, b);
  // Capacity regime: l_step = 1.
  CHECK(r.l_step == 1);
  const auto expect = bootstrap_schedule(33, 25, 1, r.steps);
  CHECK(r.bootstrap_steps == expect);
  CHECK(r.total_counters.bootstraps == expect.size());
}

TEST_CASE("final partial step uses a reduced dt and counts as a step") {
  GridSpec grid{1, 16, 16};
  AdvectionConfig cfg;
  cfg.scheme = Scheme::Upwind;
  cfg.t_end = 0.3;  // dt = 1/32; 0.3/dt = 9.6 -> 9 full + 1 partial
  const RunResult r = run_simulation(cfg, grid, Backend::exact(40, 30));
  CHECK(r.steps == 10);
  // Solution still matches the direct stencil composition.
  std::vector<double> ref = sine_profile(16);
  for (int s = 0; s < 9; ++s) ref = stencil_upwind_1d(ref, 0.5);
  const double rem = 0.3 - 9.0 * (1.0 / 32.0);
  ref = stencil_upwind_1d(ref, 1.0 * rem / (1.0 / 16.0));
  CHECK(hesim_test::max_abs_diff(ref, r.final_1d) < 1e-12);
}

TEST_CASE("exact-vs-encrypted: identical schedules and bounded drift") {
  ckks::ContextParams params;
  params.ring_dim = 1 << 10;
  params.batch_size = 16;
  params.max_level = 8;
  params.refresh_level = 6;
  auto ctx = ckks::make_context(params);
  Rng rng(2025);
  auto keys = std::make_shared<ckks::KeyBundle>(ckks::keygen(*ctx, rng));
  auto rot = std::make_shared<ckks::RotKeySet>();
  const Backend b = Backend::encrypted(ctx, keys, rot, 31337, 1e-6);

  GridSpec grid{1, 16, 16};
  AdvectionConfig cfg;
  cfg.scheme = Scheme::LaxWendroff;
  cfg.t_end = 1.0;  // 32 steps, refreshes every few steps
  const RunResult r = run_simulation(cfg, grid, b);
  CHECK(r.steps == 32);
  CHECK(r.bootstrap_steps ==
        bootstrap_schedule(params.max_level, params.refresh_level, r.l_step,
                           r.steps));
  // Before the first refresh the gap to the exact twin stays tiny; afterwards
  // it is bounded by the injected refresh noise.
  for (u32 s = 0; s < r.steps; ++s) {
    const u32 step = s + 1;
    if (r.bootstrap_steps.empty() || step < r.bootstrap_steps[0]) {
      CHECK(r.step_error_vs_twin[s] < 1e-8);
    }
    u32 since = 0;
    for (u32 bs : r.bootstrap_steps) {
      if (bs <= step) since = step - bs;
    }
    CHECK(r.step_error_vs_twin[s] <
          10.0 * 1e-6 * (static_cast<double>(since) + 1.0));
  }
}

TEST_CASE("refresh sweep: bootstrap count decreases, cost has interior min") {
  std::vector<int> candidates;
  for (int l = 5; l <= 31; l += 2) candidates.push_back(l);
  const auto rows = sweep_refresh_model(Scheme::LaxWendroff, 2, true, 33, 256,
                                        candidates, 1e-6);
  for (size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].bootstraps <= rows[i - 1].bootstraps);
    CHECK(rows[i].model_error <= rows[i - 1].model_error);
  }
  size_t best = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].weighted_cost < rows[best].weighted_cost) best = i;
  }
  CHECK(best > 0);
  CHECK(best < rows.size() - 1);
}

TEST_CASE("invalid configurations are rejected") {
  GridSpec grid{3, 8, 8};
  CHECK_THROWS_AS(grid.validate(), ConfigError);
  GridSpec tiny{1, 3, 3};
  CHECK_THROWS_AS(tiny.validate(), ConfigError);
  AdvectionConfig cfg;
  cfg.cfl = 1.5;
  CHECK_THROWS_AS(cfg.validate(1), ConfigError);
  cfg.cfl = 0.5;
  cfg.a_x = -1.0;
  CHECK_THROWS_AS(cfg.validate(1), ConfigError);
}

TEST_CASE("rotation keys for +-1 suffice for 1D schemes at full capacity") {
  ckks::ContextParams params;
  params.ring_dim = 1 << 9;
  params.batch_size = 16;
  params.max_level = 5;
  params.refresh_level = 3;
  auto ctx = ckks::make_context(params);
  Rng rng(64);
  auto keys = std::make_shared<ckks::KeyBundle>(ckks::keygen(*ctx, rng));
  auto rot = std::make_shared<ckks::RotKeySet>(
      ckks::rotation_keygen(*ctx, keys->sk, {-1, 1}, rng));
  const Backend b = secure::Backend::encrypted(ctx, keys, rot, 65);

  const std::vector<double> u0 = sine_profile(16);
  GridSpec grid{1, 16, 16};
  AdvectionConfig cfg;
  const StepCoefficients c = compute_coefficients(cfg, grid, 0.5 * grid.dx());
  const secure::SecureVector u = secure::enc_vector(b, u0, 16);
  // Both schemes step without touching any other rotation index.
  CHECK_NOTHROW((void)step_upwind_1d(b, u, c));
  CHECK_NOTHROW((void)step_lw_1d(b, u, c));
}

TEST_CASE("2D encrypted run matches its exact twin's schedule") {
  ckks::ContextParams params;
  params.ring_dim = 1 << 9;
  params.batch_size = 16;  // 4x4 grid packs exactly
  params.max_level = 9;
  params.refresh_level = 7;
  auto ctx = ckks::make_context(params);
  Rng rng(91);
  auto keys = std::make_shared<ckks::KeyBundle>(ckks::keygen(*ctx, rng));
  auto rot = std::make_shared<ckks::RotKeySet>();
  const Backend b = secure::Backend::encrypted(ctx, keys, rot, 92, 1e-6);

  GridSpec grid{2, 4, 4};
  AdvectionConfig cfg;
  cfg.scheme = Scheme::LaxWendroff;
  cfg.t_end = 0.5;
  const RunResult r = run_simulation(cfg, grid, b);
  CHECK(r.steps == 8);  // dt = 0.5 / (4/dx summed speeds) = 1/16
  CHECK(r.l_step == 2);
  CHECK(r.bootstrap_steps ==
        bootstrap_schedule(9, 7, 2, r.steps));
  for (double gap : r.step_error_vs_twin) CHECK(gap < 1e-5);
  // Counter trace equals steps x the capacity-regime 2D LW table row.
  const StepOpCounts per = expected_step_ops(Scheme::LaxWendroff, 2, true);
  CHECK(r.total_counters.adds == per.adds * r.steps);
  CHECK(r.total_counters.mults == per.mults * r.steps);
  CHECK(r.total_counters.rotates == per.rotates * r.steps);
}
