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

// Command-line harness: primitive-operation benchmarks, convergence sweeps,
// full simulations, and refresh-depth sweeps. Outputs are CSV (authoritative)
// plus JSON manifests and optional SVG charts.

#include <algorithm>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "hesim/hesim.hpp"

namespace {

using namespace hesim;

constexpr int kExitConfigError = 2;
constexpr int kExitLevelExhausted = 3;

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  if (out.empty()) throw ConfigError("empty list: " + csv);
  return out;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// ---------------------------------------------------------------------------
// bench

struct BenchFlags {
  std::string ops = "all";
  std::string depths = "5,13,21,29";
  int reps = 5;
  bool correlated = false;
  bool svg = false;
  u32 ring_dim = u32{1} << 13;
  int scale_bits = 40;
  double eps_boot = 1e-6;
  u64 seed = 1;
  std::string out = "out";
};

int cmd_bench(const BenchFlags& flags) {
  benchkit::BenchSpec spec;
  if (flags.ops != "all") {
    spec.ops.clear();
    std::stringstream in(flags.ops);
    std::string name;
    while (std::getline(in, name, ',')) {
      if (!name.empty()) spec.ops.push_back(benchkit::bench_op_from_name(name));
    }
  }
  spec.depths = parse_int_list(flags.depths);
  spec.repetitions = flags.reps;
  spec.correlated = flags.correlated;
  spec.ring_dim = flags.ring_dim;
  spec.scale_bits = flags.scale_bits;
  spec.eps_boot = flags.eps_boot;
  spec.seed = flags.seed;
  spec.validate();

  report::ensure_dir(flags.out);
  const std::vector<benchkit::ReportRow> rows = benchkit::run_bench(spec);

  report::CsvFile csv(flags.out + "/bench.csv",
                      {"op", "l_max", "rep", "error", "seconds", "levels"});
  for (const auto& r : rows) {
    csv.write_row({r.op, report::fmt(r.l_max), report::fmt(r.rep),
                   report::fmt(r.error), report::fmt(r.seconds),
                   report::fmt(r.levels_consumed)});
  }

  // Median error/time per (op, depth) cell.
  std::map<std::pair<std::string, int>, std::vector<double>> errs, times;
  for (const auto& r : rows) {
    errs[{r.op, r.l_max}].push_back(r.error);
    times[{r.op, r.l_max}].push_back(r.seconds);
  }
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& [key, es] : errs) {
    summary.push_back({{"op", key.first},
                       {"l_max", key.second},
                       {"median_error", median(es)},
                       {"median_seconds", median(times[key])}});
  }
  report::write_json(flags.out + "/bench_summary.json",
                     {{"format_version", 1},
                      {"command", "bench"},
                      {"timestamp", report::iso_timestamp()},
                      {"seed", spec.seed},
                      {"ring_dim", spec.ring_dim},
                      {"repetitions", spec.repetitions},
                      {"correlated", spec.correlated},
                      {"cells", summary}});

  if (flags.svg) {
    std::map<std::string, report::Series> err_series, time_series;
    for (const auto& [key, es] : errs) {
      auto& s = err_series[key.first];
      s.name = key.first;
      s.x.push_back(key.second);
      s.y.push_back(median(es));
      auto& t = time_series[key.first];
      t.name = key.first;
      t.x.push_back(key.second);
      t.y.push_back(median(times[key]));
    }
    std::vector<report::Series> e_list, t_list;
    for (auto& [_, s] : err_series) e_list.push_back(s);
    for (auto& [_, s] : time_series) t_list.push_back(s);
    report::svg_line_chart(flags.out + "/bench_error.svg",
                           "Operation error vs depth", "l_max", "Linf error",
                           e_list, true);
    report::svg_line_chart(flags.out + "/bench_time.svg",
                           "Operation time vs depth", "l_max", "seconds",
                           t_list, true);
  }
  std::cout << "bench: wrote " << rows.size() << " rows to " << flags.out
            << "/bench.csv\n";
  return 0;
}

// ---------------------------------------------------------------------------
// convergence

struct ConvergenceFlags {
  std::string scheme = "both";  // upwind | lax_wendroff | both
  std::string dim = "both";     // 1 | 2 | both
  std::string n_list = "32,64,128,256";
  std::string backend = "exact";
  int lmax = 15;
  int lrefresh = 12;
  u32 ring_dim = u32{1} << 13;
  int scale_bits = 40;
  double eps_boot = 1e-6;
  u64 seed = 1;
  std::string out = "out";
};

struct ConvergenceCell {
  pde::Scheme scheme;
  int dim;
  u32 n;
  double error = 0;
};

int cmd_convergence(const ConvergenceFlags& flags) {
  const std::vector<int> ns = parse_int_list(flags.n_list);
  for (size_t i = 1; i < ns.size(); ++i) {
    if (ns[i] != 2 * ns[i - 1]) {
      throw ConfigError("n-list must be ascending powers of two refinements");
    }
  }
  std::vector<pde::Scheme> schemes;
  if (flags.scheme == "both" || flags.scheme == "upwind") {
    schemes.push_back(pde::Scheme::Upwind);
  }
  if (flags.scheme == "both" || flags.scheme == "lax_wendroff") {
    schemes.push_back(pde::Scheme::LaxWendroff);
  }
  if (schemes.empty()) throw ConfigError("unknown scheme: " + flags.scheme);
  std::vector<int> dims;
  if (flags.dim == "both" || flags.dim == "1") dims.push_back(1);
  if (flags.dim == "both" || flags.dim == "2") dims.push_back(2);
  if (dims.empty()) throw ConfigError("dim must be 1, 2 or both");
  const bool encrypted = flags.backend == "encrypted";
  if (!encrypted && flags.backend != "exact") {
    throw ConfigError("backend must be exact or encrypted");
  }

  std::vector<ConvergenceCell> cells;
  for (pde::Scheme scheme : schemes) {
    for (int dim : dims) {
      for (int n : ns) {
        if (encrypted) {
          const u32 packed = dim == 1 ? static_cast<u32>(n)
                                      : static_cast<u32>(n) * static_cast<u32>(n);
          if (next_power_of_two(packed) > flags.ring_dim / 2) continue;
        }
        cells.push_back({scheme, dim, static_cast<u32>(n)});
      }
    }
  }

  parallel_for_cells(cells.size(), [&](size_t i) {
    ConvergenceCell& cell = cells[i];
    cli::RunConfig rc;
    rc.scheme = pde::scheme_name(cell.scheme);
    rc.dim = cell.dim;
    rc.nx = cell.n;
    rc.ny = cell.n;
    rc.t_end = 0.5;
    rc.backend = encrypted ? "encrypted" : "exact";
    rc.eps_boot = flags.eps_boot;
    rc.lmax = flags.lmax;
    rc.lrefresh = flags.lrefresh;
    rc.ring_dim = flags.ring_dim;
    rc.scale_bits = flags.scale_bits;
    rc.seed = flags.seed + i;
    const pde::RunResult r =
        pde::run_simulation(rc.advection(), rc.grid(), rc.make_backend());
    cell.error = r.l2_vs_exact;
  });

  report::ensure_dir(flags.out);
  report::CsvFile csv(flags.out + "/convergence.csv",
                      {"backend", "scheme", "dim", "N", "l2_error", "eoc"});
  for (size_t i = 0; i < cells.size(); ++i) {
    const auto& cell = cells[i];
    std::string eoc_text;
    if (i > 0 && cells[i - 1].scheme == cell.scheme &&
        cells[i - 1].dim == cell.dim && cells[i - 1].n * 2 == cell.n) {
      const auto e = pde::eoc(cells[i - 1].error, cell.error);
      if (e) eoc_text = report::fmt(*e);
    }
    csv.write_row({flags.backend, pde::scheme_name(cell.scheme),
                   report::fmt(cell.dim), report::fmt(cell.n),
                   report::fmt(cell.error), eoc_text});
    std::cout << pde::scheme_name(cell.scheme) << " " << cell.dim << "D N="
              << cell.n << "  e=" << report::fmt(cell.error)
              << (eoc_text.empty() ? "" : "  EOC=" + eoc_text) << "\n";
  }
  report::write_json(flags.out + "/convergence_manifest.json",
                     {{"format_version", 1},
                      {"command", "convergence"},
                      {"timestamp", report::iso_timestamp()},
                      {"backend", flags.backend},
                      {"n_list", ns},
                      {"lmax", flags.lmax},
                      {"lrefresh", flags.lrefresh},
                      {"ring_dim", flags.ring_dim},
                      {"seed", flags.seed}});
  return 0;
}

// ---------------------------------------------------------------------------
// solve

int cmd_solve(const cli::RunConfig& cfg, const std::string& out,
              bool emit_svg) {
  cfg.validate();
  report::ensure_dir(out);
  const pde::GridSpec grid = cfg.grid();
  const pde::AdvectionConfig adv = cfg.advection();
  const pde::RunResult r = pde::run_simulation(adv, grid, cfg.make_backend());

  // Final field.
  if (grid.dim == 1) {
    report::CsvFile field(out + "/field.csv", {"i", "x", "u"});
    for (u32 i = 0; i < grid.nx; ++i) {
      field.write_row({report::fmt(i), report::fmt(i * grid.dx()),
                       report::fmt(r.final_1d[i])});
    }
  } else {
    report::CsvFile field(out + "/field.csv", {"i", "j", "x", "y", "u"});
    for (u32 i = 0; i < grid.nx; ++i) {
      for (u32 j = 0; j < grid.ny; ++j) {
        field.write_row({report::fmt(i), report::fmt(j),
                         report::fmt(i * grid.dx()),
                         report::fmt(j * grid.dy()),
                         report::fmt(r.final_2d[i][j])});
      }
    }
  }

  // Per-step traces: deterministic values in steps.csv, timings separately.
  {
    report::CsvFile steps(out + "/steps.csv",
                          {"step", "t", "linf_vs_exact_twin", "adds", "mults",
                           "rotates", "bootstraps", "level"});
    double t = 0;
    for (u32 s = 0; s < r.steps; ++s) {
      t += (s + 1 == r.steps && r.steps * r.dt > adv.t_end + 1e-12)
               ? adv.t_end - t
               : r.dt;
      steps.write_row({report::fmt(s + 1), report::fmt(t),
                       report::fmt(r.step_error_vs_twin[s]),
                       report::fmt(r.step_counters[s].adds),
                       report::fmt(r.step_counters[s].mults),
                       report::fmt(r.step_counters[s].rotates),
                       report::fmt(r.step_counters[s].bootstraps),
                       report::fmt(r.step_levels[s])});
    }
  }
  {
    report::CsvFile times(out + "/times.csv", {"step", "seconds"});
    for (u32 s = 0; s < r.steps; ++s) {
      times.write_row({report::fmt(s + 1), report::fmt(r.step_seconds[s])});
    }
  }

  nlohmann::json bootstraps = nlohmann::json::array();
  for (u32 s : r.bootstrap_steps) bootstraps.push_back(s);
  report::write_json(out + "/manifest.json",
                     {{"format_version", 1},
                      {"command", "solve"},
                      {"timestamp", report::iso_timestamp()},
                      {"config", cli::to_json(cfg)},
                      {"outputs", {"field.csv", "steps.csv", "times.csv"}},
                      {"results",
                       {{"steps", r.steps},
                        {"dt", r.dt},
                        {"l_step", r.l_step},
                        {"bootstrap_steps", bootstraps},
                        {"l2_vs_exact", r.l2_vs_exact},
                        {"setup_seconds", r.setup_seconds}}}});

  if (emit_svg && grid.dim == 1) {
    report::Series numeric{"numeric", {}, {}};
    report::Series exact{"exact", {}, {}};
    const auto ex = pde::exact_solution_1d(grid, adv, adv.t_end);
    for (u32 i = 0; i < grid.nx; ++i) {
      numeric.x.push_back(i * grid.dx());
      numeric.y.push_back(r.final_1d[i]);
      exact.x.push_back(i * grid.dx());
      exact.y.push_back(ex[i]);
    }
    report::svg_line_chart(out + "/field.svg", "Final field", "x", "u",
                           {numeric, exact});
  }

  std::cout << "solve: " << r.steps << " steps, dt=" << report::fmt(r.dt)
            << ", l_step=" << r.l_step << ", bootstraps="
            << r.bootstrap_steps.size()
            << ", l2_vs_exact=" << report::fmt(r.l2_vs_exact) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sweep-refresh

struct SweepFlags {
  std::string lrefresh_list = "5,7,9,11,13,15,17,19,21,23,25,27,29,31";
  std::string scheme = "lax_wendroff";
  int dim = 2;
  bool at_capacity = true;
  int lmax = 33;
  u32 steps = 256;
  double eps_boot = 1e-6;
  double boot_cost_factor = 60.0;
  std::string out = "out";
};

int cmd_sweep_refresh(const SweepFlags& flags) {
  const std::vector<int> candidates = parse_int_list(flags.lrefresh_list);
  for (int l : candidates) {
    if (l > flags.lmax - 1) {
      throw ConfigError("l_refresh candidates must leave bootstrap headroom");
    }
  }
  pde::Scheme scheme = pde::Scheme::LaxWendroff;
  if (flags.scheme == "upwind") scheme = pde::Scheme::Upwind;
  else if (flags.scheme != "lax_wendroff") {
    throw ConfigError("unknown scheme: " + flags.scheme);
  }
  const auto rows = pde::sweep_refresh_model(
      scheme, flags.dim, flags.at_capacity, flags.lmax, flags.steps,
      candidates, flags.eps_boot, flags.boot_cost_factor);

  report::ensure_dir(flags.out);
  report::CsvFile csv(flags.out + "/sweep_refresh.csv",
                      {"l_refresh", "bootstraps", "total_ops", "weighted_cost",
                       "model_error"});
  int best = rows.front().l_refresh;
  double best_cost = rows.front().weighted_cost;
  for (const auto& r : rows) {
    csv.write_row({report::fmt(r.l_refresh), report::fmt(r.bootstraps),
                   report::fmt(r.total_ops), report::fmt(r.weighted_cost),
                   report::fmt(r.model_error)});
    if (r.weighted_cost < best_cost) {
      best_cost = r.weighted_cost;
      best = r.l_refresh;
    }
  }
  report::write_json(flags.out + "/sweep_refresh_manifest.json",
                     {{"format_version", 1},
                      {"command", "sweep-refresh"},
                      {"timestamp", report::iso_timestamp()},
                      {"scheme", flags.scheme},
                      {"dim", flags.dim},
                      {"lmax", flags.lmax},
                      {"steps", flags.steps},
                      {"cost_minimizing_l_refresh", best}});
  std::cout << "sweep-refresh: cost-minimizing l_refresh = " << best << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hesim: leveled homomorphic arithmetic engine with secure "
               "finite-difference advection solvers"};
  app.require_subcommand(1);

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "primitive-operation benchmarks");
  bench_cmd->add_option("--ops", bench.ops, "comma list of ops or 'all'");
  bench_cmd->add_option("--depths", bench.depths, "comma list of l_max values");
  bench_cmd->add_option("--reps", bench.reps, "repetitions per cell (>= 5)");
  bench_cmd->add_flag("--correlated", bench.correlated,
                      "reuse one ciphertext for binary ops");
  bench_cmd->add_flag("--svg", bench.svg, "emit SVG charts");
  bench_cmd->add_option("--ring-dim", bench.ring_dim, "ring dimension");
  bench_cmd->add_option("--scale-bits", bench.scale_bits, "scaling modulus bits");
  bench_cmd->add_option("--eps-boot", bench.eps_boot, "refresh noise amplitude");
  bench_cmd->add_option("--seed", bench.seed, "rng seed");
  bench_cmd->add_option("--out", bench.out, "output directory");

  ConvergenceFlags conv;
  auto* conv_cmd = app.add_subcommand("convergence", "convergence-order sweeps");
  conv_cmd->add_option("--scheme", conv.scheme, "upwind | lax_wendroff | both");
  conv_cmd->add_option("--dim", conv.dim, "1 | 2 | both");
  conv_cmd->add_option("--n-list", conv.n_list, "ascending powers of two");
  conv_cmd->add_option("--backend", conv.backend, "exact | encrypted");
  conv_cmd->add_option("--lmax", conv.lmax, "maximum multiplicative depth");
  conv_cmd->add_option("--lrefresh", conv.lrefresh, "depth after refresh");
  conv_cmd->add_option("--ring-dim", conv.ring_dim, "ring dimension");
  conv_cmd->add_option("--scale-bits", conv.scale_bits, "scaling modulus bits");
  conv_cmd->add_option("--eps-boot", conv.eps_boot, "refresh noise amplitude");
  conv_cmd->add_option("--seed", conv.seed, "rng seed");
  conv_cmd->add_option("--out", conv.out, "output directory");

  cli::RunConfig solve_cfg;
  std::string solve_config_path;
  std::string solve_out = "out";
  bool solve_svg = false;
  auto* solve_cmd = app.add_subcommand("solve", "full simulation run");
  solve_cmd->add_option("--config", solve_config_path, "config file (key = value)");
  solve_cmd->add_option("--scheme", solve_cfg.scheme, "upwind | lax_wendroff");
  solve_cmd->add_option("--dim", solve_cfg.dim, "1 | 2");
  solve_cmd->add_option("--nx", solve_cfg.nx, "nodes in x");
  solve_cmd->add_option("--ny", solve_cfg.ny, "nodes in y");
  solve_cmd->add_option("--ax", solve_cfg.a_x, "advection speed in x");
  solve_cmd->add_option("--ay", solve_cfg.a_y, "advection speed in y");
  solve_cmd->add_option("--cfl", solve_cfg.cfl, "CFL number");
  solve_cmd->add_option("--t-end", solve_cfg.t_end, "final time");
  solve_cmd->add_option("--backend", solve_cfg.backend, "exact | encrypted");
  solve_cmd->add_option("--eps-boot", solve_cfg.eps_boot, "refresh noise amplitude");
  solve_cmd->add_option("--lmax", solve_cfg.lmax, "maximum multiplicative depth");
  solve_cmd->add_option("--lrefresh", solve_cfg.lrefresh, "depth after refresh");
  solve_cmd->add_option("--ring-dim", solve_cfg.ring_dim, "ring dimension");
  solve_cmd->add_option("--scale-bits", solve_cfg.scale_bits, "scaling modulus bits");
  solve_cmd->add_option("--seed", solve_cfg.seed, "rng seed");
  solve_cmd->add_option("--refresh-policy", solve_cfg.refresh_policy,
                        "standard | iterative");
  solve_cmd->add_option("--out", solve_out, "output directory");
  solve_cmd->add_flag("--svg", solve_svg, "emit SVG chart of the final field");

  SweepFlags sweep;
  auto* sweep_cmd =
      app.add_subcommand("sweep-refresh", "refresh-depth cost/error sweep");
  sweep_cmd->add_option("--lrefresh-list", sweep.lrefresh_list,
                        "comma list of l_refresh candidates");
  sweep_cmd->add_option("--scheme", sweep.scheme, "upwind | lax_wendroff");
  sweep_cmd->add_option("--dim", sweep.dim, "1 | 2");
  sweep_cmd->add_option("--at-capacity", sweep.at_capacity,
                        "length == capacity regime");
  sweep_cmd->add_option("--lmax", sweep.lmax, "maximum multiplicative depth");
  sweep_cmd->add_option("--steps", sweep.steps, "number of time steps");
  sweep_cmd->add_option("--eps-boot", sweep.eps_boot, "refresh noise amplitude");
  sweep_cmd->add_option("--boot-cost-factor", sweep.boot_cost_factor,
                        "bootstrap cost multiplier in the cost model");
  sweep_cmd->add_option("--out", sweep.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    if (bench_cmd->parsed()) return cmd_bench(bench);
    if (conv_cmd->parsed()) return cmd_convergence(conv);
    if (solve_cmd->parsed()) {
      cli::RunConfig cfg;
      if (!solve_config_path.empty()) {
        cfg = cli::load_config_file(solve_config_path);
      }
      if (!solve_config_path.empty()) {
        // Flags win: re-apply any explicitly passed ones over file values.
        auto passed = [&](const std::string& name) {
          return solve_cmd->count(name) > 0;
        };
        if (passed("--scheme")) cfg.scheme = solve_cfg.scheme;
        if (passed("--dim")) cfg.dim = solve_cfg.dim;
        if (passed("--nx")) cfg.nx = solve_cfg.nx;
        if (passed("--ny")) cfg.ny = solve_cfg.ny;
        if (passed("--ax")) cfg.a_x = solve_cfg.a_x;
        if (passed("--ay")) cfg.a_y = solve_cfg.a_y;
        if (passed("--cfl")) cfg.cfl = solve_cfg.cfl;
        if (passed("--t-end")) cfg.t_end = solve_cfg.t_end;
        if (passed("--backend")) cfg.backend = solve_cfg.backend;
        if (passed("--eps-boot")) cfg.eps_boot = solve_cfg.eps_boot;
        if (passed("--lmax")) cfg.lmax = solve_cfg.lmax;
        if (passed("--lrefresh")) cfg.lrefresh = solve_cfg.lrefresh;
        if (passed("--ring-dim")) cfg.ring_dim = solve_cfg.ring_dim;
        if (passed("--scale-bits")) cfg.scale_bits = solve_cfg.scale_bits;
        if (passed("--seed")) cfg.seed = solve_cfg.seed;
        if (passed("--refresh-policy")) {
          cfg.refresh_policy = solve_cfg.refresh_policy;
        }
      } else {
        cfg = solve_cfg;
      }
      return cmd_solve(cfg, solve_out, solve_svg);
    }
    if (sweep_cmd->parsed()) return cmd_sweep_refresh(sweep);
  } catch (const LevelExhaustedError& e) {
    std::cerr << "level exhausted: " << e.what() << "\n";
    return kExitLevelExhausted;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const HesimError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
