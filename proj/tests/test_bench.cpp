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

#include <algorithm>
#include <cmath>

#include "hesim/benchkit.hpp"

using namespace hesim;
using namespace hesim::benchkit;

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v.size() % 2 ? v[v.size() / 2]
                      : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

BenchSpec small_spec() {
  BenchSpec spec;
  spec.ring_dim = 1 << 11;
  spec.depths = {4};
  spec.repetitions = 5;
  spec.seed = 3;
  return spec;
}

}  // namespace

TEST_CASE("bench spec validation") {
  BenchSpec spec = small_spec();
  spec.repetitions = 4;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec.repetitions = 5;
  spec.depths.clear();
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  CHECK_THROWS_AS((void)bench_op_from_name("frobnицate"), ConfigError);
  for (BenchOp op : all_bench_ops()) {
    CHECK(bench_op_from_name(bench_op_name(op)) == op);
  }
}

TEST_CASE("rotation error does not depend on the rotation index") {
  const BenchSpec spec = small_spec();
  double max_err = 0, min_err = 1e300;
  for (BenchOp op : {BenchOp::RotateM1, BenchOp::Rotate5, BenchOp::RotateM25}) {
    std::vector<double> errs;
    for (const auto& row : run_bench_cell(op, 4, spec)) {
      errs.push_back(row.error);
    }
    const double med = median_of(errs);
    max_err = std::max(max_err, med);
    min_err = std::min(min_err, med);
  }
  CHECK(max_err / min_err < 10.0);
}

TEST_CASE("scalar addition is cheaper than ciphertext addition") {
  BenchSpec spec;
  spec.ring_dim = 1 << 13;
  spec.depths = {25};
  spec.repetitions = 9;
  spec.seed = 11;
  std::vector<double> cc, cs;
  for (const auto& row : run_bench_cell(BenchOp::AddCC, 25, spec)) {
    cc.push_back(row.seconds);
  }
  for (const auto& row : run_bench_cell(BenchOp::AddCS, 25, spec)) {
    cs.push_back(row.seconds);
  }
  CHECK(median_of(cs) < median_of(cc));
}

TEST_CASE("error columns replay identically for a fixed seed") {
  const BenchSpec spec = small_spec();
  for (BenchOp op : {BenchOp::AddCC, BenchOp::MulCC, BenchOp::Refresh}) {
    const auto a = run_bench_cell(op, 4, spec);
    const auto c = run_bench_cell(op, 4, spec);
    REQUIRE(a.size() == c.size());
    for (size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].error == c[i].error);
      CHECK(a[i].levels_consumed == c[i].levels_consumed);
    }
  }
}

TEST_CASE("levels-consumed column reflects the operation semantics") {
  const BenchSpec spec = small_spec();
  const auto check_levels = [&](BenchOp op, int expect) {
    for (const auto& row : run_bench_cell(op, 4, spec)) {
      CHECK(row.levels_consumed == expect);
    }
  };
  check_levels(BenchOp::AddCC, 0);
  check_levels(BenchOp::AddCS, 0);
  check_levels(BenchOp::MulCC, 1);
  check_levels(BenchOp::MulCP, 1);
  check_levels(BenchOp::MulCS, 1);
  check_levels(BenchOp::RotateM1, 0);
  // Refresh resets to depth - 2 here, so it "consumes" 2.
  check_levels(BenchOp::Refresh, 2);
}

TEST_CASE("refresh error sits at the injected noise amplitude") {
  BenchSpec spec = small_spec();
  spec.eps_boot = 1e-6;
  for (const auto& row : run_bench_cell(BenchOp::Refresh, 4, spec)) {
    CHECK(row.error < 1.1e-6);
    CHECK(row.error > 1e-8);  // noise injection actually happened
  }
}

TEST_CASE("multiplication errors dwarf addition errors, refresh dwarfs both") {
  const BenchSpec spec = small_spec();
  const auto med_err = [&](BenchOp op) {
    std::vector<double> errs;
    for (const auto& row : run_bench_cell(op, 4, spec)) {
      errs.push_back(row.error);
    }
    return median_of(errs);
  };
  const double add_err = med_err(BenchOp::AddCC);
  const double refresh_err = med_err(BenchOp::Refresh);
  CHECK(add_err < 1e-6);
  CHECK(refresh_err > 10.0 * add_err);
}

TEST_CASE("addition noise slopes at a reduced ring") {
  const std::vector<int> ns = {2, 4, 8, 16, 32, 64, 128};
  const auto corr = addition_noise_curve(ns, true, 1 << 10, 40, 21);
  const auto uncorr = addition_noise_curve(ns, false, 1 << 10, 40, 22);
  CHECK(log_log_slope(corr) == doctest::Approx(1.0).epsilon(0.2));
  CHECK(log_log_slope(uncorr) == doctest::Approx(0.5).epsilon(0.45));
  // Correlated error strictly dominates at the largest n.
  CHECK(corr.back().error > uncorr.back().error);
}
