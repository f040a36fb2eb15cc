// Copyright 2026 The pcnn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "pcnn/ridge.hpp"
#include "pcnn/rng.hpp"

using namespace pcnn;

namespace {

double relu(double t) { return std::max(t, 0.0); }

// Threshold-ordered random sequence: draw thresholds, sort descending.
ReluKnotSequence random_ordered_sequence(Rng& rng, std::size_t n) {
  std::vector<double> thresholds(n);
  for (auto& t : thresholds) t = rng.uniform(-2.0, 2.0);
  std::sort(thresholds.rbegin(), thresholds.rend());
  std::vector<ReluKnot> pairs(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double w = rng.uniform(0.1, 3.0);
    pairs[j] = {w, w * thresholds[j]};
  }
  return ReluKnotSequence(std::move(pairs));
}

// Exact piecewise-linear interpolant of phi at n+1 equispaced knots.
double pl_interpolant(const ProfileSpec& p, std::size_t n, double y) {
  const double h = (p.y_max - p.y_min) / static_cast<double>(n);
  const double pos =
      std::clamp((y - p.y_min) / h, 0.0, static_cast<double>(n));
  const auto j = std::min(static_cast<std::size_t>(pos), n - 1);
  const double t0 = p.y_min + static_cast<double>(j) * h;
  const double lambda = (y - t0) / h;
  return (1.0 - lambda) * p.evaluator(t0) + lambda * p.evaluator(t0 + h);
}

double sup_error(const KnotApproximant& a, const ProfileSpec& p,
                 std::size_t grid) {
  double err = 0.0;
  for (std::size_t i = 0; i <= grid; ++i) {
    const double y =
        p.y_min + (p.y_max - p.y_min) * static_cast<double>(i) /
                      static_cast<double>(grid);
    err = std::max(err, std::abs(a(y) - p.evaluator(y)));
  }
  return err;
}

}  // namespace

TEST_CASE("flat and nested evaluation hand examples") {
  const ReluKnotSequence knots({{1.0, 0.5}, {1.0, 0.0}});
  CHECK(flat_sum_eval(knots, 1.0) == doctest::Approx(1.5));
  CHECK(flat_sum_eval(knots, 0.25) == doctest::Approx(0.25));
  CHECK(nested_eval(knots, 1.0) == doctest::Approx(1.5));
  CHECK(nested_eval(knots, 0.25) == doctest::Approx(0.25));
  CHECK(flat_sum_eval(ReluKnotSequence(), 3.0) == 0.0);
  const ReluKnotSequence single({{2.0, 1.0}});
  CHECK(nested_eval(single, 1.0) == doctest::Approx(relu(2.0 - 1.0)));
}

TEST_CASE("check_order matches the threshold definition") {
  CHECK(check_order(ReluKnotSequence({{1.0, 0.9}, {1.0, 0.5}, {1.0, 0.1}})));
  CHECK_FALSE(check_order(ReluKnotSequence({{1.0, 0.1}, {1.0, 0.5}})));
  CHECK(check_order(ReluKnotSequence({{2.0, 1.0}})));
  CHECK(check_order(ReluKnotSequence()));
  CHECK_THROWS_AS(ReluKnotSequence({{0.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(ReluKnotSequence({{-1.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("collapsing identity holds for ordered sequences") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto knots = random_ordered_sequence(
        rng, 1 + static_cast<std::size_t>(rng.uniform_int(0, 11)));
    REQUIRE(check_order(knots));
    for (int i = 0; i < 1000; ++i) {
      const double y = rng.uniform(-3.0, 3.0);
      CHECK(std::abs(nested_eval(knots, y) - flat_sum_eval(knots, y)) <=
            1e-12);
    }
  }
}

TEST_CASE("ordering is necessary: fixed unordered witness") {
  // Thresholds 0.5 then 1.0 violate the non-increasing order. At y = 0.8 the
  // nested form truncates the negative second term against the first one.
  const ReluKnotSequence witness({{1.0, 0.5}, {1.0, 1.0}});
  REQUIRE_FALSE(check_order(witness));
  const double y = 0.8;
  CHECK(flat_sum_eval(witness, y) == doctest::Approx(0.3));
  CHECK(nested_eval(witness, y) == doctest::Approx(0.1));
  CHECK(std::abs(nested_eval(witness, y) - flat_sum_eval(witness, y)) > 0.1);
}

TEST_CASE("knot functions are reproduced exactly") {
  const ProfileSpec profile{[](double t) { return relu(t - 0.5); }, 0.0, 1.0,
                            std::nullopt};
  const auto approx = build_knots(profile, 2);
  CHECK(sup_error(approx, profile, 10000) <= 1e-12);
}

TEST_CASE("piecewise-linear profiles with breakpoints at knots are exact") {
  const ProfileSpec profile{
      [](double t) { return 1.0 + 0.5 * t - 2.0 * relu(t - 0.25) +
                            3.0 * relu(t - 0.75); },
      0.0, 1.0, std::nullopt};
  const auto approx = build_knots(profile, 4);  // knots at multiples of 0.25
  CHECK(sup_error(approx, profile, 10000) <= 1e-10);
}

TEST_CASE("emitted chains are threshold-ordered with positive weights") {
  const ProfileSpec profile{[](double t) { return std::cos(2.0 * std::numbers::pi * t); },
                            -1.0, 2.0, std::nullopt};
  const auto approx = build_knots(profile, 37);
  CHECK(check_order(approx.positive));
  CHECK(check_order(approx.negative));
}

TEST_CASE("approximant equals the piecewise-linear interpolant") {
  const ProfileSpec profile{[](double t) { return std::cos(2.0 * std::numbers::pi * t); },
                            0.0, 1.0, std::nullopt};
  const auto approx = build_knots(profile, 16);
  for (int i = 0; i <= 1000; ++i) {
    const double y = static_cast<double>(i) / 1000.0;
    CHECK(std::abs(approx(y) - pl_interpolant(profile, 16, y)) <= 1e-10);
  }
}

TEST_CASE("cos profile: error bound and monotone decrease") {
  const ProfileSpec profile{[](double t) { return std::cos(2.0 * std::numbers::pi * t); },
                            0.0, 1.0, std::nullopt};
  double last = 1e30;
  for (std::size_t n : {8, 16, 32, 64}) {
    const auto approx = build_knots(profile, n);
    const double err = sup_error(approx, profile, 10000);
    // Standard linear-interpolation bound for a C^2 function, with slack.
    CHECK(err <= 4.0 * std::pow(2.0 * std::numbers::pi, 2) /
                     static_cast<double>(n * n));
    CHECK(err < last);
    last = err;
  }
}

TEST_CASE("invalid inputs are rejected") {
  const ProfileSpec degenerate{[](double) { return 0.0; }, 1.0, 1.0,
                               std::nullopt};
  CHECK_THROWS_AS(build_knots(degenerate, 4), std::invalid_argument);
  const ProfileSpec ok{[](double) { return 0.0; }, 0.0, 1.0, std::nullopt};
  CHECK_THROWS_AS(build_knots(ok, 0), std::invalid_argument);
  const ProfileSpec nan_profile{
      [](double) { return std::numeric_limits<double>::quiet_NaN(); }, 0.0,
      1.0, std::nullopt};
  CHECK_THROWS_AS(build_knots(nan_profile, 4), std::invalid_argument);
}

TEST_CASE("named profile registry") {
  CHECK(make_profile("cos")(0.0) == doctest::Approx(1.0));
  CHECK(make_profile("abs", 0.5)(0.75) == doctest::Approx(0.25));
  CHECK(make_profile("relu-shift", 1.0)(1.5) == doctest::Approx(0.5));
  CHECK(make_profile("gaussian-periodic", 0.2)(0.3) ==
        doctest::Approx(make_profile("gaussian-periodic", 0.2)(1.3))
            .epsilon(1e-12));
  CHECK_THROWS_AS(make_profile("no-such-profile"), std::invalid_argument);
}
