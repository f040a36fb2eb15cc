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

#include <cmath>
#include <numbers>
#include <vector>

#include "pcnn/kernels.hpp"
#include "pcnn/network.hpp"
#include "pcnn/rng.hpp"

using namespace pcnn;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(lo, hi);
  return v;
}

}  // namespace

TEST_CASE("bias structure invariant: constant middle block") {
  CHECK_NOTHROW(BiasVector({1.0, 2.0, 2.0, 2.0, 3.0}, 1));
  CHECK_THROWS_AS(BiasVector({1.0, 2.0, 9.0, 2.0, 3.0}, 1),
                  std::invalid_argument);
  CHECK(BiasVector::with_minimal_edge({1.0, 2.0, 9.0, 2.0, 3.0}).edge_width()
        == 2);
  CHECK(BiasVector::with_minimal_edge({5.0, 5.0, 5.0}).edge_width() == 0);
}

TEST_CASE("forward: delta filter with zero bias is ReLU") {
  PeriodicCnn net;
  net.width = 2;
  net.layers.push_back({Filter::delta(2),
                        BiasVector(std::vector<double>(2, 0.0), 0)});
  net.readout = {1.0, 1.0};
  CHECK(forward(net, {1.0, 2.0}) == std::vector<double>{1.0, 2.0});
  CHECK(forward(net, {-1.0, 2.0}) == std::vector<double>{0.0, 2.0});
  CHECK_THROWS_AS(forward(net, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("two inactive-ReLU layers equal one merged layer") {
  Rng rng(41);
  const std::size_t d = 8;
  for (int trial = 0; trial < 100; ++trial) {
    const Filter w1(random_vec(rng, 3, -1.0, 1.0), d);
    const Filter w2(random_vec(rng, 3, -1.0, 1.0), d);
    // Biases negative enough that every pre-ReLU value stays positive for
    // inputs in [0, 1]^d: |z| <= 3 after one filter, <= 9 after two.
    const std::vector<double> b1(d, -4.0);
    const std::vector<double> b2(d, -20.0);

    PeriodicCnn net;
    net.width = d;
    net.layers.push_back({w1, BiasVector(b1, 0)});
    net.layers.push_back({w2, BiasVector(b2, 0)});

    const auto x = random_vec(rng, d, 0.0, 1.0);
    const auto h = forward(net, x);

    // Merged form: h = (w2*w1)*x - B with B = w2*b1 + b2.
    const auto conv = circular_convolve(compose_filters(w2, w1), x);
    auto B = circular_convolve(w2, b1);
    for (std::size_t i = 0; i < d; ++i) B[i] += b2[i];
    for (std::size_t i = 0; i < d; ++i)
      CHECK(h[i] == doctest::Approx(conv[i] - B[i]).epsilon(1e-10));
  }
}

TEST_CASE("shift_margin hand example and positivity property") {
  CHECK(shift_margin({1.0, -1.0}, {{0.0, 1.0}, {0.0, 1.0}}) ==
        doctest::Approx(3.0));
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(rng.uniform_int(0, 4));
    const auto a = random_vec(rng, d, -2.0, 2.0);
    Box box;
    for (std::size_t i = 0; i < d; ++i) {
      const double lo = rng.uniform(-2.0, 1.0);
      box.push_back({lo, lo + rng.uniform(0.1, 2.0)});
    }
    const double A = shift_margin(a, box);
    for (int s = 0; s < 100; ++s) {
      double y = 0.0;
      for (std::size_t i = 0; i < d; ++i)
        y += a[i] * rng.uniform(box[i].lo, box[i].hi);
      CHECK(y + A >= 1.0);
    }
  }
}

TEST_CASE("identity ridge: a = e_d reproduces x_d") {
  RidgeSpec spec;
  spec.direction = {0.0, 0.0, 1.0};
  spec.profile = ProfileSpec{[](double t) { return t; }, 0.0, 1.0,
                             std::nullopt};
  const Box box(3, Interval{0.0, 1.0});
  const auto build = build_ridge_network(spec, 2, 2, box, 2000, 3);
  CHECK(build.report.sup_error <= 1e-10);
}

TEST_CASE("hand-checked ridge: a=(1,1,0), phi = relu(t - 1)") {
  RidgeSpec spec;
  spec.direction = {1.0, 1.0, 0.0};
  spec.profile = ProfileSpec{[](double t) { return std::max(t - 1.0, 0.0); },
                             0.0, 2.0, std::nullopt};
  const Box box(3, Interval{0.0, 1.0});
  const auto build = build_ridge_network(spec, 2, 4, box, 1000, 5);
  CHECK(evaluate(build.net, {0.8, 0.7, 0.0}) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(build.report.sup_error <= 1e-9);
}

TEST_CASE("construction correctness: network equals its 1-D approximant") {
  Rng rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = 5 + static_cast<std::size_t>(rng.uniform_int(0, 3));
    RidgeSpec spec;
    spec.direction.resize(d);
    bool nonzero = false;
    for (auto& a : spec.direction) {
      a = static_cast<double>(rng.uniform_int(-2, 2));
      nonzero |= (a != 0.0);
    }
    if (!nonzero) spec.direction[0] = 1.0;
    spec.profile = ProfileSpec{
        [](double t) { return std::cos(2.0 * std::numbers::pi * t); }, 0.0,
        1.0, std::nullopt};
    const Box box(d, Interval{-0.5, 0.5});
    const auto build = build_ridge_network(spec, 2, 9, box, 200, 11);

    Rng sampler(1000 + static_cast<std::uint64_t>(trial));
    for (int s = 0; s < 200; ++s) {
      std::vector<double> x(d);
      for (auto& xi : x) xi = sampler.uniform(-0.5, 0.5);
      const double y = kernels::dot(spec.direction, x);
      CHECK(evaluate(build.net, x) ==
            doctest::Approx(build.approximant(y)).epsilon(1e-9));
    }
  }
}

TEST_CASE("every constructed layer keeps the structured-bias invariant") {
  RidgeSpec spec;
  spec.direction = {1.0, -2.0, 0.0, 3.0, 1.0, 2.0};
  spec.profile = ProfileSpec{
      [](double t) { return std::cos(2.0 * std::numbers::pi * t); }, 0.0, 1.0,
      std::nullopt};
  const Box box(6, Interval{0.0, 1.0});
  const auto build = build_ridge_network(spec, 2, 8, box, 100, 1);
  for (const auto& layer : build.net.layers) {
    CHECK(layer.bias.size() == 6);
    CHECK(layer.filter.period() == 6);
    // Rebuilding with the declared edge width must not throw.
    CHECK_NOTHROW(BiasVector(layer.bias.values(), layer.bias.edge_width()));
  }
  CHECK(build.net.readout.size() == 6);
}

TEST_CASE("construction preconditions") {
  RidgeSpec spec;
  spec.direction = {1.0, 1.0, 1.0};
  spec.profile = ProfileSpec{[](double t) { return t; }, 0.0, 3.0,
                             std::nullopt};
  const Box box(3, Interval{0.0, 1.0});
  CHECK_THROWS_AS(build_ridge_network(spec, 1, 4, box), std::invalid_argument);
  CHECK_THROWS_AS(build_ridge_network(spec, 4, 4, box), std::invalid_argument);
  RidgeSpec zero = spec;
  zero.direction = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(build_ridge_network(zero, 2, 4, box),
                  std::invalid_argument);
  // Profiles needing both slope signs require width >= 5.
  RidgeSpec wavy = spec;
  wavy.profile = ProfileSpec{
      [](double t) { return std::cos(2.0 * std::numbers::pi * t); }, 0.0, 3.0,
      std::nullopt};
  CHECK_THROWS_AS(build_ridge_network(wavy, 2, 8, box),
                  std::invalid_argument);
}

TEST_CASE("error report is deterministic in the seed") {
  RidgeSpec spec;
  spec.direction = {1.0, 0.0, -1.0, 0.0, 1.0};
  spec.profile = ProfileSpec{
      [](double t) { return std::cos(2.0 * std::numbers::pi * t); }, 0.0, 1.0,
      std::nullopt};
  const Box box(5, Interval{0.0, 1.0});
  const auto a = build_ridge_network(spec, 2, 8, box, 500, 42);
  const auto b = build_ridge_network(spec, 2, 8, box, 500, 42);
  CHECK(a.report.sup_error == b.report.sup_error);
  CHECK(a.report.mean_error == b.report.mean_error);
}
