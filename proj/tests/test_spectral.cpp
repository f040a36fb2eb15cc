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

#include "pcnn/spectral.hpp"

using namespace pcnn;

namespace {

// The two-mode counterexample: phi(t) = cos(2 pi t) + cos(4 pi t), u = (1,2,0).
TorusRidge counterexample() {
  TorusRidge ridge;
  ridge.direction = {1, 2, 0};
  ridge.profile_coeffs = {{1, 0.5}, {-1, 0.5}, {2, 0.5}, {-2, 0.5}};
  return ridge;
}

}  // namespace

TEST_CASE("ridge spectrum places c_m at m*u") {
  const auto spectrum = ridge_spectrum(counterexample());
  CHECK(spectrum.entries().size() == 4);
  CHECK(spectrum.coeff({1, 2, 0}).real() == doctest::Approx(0.5));
  CHECK(spectrum.coeff({-1, -2, 0}).real() == doctest::Approx(0.5));
  CHECK(spectrum.coeff({2, 4, 0}).real() == doctest::Approx(0.5));
  CHECK(spectrum.coeff({-2, -4, 0}).real() == doctest::Approx(0.5));
  CHECK(spectrum.coeff({0, 0, 0}) == std::complex<double>(0.0));
  // Parseval: ||f||^2 = 4 * 1/4 = 1.
  CHECK(spectrum.energy() == doctest::Approx(1.0));
}

TEST_CASE("zero direction collapses all mass to frequency zero") {
  TorusRidge flat;
  flat.direction = {0, 0};
  flat.profile_coeffs = {{1, 0.25}, {2, 0.5}};
  const auto spectrum = ridge_spectrum(flat);
  CHECK(spectrum.entries().size() == 1);
  CHECK(spectrum.coeff({0, 0}).real() == doctest::Approx(0.75));
}

TEST_CASE("lower bound examples") {
  const auto ridge = counterexample();
  // Against the axis-1 lattice every coefficient is off-lattice: eps = 1.
  CHECK(lower_bound(ridge, FrequencyLattice({{1, 0, 0}}, 3)) ==
        doctest::Approx(1.0));
  // Against a lattice containing u, eps = 0.
  CHECK(lower_bound(ridge, FrequencyLattice({{1, 2, 0}}, 3)) ==
        doctest::Approx(0.0));
  // Orthogonal split: energy = on + off.
  const FrequencyLattice half({{2, 4, 0}}, 3);
  const auto spectrum = ridge_spectrum(ridge);
  CHECK(spectrum.energy_on(half) + spectrum.energy_off(half) ==
        doctest::Approx(spectrum.energy()).epsilon(1e-10));
}

TEST_CASE("empirical spectrum of a pure cosine") {
  const auto spectrum = empirical_spectrum(
      [](const std::vector<double>& x) {
        return std::cos(2.0 * std::numbers::pi * x[0]);
      },
      2, 16);
  CHECK(std::abs(spectrum.coeff({1, 0}) - std::complex<double>(0.5)) <= 1e-12);
  CHECK(std::abs(spectrum.coeff({-1, 0}) - std::complex<double>(0.5)) <=
        1e-12);
  double off = 0.0;
  for (const auto& [k, c] : spectrum.entries())
    if (!(k == IntVector{1, 0}) && !(k == IntVector{-1, 0}))
      off += std::norm(c);
  CHECK(off <= 1e-24);
}

TEST_CASE("grid energy matches sparse Parseval for band-limited functions") {
  const auto ridge = counterexample();
  const auto sparse = ridge_spectrum(ridge);
  const auto grid = empirical_spectrum(
      [&ridge](const std::vector<double>& x) { return ridge(x); }, 3, 32);
  CHECK(grid.energy() == doctest::Approx(sparse.energy()).epsilon(1e-8));
  const FrequencyLattice lattice({{1, 0, 0}}, 3);
  CHECK(std::sqrt(grid.energy_off(lattice)) ==
        doctest::Approx(lower_bound(ridge, lattice)).epsilon(1e-6));
}

TEST_CASE("empirical spectrum rejects non-finite samples") {
  CHECK_THROWS_AS(empirical_spectrum(
                      [](const std::vector<double>&) {
                        return std::numeric_limits<double>::infinity();
                      },
                      1, 8),
                  std::invalid_argument);
}

TEST_CASE("torus input map evaluates cosine features per channel") {
  const TorusInputMap input{{{1, 0}, {0, 2}}, 4};
  const auto h = input({0.25, 0.5});
  REQUIRE(h.size() == 4);
  CHECK(h[0] == doctest::Approx(std::cos(2.0 * std::numbers::pi * 0.25)));
  CHECK(h[1] == doctest::Approx(std::cos(2.0 * std::numbers::pi * 1.0)));
  CHECK(h[2] == doctest::Approx(h[0]));  // modes repeat cyclically
  CHECK(h[3] == doctest::Approx(h[1]));
}

TEST_CASE("linear network stays exactly on the lattice") {
  // Biases are large negative constants, so every ReLU acts as identity
  // plus a constant; the features remain trig polynomials over <e_1>.
  PeriodicCnn net;
  net.width = 2;
  net.layers.push_back({Filter({0.5, -0.25}, 2),
                        BiasVector(std::vector<double>(2, -10.0), 0)});
  net.readout = {1.0, 1.0};
  const FrequencyLattice lattice({{1, 0}}, 2);
  const TorusInputMap input{{{1, 0}, {2, 0}}, 2};
  const auto report = verify_relu_closure(net, lattice, 64, input);
  REQUIRE(report.layers.size() == 2);
  for (const auto& layer : report.layers)
    CHECK(layer.off_lattice_fraction <= 1e-12);
}

TEST_CASE("active ReLU keeps resolvable energy on the generated line") {
  // Depth-2 network with filters supported on axis 1 in the sense that all
  // input modes lie on <e_1>; ReLU is genuinely active.
  PeriodicCnn net;
  net.width = 2;
  net.layers.push_back({Filter({1.0, 0.5}, 2),
                        BiasVector(std::vector<double>(2, 0.3), 0)});
  net.layers.push_back({Filter({-0.7, 1.0}, 2),
                        BiasVector(std::vector<double>(2, 0.1), 0)});
  net.readout = {1.0, -1.0};
  const TorusInputMap input{{{1, 0}, {2, 0}}, 2};

  const auto report =
      verify_relu_closure(net, FrequencyLattice({{1, 0}}, 2), 64, input);
  REQUIRE(report.layers.size() == 3);
  for (const auto& layer : report.layers) {
    CHECK(layer.off_lattice_fraction <= 1e-6);
    CHECK(layer.total_energy > 0.0);
  }

  // Negative control: the wrong lattice <e_2> misses most of the energy.
  const auto wrong =
      verify_relu_closure(net, FrequencyLattice({{0, 1}}, 2), 64, input);
  CHECK(wrong.layers.back().off_lattice_fraction > 0.1);
}

TEST_CASE("under-resolved grids are refused with the required N") {
  PeriodicCnn net;
  net.width = 2;
  net.readout = {1.0, 0.0};
  const TorusInputMap input{{{5, 0}}, 2};
  try {
    verify_relu_closure(net, FrequencyLattice({{1, 0}}, 2), 8, input);
    FAIL("expected a refusal");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("20") != std::string::npos);
  }
}
