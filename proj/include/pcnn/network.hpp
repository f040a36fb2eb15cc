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

#pragma once

#include <cstdint>
#include <vector>

#include "pcnn/filter.hpp"
#include "pcnn/ridge.hpp"

// Periodic CNNs: layers of circular convolution, structured bias and ReLU,
// a linear readout, and the constructive assembly of a network computing an
// approximation of a ridge function f(a . x) on a bounded box.

namespace pcnn {

/// Closed interval; Box is one interval per input coordinate.
struct Interval {
  double lo;
  double hi;
};
using Box = std::vector<Interval>;

/// Per-layer bias with the periodic structure: outside the first and last
/// `edge_width` entries, all components are equal.
class BiasVector {
 public:
  /// Throws std::invalid_argument if the middle block is not constant.
  BiasVector(std::vector<double> values, std::size_t edge_width);

  /// Builds the bias with the smallest edge width compatible with `values`.
  static BiasVector with_minimal_edge(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t edge_width() const { return edge_width_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
  std::size_t edge_width_;
};

struct Layer {
  Filter filter;
  BiasVector bias;
};

/// A depth-J periodic CNN of constant width d with a linear readout.
struct PeriodicCnn {
  std::vector<Layer> layers;
  std::size_t width = 0;
  std::vector<double> readout;
};

/// A ridge target f(x) = profile(direction . x).
struct RidgeSpec {
  std::vector<double> direction;
  ProfileSpec profile;
};

struct ErrorReport {
  double sup_error = 0.0;
  double mean_error = 0.0;
  double oracle_sup_error = 0.0;  // univariate knot error at the same samples
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

struct RidgeNetworkBuild {
  PeriodicCnn net;
  KnotApproximant approximant;
  ErrorReport report;
};

/// h^(J)(x): circular convolution, bias subtraction and componentwise ReLU
/// per layer. Throws on width mismatch.
std::vector<double> forward(const PeriodicCnn& net,
                            const std::vector<double>& x);

/// dot(readout, forward(net, x)).
double evaluate(const PeriodicCnn& net, const std::vector<double>& x);

/// A = sum_i |a_i| * max(|lo_i|, |hi_i|) + 1, so a.x + A >= 1 on the box.
double shift_margin(const std::vector<double>& a, const Box& box);

/// Constructs a periodic CNN approximating profile(a . x) on the box:
/// the direction filter is factored into depth-J1 short filters with
/// inactivity biases, the last of those layers isolates y + A in one
/// coordinate, and n_knots ReLU knot layers accumulate the piecewise-linear
/// profile approximant. Error is measured on n_samples seeded uniform box
/// samples. Requires 2 <= s <= d and d >= 3 (d >= 5 when the profile has
/// slope increments of both signs).
RidgeNetworkBuild build_ridge_network(const RidgeSpec& spec, std::size_t s,
                                      std::size_t n_knots, const Box& box,
                                      std::size_t n_samples = 10000,
                                      std::uint64_t seed = 1);

/// Error measurement alone, for pre-built networks.
ErrorReport measure_error(const PeriodicCnn& net, const RidgeSpec& spec,
                          const KnotApproximant& approximant, const Box& box,
                          std::size_t n_samples, std::uint64_t seed);

}  // namespace pcnn
