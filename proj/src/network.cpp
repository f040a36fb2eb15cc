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

#include "pcnn/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "pcnn/factorization.hpp"
#include "pcnn/kernels.hpp"
#include "pcnn/rng.hpp"

namespace pcnn {

namespace {

bool middle_constant(const std::vector<double>& v, std::size_t e) {
  if (v.size() <= 2 * e + 1) return true;
  for (std::size_t i = e + 1; i + e < v.size(); ++i)
    if (v[i] != v[e]) return false;
  return true;
}

}  // namespace

BiasVector::BiasVector(std::vector<double> values, std::size_t edge_width)
    : values_(std::move(values)), edge_width_(edge_width) {
  if (!middle_constant(values_, edge_width_))
    throw std::invalid_argument(
        "BiasVector: middle components must be repeated");
}

BiasVector BiasVector::with_minimal_edge(std::vector<double> values) {
  std::size_t e = 0;
  while (!middle_constant(values, e)) ++e;
  return BiasVector(std::move(values), e);
}

std::vector<double> forward(const PeriodicCnn& net,
                            const std::vector<double>& x) {
  if (x.size() != net.width)
    throw std::invalid_argument("forward: input width mismatch");
  std::vector<double> h = x;
  std::vector<double> z(net.width);
  for (const auto& layer : net.layers) {
    kernels::circular_convolve(layer.filter.coefficients(), h, z);
    kernels::relu_bias(z, layer.bias.values(), h);
  }
  return h;
}

double evaluate(const PeriodicCnn& net, const std::vector<double>& x) {
  const auto h = forward(net, x);
  return kernels::dot(net.readout, h);
}

double shift_margin(const std::vector<double>& a, const Box& box) {
  if (a.size() != box.size())
    throw std::invalid_argument("shift_margin: dimension mismatch");
  double margin = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(box[i].lo) || !std::isfinite(box[i].hi))
      throw std::invalid_argument("shift_margin: box must be bounded");
    margin += std::abs(a[i]) * std::max(std::abs(box[i].lo),
                                        std::abs(box[i].hi));
  }
  return margin;
}

namespace {

constexpr double kKillMargin = 1.0;

Interval conv_interval(const Filter& f, const std::vector<Interval>& h,
                       std::size_t i) {
  const std::size_t d = h.size();
  const auto& w = f.coefficients();
  Interval out{0.0, 0.0};
  for (std::size_t m = 0; m < w.size(); ++m) {
    const auto& src = h[(i + d - m) % d];
    if (w[m] >= 0.0) {
      out.lo += w[m] * src.lo;
      out.hi += w[m] * src.hi;
    } else {
      out.lo += w[m] * src.hi;
      out.hi += w[m] * src.lo;
    }
  }
  return out;
}

std::vector<Interval> conv_intervals(const Filter& f,
                                     const std::vector<Interval>& h) {
  std::vector<Interval> out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = conv_interval(f, h, i);
  return out;
}

// Assembles the layer list for the knot phase. The carry coordinate holds
// y + A; a knot layer with filter [w, 1] turns the carry copy at the old
// carry position into sigma(w*y - b + acc), moves the carry one slot
// forward, and bias-kills the stale residues. Parked values drift one slot
// per layer with their residues killed the same way.
class KnotChainBuilder {
 public:
  KnotChainBuilder(std::size_t d, double shift, Interval carry_bounds)
      : d_(d), shift_(shift), carry_bounds_(carry_bounds) {}

  std::size_t carry_pos() const { return carry_; }
  std::optional<std::size_t> acc_pos() const { return acc_; }
  std::optional<std::size_t> parked_pos() const { return parked_; }
  std::vector<Layer>&& take_layers() { return std::move(layers_); }

  // One [1,1] copy layer followed by one [1,1] spread layer: afterwards the
  // carry exists at positions carry and carry+2 with a killed gap between.
  void duplicate_carry() {
    std::vector<double> zero(d_, 0.0);
    layers_.push_back({Filter({1.0, 1.0}, d_),
                       BiasVector::with_minimal_edge(zero)});
    std::vector<double> bias(d_, 0.0);
    bias[(carry_ + 1) % d_] = 2.0 * carry_bounds_.hi + kKillMargin;
    layers_.push_back({Filter({1.0, 1.0}, d_),
                       BiasVector::with_minimal_edge(std::move(bias))});
    parked_ = (carry_ + 2) % d_;
    parked_bounds_ = carry_bounds_;
  }

  // Shift everything one slot forward and kill the primary carry; the
  // parked duplicate becomes the new carry.
  void retire_carry_to_parked() {
    std::vector<double> bias(d_, 0.0);
    bias[(carry_ + 1) % d_] = carry_bounds_.hi + kKillMargin;
    layers_.push_back({Filter({0.0, 1.0}, d_),
                       BiasVector::with_minimal_edge(std::move(bias))});
    if (acc_) acc_ = (*acc_ + 1) % d_;
    carry_ = (*parked_ + 1) % d_;
    // The finished accumulator now drifts as the parked value.
    parked_ = acc_;
    parked_bounds_ = acc_bounds_;
    acc_.reset();
    acc_bounds_ = {0.0, 0.0};
  }

  // Appends the layer realizing one knot sigma(w*y - b) into the active
  // accumulator. y_range is the range of y = a.x over the box.
  void add_knot(double w, double b, Interval y_range) {
    std::vector<double> bias(d_, 0.0);
    bias[carry_] = w * shift_ + b;
    if (acc_) bias[*acc_] = w * acc_bounds_.hi + kKillMargin;
    if (parked_) {
      bias[*parked_] = w * parked_bounds_.hi + kKillMargin;
      parked_ = (*parked_ + 1) % d_;
    }
    layers_.push_back({Filter({w, 1.0}, d_),
                       BiasVector::with_minimal_edge(std::move(bias))});
    Interval z{w * y_range.lo - b + acc_bounds_.lo,
               w * y_range.hi - b + acc_bounds_.hi};
    acc_bounds_ = {std::max(0.0, z.lo), std::max(0.0, z.hi)};
    acc_ = carry_;
    carry_ = (carry_ + 1) % d_;
  }

 private:
  std::size_t d_;
  double shift_;  // A
  Interval carry_bounds_;
  std::size_t carry_ = 0;  // set by set_carry
  std::optional<std::size_t> acc_;
  Interval acc_bounds_{0.0, 0.0};
  std::optional<std::size_t> parked_;
  Interval parked_bounds_{0.0, 0.0};
  std::vector<Layer> layers_;

 public:
  void set_carry(std::size_t pos) { carry_ = pos; }
};

struct AffineFix {
  std::optional<ReluKnot> extra_knot;  // appended to the positive chain
  double carry_coefficient = 0.0;      // readout weight on the carry
};

// The approximant's affine part base + slope*(y - y_min) must come out of
// the readout. Two affine features are available on the box: the carry
// y + A and one always-active knot sigma(w0*y - w0*t0) with t0 < y_min,
// summed into the positive accumulator with readout weight 1. Solving
//   w0 + c_y = slope,  -w0*t0 + c_y*A = base - slope*y_min
// for w0 > 0 fixes t0's side of the axis by the sign of
// S = slope*(A + y_min) - base; S == 0 needs no extra knot.
AffineFix solve_affine(const KnotApproximant& approx, double shift) {
  AffineFix fix;
  const double s_val =
      approx.slope * (shift + approx.y_min) - approx.base;
  if (s_val == 0.0) {
    fix.carry_coefficient = approx.slope;
    return fix;
  }
  double t0;
  if (s_val > 0.0) {
    t0 = std::min(1.0, (shift + approx.y_min) / 2.0) - shift;
  } else {
    t0 = approx.y_min - 1.0 - 2.0 * shift;
  }
  const double w0 = s_val / (shift + t0);
  fix.extra_knot = ReluKnot{w0, w0 * t0};
  fix.carry_coefficient = approx.slope - w0;
  return fix;
}

}  // namespace

ErrorReport measure_error(const PeriodicCnn& net, const RidgeSpec& spec,
                          const KnotApproximant& approximant, const Box& box,
                          std::size_t n_samples, std::uint64_t seed) {
  ErrorReport report;
  report.n_samples = n_samples;
  report.seed = seed;
  Rng rng(seed);
  const std::size_t d = box.size();
  std::vector<double> x(d);
  double err_sum = 0.0;
  for (std::size_t n = 0; n < n_samples; ++n) {
    for (std::size_t i = 0; i < d; ++i)
      x[i] = rng.uniform(box[i].lo, box[i].hi);
    const double y = kernels::dot(spec.direction, x);
    const double target = spec.profile.evaluator(y);
    const double err = std::abs(evaluate(net, x) - target);
    report.sup_error = std::max(report.sup_error, err);
    err_sum += err;
    report.oracle_sup_error =
        std::max(report.oracle_sup_error, std::abs(approximant(y) - target));
  }
  if (n_samples > 0) report.mean_error = err_sum / static_cast<double>(n_samples);
  return report;
}

RidgeNetworkBuild build_ridge_network(const RidgeSpec& spec, std::size_t s,
                                      std::size_t n_knots, const Box& box,
                                      std::size_t n_samples,
                                      std::uint64_t seed) {
  const std::size_t d = spec.direction.size();
  if (box.size() != d)
    throw std::invalid_argument("build_ridge_network: box/direction mismatch");
  if (s < 2 || s > d)
    throw std::invalid_argument("build_ridge_network: need 2 <= s <= d");
  if (d < 3)
    throw std::invalid_argument("build_ridge_network: need width d >= 3");
  bool nonzero = false;
  for (double a : spec.direction) nonzero |= (a != 0.0);
  if (!nonzero)
    throw std::invalid_argument("build_ridge_network: direction is zero");

  // Range of y = a.x over the box.
  Interval y_range{0.0, 0.0};
  for (std::size_t i = 0; i < d; ++i) {
    const double a = spec.direction[i];
    y_range.lo += a * (a >= 0.0 ? box[i].lo : box[i].hi);
    y_range.hi += a * (a >= 0.0 ? box[i].hi : box[i].lo);
  }
  if (!(y_range.hi > y_range.lo))
    throw std::invalid_argument(
        "build_ridge_network: a.x is constant on the box");

  ProfileSpec domain_profile = spec.profile;
  domain_profile.y_min = y_range.lo;
  domain_profile.y_max = y_range.hi;
  KnotApproximant approx = build_knots(domain_profile, n_knots);

  const double shift = shift_margin(spec.direction, box);
  const AffineFix affine = solve_affine(approx, shift);

  std::vector<ReluKnot> pos_chain = approx.positive.pairs();
  if (affine.extra_knot) pos_chain.push_back(*affine.extra_knot);
  const std::vector<ReluKnot>& neg_chain = approx.negative.pairs();
  const bool dual = !neg_chain.empty();
  if (dual && d < 5)
    throw std::invalid_argument(
        "build_ridge_network: profiles with slope increments of both signs "
        "need width d >= 5");

  PeriodicCnn net;
  net.width = d;

  // Direction filter: [W_{d-1}, ..., W_0] = [a_1, ..., a_d].
  std::vector<double> w_coeffs(d);
  for (std::size_t j = 0; j < d; ++j) w_coeffs[j] = spec.direction[d - 1 - j];
  const Filter direction_filter(std::move(w_coeffs), d);
  const auto factorization = factorize(direction_filter, s, 1e-8);
  const auto& factors = factorization.factors;

  // Factor layers with inactivity biases; all ReLUs stay identity, so the
  // running constant offset is tracked exactly for the selector layer.
  std::vector<Interval> bounds(box.begin(), box.end());
  std::vector<double> offset(d, 0.0);  // h = (composed filter)*x - offset
  for (std::size_t j = 0; j + 1 < factors.size(); ++j) {
    const Filter& f = factors[j];
    const auto z = conv_intervals(f, bounds);
    double low = std::numeric_limits<double>::infinity();
    for (const auto& zi : z) low = std::min(low, zi.lo);
    const double c = low - 1.0;
    net.layers.push_back(
        {f, BiasVector::with_minimal_edge(std::vector<double>(d, c))});
    offset = circular_convolve(f, offset);
    for (auto& o : offset) o += c;
    bounds.resize(d);
    for (std::size_t i = 0; i < d; ++i) bounds[i] = {z[i].lo - c, z[i].hi - c};
  }

  // Selector layer: coordinate d-1 becomes y + A, the rest are killed.
  {
    const Filter& f = factors.back();
    const auto z = conv_intervals(f, bounds);
    const auto conv_offset = circular_convolve(f, offset);
    std::vector<double> bias(d);
    for (std::size_t i = 0; i < d; ++i) bias[i] = z[i].hi + kKillMargin;
    bias[d - 1] = -conv_offset[d - 1] - shift;
    net.layers.push_back({f, BiasVector::with_minimal_edge(std::move(bias))});
  }

  const Interval carry_bounds{y_range.lo + shift, y_range.hi + shift};
  KnotChainBuilder chain(d, shift, carry_bounds);
  chain.set_carry(d - 1);

  if (dual) chain.duplicate_carry();
  for (const auto& k : pos_chain) chain.add_knot(k.w, k.b, y_range);
  std::optional<std::size_t> pos_acc = chain.acc_pos();
  if (dual) {
    chain.retire_carry_to_parked();
    pos_acc = chain.parked_pos();
    for (const auto& k : neg_chain) chain.add_knot(k.w, k.b, y_range);
    if (pos_acc) pos_acc = chain.parked_pos();
  }
  const std::optional<std::size_t> neg_acc =
      dual ? chain.acc_pos() : std::nullopt;
  const std::size_t carry_pos = chain.carry_pos();

  for (auto& layer : chain.take_layers()) net.layers.push_back(std::move(layer));

  net.readout.assign(d, 0.0);
  if (pos_acc) net.readout[*pos_acc] += 1.0;
  if (neg_acc) net.readout[*neg_acc] -= 1.0;
  net.readout[carry_pos] += affine.carry_coefficient;

  RidgeNetworkBuild build{std::move(net), std::move(approx), {}};
  build.report =
      measure_error(build.net, spec, build.approximant, box, n_samples, seed);
  return build;
}

}  // namespace pcnn
