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

#include "pcnn/ridge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pcnn {

namespace {

inline double relu(double v) { return v > 0.0 ? v : 0.0; }

ReluKnotSequence sorted_by_threshold_desc(std::vector<ReluKnot> knots) {
  std::stable_sort(knots.begin(), knots.end(),
                   [](const ReluKnot& a, const ReluKnot& b) {
                     return a.threshold() > b.threshold();
                   });
  return ReluKnotSequence(std::move(knots));
}

}  // namespace

ReluKnotSequence::ReluKnotSequence(std::vector<ReluKnot> pairs)
    : pairs_(std::move(pairs)) {
  for (const auto& k : pairs_)
    if (!(k.w > 0.0))
      throw std::invalid_argument("ReluKnotSequence: weights must be > 0");
}

std::vector<double> ReluKnotSequence::thresholds() const {
  std::vector<double> t;
  t.reserve(pairs_.size());
  for (const auto& k : pairs_) t.push_back(k.threshold());
  return t;
}

double KnotApproximant::operator()(double y) const {
  return base + slope * (y - y_min) + flat_sum_eval(positive, y) -
         flat_sum_eval(negative, y);
}

KnotApproximant build_knots(const ProfileSpec& profile, std::size_t n) {
  if (n < 1) throw std::invalid_argument("build_knots: n must be >= 1");
  if (!(profile.y_max > profile.y_min))
    throw std::invalid_argument("build_knots: degenerate domain");

  const double h = (profile.y_max - profile.y_min) / static_cast<double>(n);
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = profile.y_min + h * static_cast<double>(i);
    values[i] = profile.evaluator(t);
    if (!std::isfinite(values[i]))
      throw std::invalid_argument("build_knots: non-finite profile value");
  }

  KnotApproximant out;
  out.y_min = profile.y_min;
  out.y_max = profile.y_max;
  out.base = values[0];
  out.slope = (values[1] - values[0]) / h;

  std::vector<ReluKnot> pos, neg;
  double prev_slope = out.slope;
  for (std::size_t i = 1; i + 1 <= n; ++i) {
    const double slope = (values[i + 1] - values[i]) / h;
    const double increment = slope - prev_slope;
    prev_slope = slope;
    if (increment == 0.0) continue;
    const double t = profile.y_min + h * static_cast<double>(i);
    const double w = std::abs(increment);
    ReluKnot knot{w, w * t};
    (increment > 0.0 ? pos : neg).push_back(knot);
  }
  out.positive = sorted_by_threshold_desc(std::move(pos));
  out.negative = sorted_by_threshold_desc(std::move(neg));
  return out;
}

double flat_sum_eval(const ReluKnotSequence& knots, double y) {
  double acc = 0.0;
  for (const auto& k : knots.pairs()) acc += relu(k.w * y - k.b);
  return acc;
}

double nested_eval(const ReluKnotSequence& knots, double y) {
  if (knots.empty()) return 0.0;
  const auto& p = knots.pairs();
  double acc = relu(p[0].w * y - p[0].b);
  for (std::size_t j = 1; j < p.size(); ++j)
    acc = relu(acc + p[j].w * y - p[j].b);
  return acc;
}

bool check_order(const ReluKnotSequence& knots) {
  const auto& p = knots.pairs();
  for (const auto& k : p)
    if (!(k.w > 0.0))
      throw std::invalid_argument("check_order: weights must be > 0");
  for (std::size_t j = 1; j < p.size(); ++j)
    if (p[j].threshold() > p[j - 1].threshold()) return false;
  return true;
}

std::function<double(double)> make_profile(const std::string& name,
                                           double param) {
  using std::numbers::pi;
  if (name == "cos")
    return [](double t) { return std::cos(2.0 * pi * t); };
  if (name == "abs")
    return [param](double t) { return std::abs(t - param); };
  if (name == "relu-shift")
    return [param](double t) { return relu(t - param); };
  if (name == "gaussian-periodic") {
    // 1-periodic Gaussian bump; `param` is the width (default 0.1).
    const double width = param > 0.0 ? param : 0.1;
    return [width](double t) {
      double acc = 0.0;
      for (int k = -3; k <= 3; ++k) {
        const double u = t - 0.5 + static_cast<double>(k);
        acc += std::exp(-u * u / (2.0 * width * width));
      }
      return acc;
    };
  }
  throw std::invalid_argument("make_profile: unknown profile '" + name + "'");
}

}  // namespace pcnn
