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

#include <functional>
#include <optional>
#include <string>
#include <vector>

// Univariate ReLU knot machinery: threshold-ordered knot sequences, the
// nested-to-flat collapsing identity, and piecewise-linear profile
// approximation by sums of ReLU knots.

namespace pcnn {

/// One ReLU knot: the term sigma(w*y - b) with w > 0 and threshold t = b/w.
struct ReluKnot {
  double w;
  double b;
  double threshold() const { return b / w; }
};

/// An ordered list of knots. The sequence is "threshold-ordered" when
/// thresholds are non-increasing; under that ordering the nested composition
/// sigma(...sigma(sigma(w1 y - b1) + w2 y - b2)... ) equals the flat sum
/// of the individual knot terms.
class ReluKnotSequence {
 public:
  ReluKnotSequence() = default;
  /// Throws std::invalid_argument if any w_j <= 0.
  explicit ReluKnotSequence(std::vector<ReluKnot> pairs);

  const std::vector<ReluKnot>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  std::vector<double> thresholds() const;

 private:
  std::vector<ReluKnot> pairs_;
};

/// A univariate profile on a closed interval.
struct ProfileSpec {
  std::function<double(double)> evaluator;
  double y_min;
  double y_max;
  std::optional<std::string> holder_note;
};

/// Piecewise-linear approximant of a profile in ReLU-knot form:
///   value(y) = base + slope*(y - y_min)
///             + flat_sum(positive, y) - flat_sum(negative, y).
/// Slope increments with positive sign feed `positive`, negative ones feed
/// `negative` (weights made positive, sign carried by the subtraction). Both
/// chains are emitted threshold-ordered.
struct KnotApproximant {
  ReluKnotSequence positive;
  ReluKnotSequence negative;
  double base = 0.0;   // value at y_min
  double slope = 0.0;  // slope of the first linear piece
  double y_min = 0.0;
  double y_max = 0.0;

  double operator()(double y) const;
};

/// Interpolates the profile at n+1 equispaced knots. Throws
/// std::invalid_argument on non-finite profile values or a degenerate domain.
KnotApproximant build_knots(const ProfileSpec& profile, std::size_t n);

/// sum_j max(w_j * y - b_j, 0)
double flat_sum_eval(const ReluKnotSequence& knots, double y);

/// sigma(...sigma(sigma(w_1 y - b_1) + w_2 y - b_2)... + w_J y - b_J),
/// evaluated in stored order.
double nested_eval(const ReluKnotSequence& knots, double y);

/// True iff thresholds are non-increasing (ties allowed).
bool check_order(const ReluKnotSequence& knots);

/// Named profile registry used by the CLI: "cos", "abs", "relu-shift",
/// "gaussian-periodic". Throws std::invalid_argument for unknown names.
std::function<double(double)> make_profile(const std::string& name,
                                           double param = 0.0);

}  // namespace pcnn
