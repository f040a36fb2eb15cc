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
#include <string>
#include <vector>

#include "pcnn/network.hpp"
#include "pcnn/serialization.hpp"

// Experiment drivers: the convergence study (approximation error vs knot
// count) and the dichotomy study (an approachable ridge next to the blocked
// counterexample), plus CSV/JSON/plot-data emission.

namespace pcnn {

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::size_t d = 6;
  std::size_t s = 2;
  Box box;  // empty means [0, 1]^d
  std::vector<std::size_t> knot_counts = {8, 16, 32, 64};
  std::size_t grid_n = 32;
  std::string out_dir = ".";
  std::string profile = "cos";
  double profile_param = 0.0;
  std::vector<double> direction;  // empty means seeded random integer entries
  std::size_t n_samples = 10000;

  /// Throws std::invalid_argument unless 2 <= s <= d, d >= 3, knot counts
  /// are positive and the box (if given) has d non-degenerate intervals.
  void validate() const;
};

json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const json& j);

struct ResultRow {
  std::string experiment;
  json parameters;
  std::string metric;
  double value = 0.0;
  double runtime_seconds = 0.0;  // informational; excluded from comparisons

  friend bool operator==(const ResultRow& a, const ResultRow& b) {
    return a.experiment == b.experiment && a.parameters == b.parameters &&
           a.metric == b.metric && a.value == b.value;
  }
};

json to_json(const std::vector<ResultRow>& rows);
std::vector<ResultRow> rows_from_json(const json& j);

/// Builds the ridge network at every knot count in the config and records
/// sup/mean error rows, sorted by knot count. Build failures become
/// metric="build_failed" rows; the run continues.
std::vector<ResultRow> run_convergence_experiment(
    const ExperimentConfig& config);

/// Paired study: (a) "approachable" — error curve over knot counts for a
/// ridge whose direction lies in the network lattice; (b) "blocked" — the
/// projection bound epsilon for the two-mode ridge along u = (1, 2, 0) versus
/// the grid-estimated L2 error of 50 random linear periodic networks with
/// filters supported on axis 1. The epsilon row is emitted even when no
/// candidate network is tried.
std::vector<ResultRow> run_dichotomy_experiment(const ExperimentConfig& config);

/// Writes results.csv (one row per ResultRow: comma-separated, '.' decimal,
/// header row, LF line endings), results.json (all fields except runtime, so
/// reruns with one config+seed are byte-identical), and one <experiment>.dat
/// plot file (x = n, y = error) per experiment id present. Throws
/// std::runtime_error naming the path on I/O failure.
void emit_outputs(const std::vector<ResultRow>& rows, const std::string& dir);

}  // namespace pcnn
