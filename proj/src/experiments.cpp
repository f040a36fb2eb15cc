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

#include "pcnn/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <stdexcept>

#include "pcnn/rng.hpp"
#include "pcnn/spectral.hpp"

namespace pcnn {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

Box effective_box(const ExperimentConfig& config) {
  if (!config.box.empty()) return config.box;
  return Box(config.d, Interval{0.0, 1.0});
}

std::vector<double> effective_direction(const ExperimentConfig& config,
                                        Rng& rng) {
  if (!config.direction.empty()) return config.direction;
  std::vector<double> a(config.d, 0.0);
  do {
    for (auto& v : a) v = static_cast<double>(rng.uniform_int(-3, 3));
  } while (std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; }));
  return a;
}

RidgeSpec make_ridge_spec(const ExperimentConfig& config, const Box& box,
                          Rng& rng) {
  RidgeSpec spec;
  spec.direction = effective_direction(config, rng);
  double y_min = 0.0;
  double y_max = 0.0;
  for (std::size_t i = 0; i < spec.direction.size(); ++i) {
    const double a = spec.direction[i];
    y_min += std::min(a * box[i].lo, a * box[i].hi);
    y_max += std::max(a * box[i].lo, a * box[i].hi);
  }
  spec.profile = ProfileSpec{make_profile(config.profile, config.profile_param),
                             y_min, y_max, std::nullopt};
  return spec;
}

std::vector<ResultRow> convergence_rows(const ExperimentConfig& config,
                                        const std::string& experiment_id) {
  Rng rng(config.seed);
  const Box box = effective_box(config);
  const RidgeSpec spec = make_ridge_spec(config, box, rng);
  std::vector<std::size_t> counts = config.knot_counts;
  std::sort(counts.begin(), counts.end());

  std::vector<ResultRow> rows;
  for (std::size_t n : counts) {
    json params{{"n", n}, {"d", config.d}, {"s", config.s},
                {"seed", config.seed}};
    const auto start = std::chrono::steady_clock::now();
    try {
      const RidgeNetworkBuild build = build_ridge_network(
          spec, config.s, n, box, config.n_samples, config.seed);
      const double elapsed = seconds_since(start);
      rows.push_back({experiment_id, params, "sup_error",
                      build.report.sup_error, elapsed});
      rows.push_back({experiment_id, params, "mean_error",
                      build.report.mean_error, elapsed});
    } catch (const std::exception& e) {
      json failed = params;
      failed["error"] = e.what();
      rows.push_back(
          {experiment_id, failed, "build_failed", 1.0, seconds_since(start)});
    }
  }
  return rows;
}

/// The section-3.3 style counterexample ridge: phi(t) = cos(2 pi t) +
/// cos(4 pi t) along u = (1, 2, 0) on the 3-torus.
TorusRidge blocked_ridge() {
  TorusRidge ridge;
  ridge.direction = {1, 2, 0};
  ridge.profile_coeffs = {{1, 0.5}, {-1, 0.5}, {2, 0.5}, {-2, 0.5}};
  return ridge;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (s < 2 || s > d)
    throw std::invalid_argument("ExperimentConfig: need 2 <= s <= d");
  if (d < 3) throw std::invalid_argument("ExperimentConfig: need d >= 3");
  if (knot_counts.empty())
    throw std::invalid_argument("ExperimentConfig: empty knot count list");
  for (std::size_t n : knot_counts)
    if (n < 1)
      throw std::invalid_argument("ExperimentConfig: knot counts must be >= 1");
  if (grid_n < 2)
    throw std::invalid_argument("ExperimentConfig: grid must be >= 2");
  if (n_samples < 1)
    throw std::invalid_argument("ExperimentConfig: need n_samples >= 1");
  if (!box.empty()) {
    if (box.size() != d)
      throw std::invalid_argument("ExperimentConfig: box size must equal d");
    for (const auto& iv : box)
      if (!(iv.lo < iv.hi))
        throw std::invalid_argument("ExperimentConfig: degenerate box");
  }
  if (!direction.empty() && direction.size() != d)
    throw std::invalid_argument("ExperimentConfig: direction size must be d");
}

json to_json(const ExperimentConfig& config) {
  json box = json::array();
  for (const auto& iv : config.box) box.push_back(json::array({iv.lo, iv.hi}));
  return json{{"seed", config.seed},
              {"d", config.d},
              {"s", config.s},
              {"box", std::move(box)},
              {"knots", config.knot_counts},
              {"grid", config.grid_n},
              {"out", config.out_dir},
              {"profile", config.profile},
              {"profile_param", config.profile_param},
              {"direction", config.direction},
              {"n_samples", config.n_samples}};
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig config;
  if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("d")) config.d = j["d"].get<std::size_t>();
  if (j.contains("s")) config.s = j["s"].get<std::size_t>();
  if (j.contains("box"))
    for (const json& iv : j["box"]) {
      if (!iv.is_array() || iv.size() != 2)
        throw std::invalid_argument("config: box entries must be [lo, hi]");
      config.box.push_back(
          Interval{iv[0].get<double>(), iv[1].get<double>()});
    }
  if (j.contains("knots"))
    config.knot_counts = j["knots"].get<std::vector<std::size_t>>();
  if (j.contains("grid")) config.grid_n = j["grid"].get<std::size_t>();
  if (j.contains("out")) config.out_dir = j["out"].get<std::string>();
  if (j.contains("profile")) config.profile = j["profile"].get<std::string>();
  if (j.contains("profile_param"))
    config.profile_param = j["profile_param"].get<double>();
  if (j.contains("direction"))
    config.direction = j["direction"].get<std::vector<double>>();
  if (j.contains("n_samples"))
    config.n_samples = j["n_samples"].get<std::size_t>();
  return config;
}

json to_json(const std::vector<ResultRow>& rows) {
  json out = json::array();
  for (const auto& row : rows)
    out.push_back(json{{"experiment", row.experiment},
                       {"parameters", row.parameters},
                       {"metric", row.metric},
                       {"value", row.value}});
  return out;
}

std::vector<ResultRow> rows_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("results: expected an array");
  std::vector<ResultRow> rows;
  for (const json& r : j) {
    ResultRow row;
    row.experiment = r.at("experiment").get<std::string>();
    row.parameters = r.at("parameters");
    row.metric = r.at("metric").get<std::string>();
    row.value = r.at("value").get<double>();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ResultRow> run_convergence_experiment(
    const ExperimentConfig& config) {
  config.validate();
  return convergence_rows(config, "convergence");
}

std::vector<ResultRow> run_dichotomy_experiment(
    const ExperimentConfig& config) {
  config.validate();
  std::vector<ResultRow> rows = convergence_rows(config, "approachable");

  // Blocked case, fixed at dimension 3 where the counterexample lives.
  const TorusRidge ridge = blocked_ridge();
  const FrequencyLattice lattice({{1, 0, 0}}, 3);
  const double epsilon = lower_bound(ridge, lattice);
  const double norm_f = std::sqrt(ridge_spectrum(ridge).energy());
  const json base_params{{"seed", config.seed}, {"grid", config.grid_n}};
  rows.push_back({"blocked", base_params, "epsilon", epsilon, 0.0});
  rows.push_back({"blocked", base_params, "norm_f", norm_f, 0.0});

  const auto start = std::chrono::steady_clock::now();
  const std::size_t n_nets = 50;
  const std::size_t grid_n = std::max<std::size_t>(config.grid_n, 8);
  const TorusInputMap input{{{1, 0, 0}, {2, 0, 0}, {3, 0, 0}}, 3};

  // Precompute the target and input features on the grid.
  const std::size_t total = grid_n * grid_n * grid_n;
  std::vector<double> f_values(total);
  std::vector<std::vector<double>> features(total);
  std::vector<double> x(3);
  std::size_t flat = 0;
  for (std::size_t i0 = 0; i0 < grid_n; ++i0)
    for (std::size_t i1 = 0; i1 < grid_n; ++i1)
      for (std::size_t i2 = 0; i2 < grid_n; ++i2, ++flat) {
        x[0] = static_cast<double>(i0) / static_cast<double>(grid_n);
        x[1] = static_cast<double>(i1) / static_cast<double>(grid_n);
        x[2] = static_cast<double>(i2) / static_cast<double>(grid_n);
        f_values[flat] = ridge(x);
        features[flat] = input(x);
      }

  Rng rng(config.seed + 0x9e3779b97f4a7c15ull);
  double min_error = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < n_nets; ++t) {
    // Linear periodic network over the lattice: one circulant layer whose
    // bias keeps every ReLU in its linear region, then a random readout.
    std::vector<double> w(3);
    for (auto& v : w) v = rng.uniform(-1.0, 1.0);
    PeriodicCnn net;
    net.width = 3;
    net.layers.push_back(
        Layer{Filter(w, 3), BiasVector(std::vector<double>(3, -10.0), 0)});
    net.readout.resize(3);
    for (auto& v : net.readout) v = rng.uniform(-1.0, 1.0);

    double acc = 0.0;
    for (std::size_t p = 0; p < total; ++p) {
      const double diff = f_values[p] - evaluate(net, features[p]);
      acc += diff * diff;
    }
    min_error = std::min(min_error,
                         std::sqrt(acc / static_cast<double>(total)));
  }
  const double elapsed = seconds_since(start);
  rows.push_back({"blocked", base_params, "n_candidates",
                  static_cast<double>(n_nets), elapsed});
  rows.push_back(
      {"blocked", base_params, "min_achieved_error", min_error, elapsed});
  return rows;
}

namespace {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string number_repr(double v) { return json(v).dump(); }

void write_or_throw(const std::filesystem::path& path,
                    const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out)
    throw std::runtime_error("failed to write " + path.string());
}

}  // namespace

void emit_outputs(const std::vector<ResultRow>& rows, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw std::runtime_error("failed to create output directory " + dir +
                             ": " + ec.message());
  const std::filesystem::path base(dir);

  std::string csv = "experiment,parameters,metric,value,runtime_seconds\n";
  for (const auto& row : rows) {
    csv += csv_quote(row.experiment) + ',' + csv_quote(row.parameters.dump()) +
           ',' + csv_quote(row.metric) + ',' + number_repr(row.value) + ',' +
           number_repr(row.runtime_seconds) + '\n';
  }
  write_or_throw(base / "results.csv", csv);

  write_or_throw(base / "results.json", to_json(rows).dump(2) + "\n");

  // Plot data: x = knot count, y = sup error, one file per experiment id.
  std::map<std::string, std::string> dat;
  for (const auto& row : rows) {
    auto [it, inserted] = dat.try_emplace(row.experiment, "# n sup_error\n");
    if (row.metric == "sup_error" && row.parameters.contains("n"))
      it->second += row.parameters["n"].dump() + ' ' + number_repr(row.value) +
                    '\n';
  }
  for (const auto& [experiment, content] : dat)
    write_or_throw(base / (experiment + ".dat"), content);
}

}  // namespace pcnn
