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

#include "pcnn/serialization.hpp"

#include <stdexcept>
#include <string>

namespace pcnn {

namespace {

const json& require(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end())
    throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  return *it;
}

std::vector<double> doubles(const json& j, const char* key) {
  const json& arr = require(j, key);
  if (!arr.is_array())
    throw std::invalid_argument(std::string("field \"") + key +
                                "\" must be an array of numbers");
  return arr.get<std::vector<double>>();
}

}  // namespace

json to_json(const Filter& filter) {
  return json{{"coefficients", filter.coefficients()},
              {"period", filter.period()}};
}

Filter filter_from_json(const json& j) {
  return Filter(doubles(j, "coefficients"),
                require(j, "period").get<std::size_t>());
}

json to_json(const BiasVector& bias) {
  return json{{"values", bias.values()}, {"edge_width", bias.edge_width()}};
}

BiasVector bias_from_json(const json& j) {
  return BiasVector(doubles(j, "values"),
                    require(j, "edge_width").get<std::size_t>());
}

json to_json(const PeriodicCnn& net) {
  json layers = json::array();
  for (const auto& layer : net.layers)
    layers.push_back(
        json{{"filter", to_json(layer.filter)}, {"bias", to_json(layer.bias)}});
  return json{{"width", net.width},
              {"layers", std::move(layers)},
              {"readout", net.readout}};
}

PeriodicCnn network_from_json(const json& j) {
  PeriodicCnn net;
  net.width = require(j, "width").get<std::size_t>();
  net.readout = doubles(j, "readout");
  const json& layers = require(j, "layers");
  if (!layers.is_array())
    throw std::invalid_argument("field \"layers\" must be an array");
  for (const json& l : layers)
    net.layers.push_back(Layer{filter_from_json(require(l, "filter")),
                               bias_from_json(require(l, "bias"))});
  return net;
}

json to_json(const ReluKnotSequence& knots) {
  json out = json::array();
  for (const auto& k : knots.pairs()) out.push_back(json{{"w", k.w}, {"b", k.b}});
  return out;
}

ReluKnotSequence knots_from_json(const json& j) {
  if (!j.is_array())
    throw std::invalid_argument("knot sequence must be an array");
  std::vector<ReluKnot> pairs;
  for (const json& k : j)
    pairs.push_back(ReluKnot{require(k, "w").get<double>(),
                             require(k, "b").get<double>()});
  return ReluKnotSequence(std::move(pairs));
}

json to_json(const KnotApproximant& approximant) {
  return json{{"positive", to_json(approximant.positive)},
              {"negative", to_json(approximant.negative)},
              {"base", approximant.base},
              {"slope", approximant.slope},
              {"y_min", approximant.y_min},
              {"y_max", approximant.y_max}};
}

KnotApproximant approximant_from_json(const json& j) {
  KnotApproximant a;
  a.positive = knots_from_json(require(j, "positive"));
  a.negative = knots_from_json(require(j, "negative"));
  a.base = require(j, "base").get<double>();
  a.slope = require(j, "slope").get<double>();
  a.y_min = require(j, "y_min").get<double>();
  a.y_max = require(j, "y_max").get<double>();
  return a;
}

json to_json(const ErrorReport& report) {
  return json{{"sup_error", report.sup_error},
              {"mean_error", report.mean_error},
              {"oracle_sup_error", report.oracle_sup_error},
              {"n_samples", report.n_samples},
              {"seed", report.seed}};
}

ErrorReport error_report_from_json(const json& j) {
  ErrorReport r;
  r.sup_error = require(j, "sup_error").get<double>();
  r.mean_error = require(j, "mean_error").get<double>();
  r.oracle_sup_error = require(j, "oracle_sup_error").get<double>();
  r.n_samples = require(j, "n_samples").get<std::size_t>();
  r.seed = require(j, "seed").get<std::uint64_t>();
  return r;
}

json to_json(const TorusRidge& ridge) {
  json coeffs = json::array();
  for (const auto& [m, c] : ridge.profile_coeffs)
    coeffs.push_back(json{{"m", m}, {"re", c.real()}, {"im", c.imag()}});
  return json{{"direction", ridge.direction},
              {"coefficients", std::move(coeffs)}};
}

TorusRidge ridge_from_json(const json& j) {
  TorusRidge ridge;
  ridge.direction = require(j, "direction").get<IntVector>();
  const json& coeffs = require(j, "coefficients");
  if (!coeffs.is_array())
    throw std::invalid_argument("field \"coefficients\" must be an array");
  for (const json& c : coeffs)
    ridge.profile_coeffs.emplace_back(
        require(c, "m").get<std::int64_t>(),
        std::complex<double>(require(c, "re").get<double>(),
                             c.contains("im") ? c["im"].get<double>() : 0.0));
  return ridge;
}

}  // namespace pcnn
