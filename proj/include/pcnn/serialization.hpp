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

#include <json.hpp>

#include "pcnn/network.hpp"
#include "pcnn/ridge.hpp"
#include "pcnn/spectral.hpp"

// JSON encodings of the value types that cross the CLI boundary: filters,
// network specs, knot sequences, error reports, torus ridges. Decoders throw
// std::invalid_argument on malformed input with the offending field named.

namespace pcnn {

using json = nlohmann::json;

json to_json(const Filter& filter);
Filter filter_from_json(const json& j);

json to_json(const BiasVector& bias);
BiasVector bias_from_json(const json& j);

json to_json(const PeriodicCnn& net);
PeriodicCnn network_from_json(const json& j);

json to_json(const ReluKnotSequence& knots);
ReluKnotSequence knots_from_json(const json& j);

json to_json(const KnotApproximant& approximant);
KnotApproximant approximant_from_json(const json& j);

json to_json(const ErrorReport& report);
ErrorReport error_report_from_json(const json& j);

json to_json(const TorusRidge& ridge);
TorusRidge ridge_from_json(const json& j);

}  // namespace pcnn
