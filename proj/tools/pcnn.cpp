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

// pcnn: periodic CNN construction and spectral analysis toolbox.
//
// Subcommands: factorize, build-ridge-net, eval-net, lattice-check,
// lower-bound, counterexample, relu-closure, convergence, dichotomy.
// Set PCNN_LOG=1 for progress messages on stderr.

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcnn/experiments.hpp"
#include "pcnn/factorization.hpp"
#include "pcnn/kernels.hpp"
#include "pcnn/serialization.hpp"

namespace {

using pcnn::json;

bool log_enabled() {
  const char* v = std::getenv("PCNN_LOG");
  return v != nullptr && *v != '\0' && std::strcmp(v, "0") != 0;
}

void log_line(const std::string& message) {
  if (log_enabled()) std::cerr << "[pcnn] " << message << '\n';
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void maybe_write(const std::string& out_dir, const std::string& name,
                 const json& payload) {
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  const auto path = std::filesystem::path(out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  out << payload.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed to write " + path.string());
  log_line("wrote " + path.string());
}

// "1,0,0;0,2,0" -> {{1,0,0},{0,2,0}}
std::vector<pcnn::IntVector> parse_int_vectors(const std::string& text) {
  std::vector<pcnn::IntVector> out;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    pcnn::IntVector v;
    std::stringstream entries(group);
    std::string entry;
    while (std::getline(entries, entry, ','))
      v.push_back(std::stoll(entry));
    if (!v.empty()) out.push_back(std::move(v));
  }
  return out;
}

pcnn::FrequencyLattice parse_lattice(const std::string& generators_text) {
  const auto generators = parse_int_vectors(generators_text);
  if (generators.empty())
    throw std::invalid_argument("no lattice generators given");
  return pcnn::FrequencyLattice(generators, generators.front().size());
}

/// The dichotomy counterexample: phi(t) = cos(2 pi t) + cos(4 pi t) along
/// u = (1, 2, 0), measured against the axis-1 lattice.
pcnn::TorusRidge counterexample_ridge() {
  pcnn::TorusRidge ridge;
  ridge.direction = {1, 2, 0};
  ridge.profile_coeffs = {{1, 0.5}, {-1, 0.5}, {2, 0.5}, {-2, 0.5}};
  return ridge;
}

struct GlobalFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_dir;
  std::size_t d = 0;
  std::size_t s = 0;
  std::vector<std::size_t> knots;
  std::size_t grid = 0;
};

pcnn::ExperimentConfig resolve_config(const GlobalFlags& flags) {
  pcnn::ExperimentConfig config;
  if (!flags.config_path.empty())
    config = pcnn::config_from_json(read_json_file(flags.config_path));
  if (flags.seed_set) config.seed = flags.seed;
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  if (flags.d != 0) config.d = flags.d;
  if (flags.s != 0) config.s = flags.s;
  if (!flags.knots.empty()) config.knot_counts = flags.knots;
  if (flags.grid != 0) config.grid_n = flags.grid;
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"periodic CNN construction and spectral analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--config", flags.config_path, "JSON config file");
  app.add_option("--seed", flags.seed, "RNG seed override")
      ->each([&](const std::string&) { flags.seed_set = true; });
  app.add_option("--out", flags.out_dir, "output directory");
  app.add_option("--d", flags.d, "input dimension / width");
  app.add_option("--s", flags.s, "factor filter support bound");
  app.add_option("--knots", flags.knots, "knot counts")->delimiter(',');
  app.add_option("--grid", flags.grid, "grid resolution N");

  // factorize
  auto* cmd_factorize = app.add_subcommand(
      "factorize", "factor a filter into short convolution factors");
  std::vector<double> fac_coeffs;
  std::size_t fac_period = 0;
  double fac_tol = 1e-8;
  cmd_factorize->add_option("--coeffs", fac_coeffs, "filter coefficients")
      ->delimiter(',')
      ->required();
  cmd_factorize->add_option("--period", fac_period,
                            "circular period (default: fits the support)");
  cmd_factorize->add_option("--tol", fac_tol, "reconvolution tolerance");

  // build-ridge-net
  auto* cmd_build = app.add_subcommand(
      "build-ridge-net", "construct a periodic CNN for a ridge target");
  std::string build_profile = "cos";
  double build_param = 0.0;
  std::vector<double> build_direction;
  double box_lo = 0.0, box_hi = 1.0;
  std::size_t build_samples = 10000;
  cmd_build->add_option("--profile", build_profile,
                        "profile name (cos, abs, relu-shift, gaussian-periodic)");
  cmd_build->add_option("--param", build_param, "profile parameter");
  cmd_build->add_option("--direction", build_direction, "ridge direction a")
      ->delimiter(',');
  cmd_build->add_option("--box-lo", box_lo, "box lower bound (all axes)");
  cmd_build->add_option("--box-hi", box_hi, "box upper bound (all axes)");
  cmd_build->add_option("--samples", build_samples, "error-estimate samples");

  // eval-net
  auto* cmd_eval =
      app.add_subcommand("eval-net", "evaluate a stored network on one input");
  std::string eval_net_path;
  std::vector<double> eval_x;
  cmd_eval->add_option("--net", eval_net_path, "network spec JSON file")
      ->required();
  cmd_eval->add_option("--x", eval_x, "input vector")->delimiter(',')
      ->required();

  // lattice-check
  auto* cmd_lattice =
      app.add_subcommand("lattice-check", "lattice membership and HNF basis");
  std::string lat_generators;
  std::string lat_u;
  cmd_lattice
      ->add_option("--generators", lat_generators,
                   "generators, e.g. \"1,0,0;0,2,0\"")
      ->required();
  cmd_lattice->add_option("--u", lat_u, "frequency to test, e.g. \"1,2,0\"")
      ->required();

  // lower-bound
  auto* cmd_bound = app.add_subcommand(
      "lower-bound", "projection lower bound for a ridge target");
  std::string bound_ridge_path;
  std::string bound_generators;
  cmd_bound->add_option("--ridge", bound_ridge_path, "ridge JSON file")
      ->required();
  cmd_bound->add_option("--generators", bound_generators, "lattice generators")
      ->required();

  // counterexample
  auto* cmd_counter = app.add_subcommand(
      "counterexample", "reproduce the two-mode impossibility example");

  // relu-closure
  auto* cmd_closure = app.add_subcommand(
      "relu-closure", "per-layer off-lattice spectral energy of a network");
  std::string closure_net_path;
  std::string closure_generators;
  std::string closure_modes;
  cmd_closure->add_option("--net", closure_net_path, "network spec JSON file")
      ->required();
  cmd_closure
      ->add_option("--generators", closure_generators, "lattice generators")
      ->required();
  cmd_closure->add_option("--modes", closure_modes,
                          "input modes, e.g. \"1,0;2,0\" (default: generators)");

  // experiment drivers
  auto* cmd_convergence = app.add_subcommand(
      "convergence", "approximation error versus knot count");
  auto* cmd_dichotomy = app.add_subcommand(
      "dichotomy", "approachable ridge versus blocked counterexample");

  CLI11_PARSE(app, argc, argv);

  try {
    log_line("compute backend: " +
             std::string(pcnn::kernels::active_backend()));

    if (*cmd_factorize) {
      if (flags.s == 0) flags.s = 2;
      if (fac_period == 0) fac_period = fac_coeffs.size();
      const pcnn::Filter W(fac_coeffs, fac_period);
      const auto result = pcnn::factorize(W, flags.s, fac_tol);
      json factors = json::array();
      for (const auto& f : result.factors) factors.push_back(pcnn::to_json(f));
      const json out{{"factors", std::move(factors)},
                     {"depth", result.depth},
                     {"residual", result.residual}};
      std::cout << out.dump(2) << '\n';
      maybe_write(flags.out_dir, "factorization.json", out);
    } else if (*cmd_build) {
      const pcnn::ExperimentConfig config = resolve_config(flags);
      const std::size_t n =
          config.knot_counts.empty() ? 16 : config.knot_counts.front();
      pcnn::RidgeSpec spec;
      spec.direction = build_direction.empty()
                           ? std::vector<double>(config.d, 1.0)
                           : build_direction;
      if (spec.direction.size() != config.d)
        throw std::invalid_argument("--direction length must equal --d");
      if (!(box_lo < box_hi))
        throw std::invalid_argument("need --box-lo < --box-hi");
      const pcnn::Box box(config.d, pcnn::Interval{box_lo, box_hi});
      double y_min = 0.0, y_max = 0.0;
      for (double a : spec.direction) {
        y_min += std::min(a * box_lo, a * box_hi);
        y_max += std::max(a * box_lo, a * box_hi);
      }
      spec.profile = pcnn::ProfileSpec{
          pcnn::make_profile(build_profile, build_param), y_min, y_max,
          std::nullopt};
      log_line("building ridge network, n = " + std::to_string(n));
      const auto build = pcnn::build_ridge_network(spec, config.s, n, box,
                                                   build_samples, config.seed);
      const json out{{"network", pcnn::to_json(build.net)},
                     {"approximant", pcnn::to_json(build.approximant)},
                     {"report", pcnn::to_json(build.report)}};
      std::cout << out.dump(2) << '\n';
      maybe_write(flags.out_dir, "network.json", out);
    } else if (*cmd_eval) {
      const json spec = read_json_file(eval_net_path);
      const pcnn::PeriodicCnn net = pcnn::network_from_json(
          spec.contains("network") ? spec["network"] : spec);
      const double value = pcnn::evaluate(net, eval_x);
      std::cout << json{{"value", value}}.dump() << '\n';
    } else if (*cmd_lattice) {
      const auto lattice = parse_lattice(lat_generators);
      const auto targets = parse_int_vectors(lat_u);
      if (targets.size() != 1)
        throw std::invalid_argument("--u must be a single vector");
      const json out{{"member", pcnn::member(lattice, targets.front())},
                     {"hnf_basis", lattice.hnf_basis()},
                     {"rank", lattice.rank()}};
      std::cout << out.dump(2) << '\n';
    } else if (*cmd_bound) {
      const auto ridge = pcnn::ridge_from_json(read_json_file(bound_ridge_path));
      const auto lattice = parse_lattice(bound_generators);
      const double epsilon = pcnn::lower_bound(ridge, lattice);
      std::cout << json{{"epsilon", epsilon}}.dump() << '\n';
    } else if (*cmd_counter) {
      const auto ridge = counterexample_ridge();
      const pcnn::FrequencyLattice lattice({{1, 0, 0}}, 3);
      const double epsilon = pcnn::lower_bound(ridge, lattice);
      const double norm_f = std::sqrt(pcnn::ridge_spectrum(ridge).energy());
      const std::size_t grid_n = flags.grid != 0 ? flags.grid : 32;
      log_line("grid cross-check at N = " + std::to_string(grid_n));
      const auto grid_spectrum = pcnn::empirical_spectrum(
          [&ridge](const std::vector<double>& x) { return ridge(x); }, 3,
          grid_n);
      const double grid_epsilon = std::sqrt(grid_spectrum.energy_off(lattice));
      const json out{{"epsilon", epsilon},
                     {"norm_f", norm_f},
                     {"grid_epsilon", grid_epsilon},
                     {"grid_n", grid_n},
                     {"direction", ridge.direction},
                     {"lattice_generators", lattice.generators()}};
      std::cout << out.dump(2) << '\n';
      maybe_write(flags.out_dir, "counterexample.json", out);
    } else if (*cmd_closure) {
      const json spec = read_json_file(closure_net_path);
      const pcnn::PeriodicCnn net = pcnn::network_from_json(
          spec.contains("network") ? spec["network"] : spec);
      const auto lattice = parse_lattice(closure_generators);
      const auto modes = closure_modes.empty()
                             ? lattice.generators()
                             : parse_int_vectors(closure_modes);
      const std::size_t grid_n = flags.grid != 0 ? flags.grid : 64;
      const pcnn::TorusInputMap input{modes, net.width};
      const auto report =
          pcnn::verify_relu_closure(net, lattice, grid_n, input);
      json layers = json::array();
      std::string csv = "layer,fraction\n";
      for (const auto& layer : report.layers) {
        layers.push_back(json{{"layer", layer.layer},
                              {"total_energy", layer.total_energy},
                              {"off_lattice_fraction",
                               layer.off_lattice_fraction}});
        csv += std::to_string(layer.layer) + ',' +
               json(layer.off_lattice_fraction).dump() + '\n';
      }
      const json out{{"grid_n", report.grid_n}, {"layers", std::move(layers)}};
      std::cout << out.dump(2) << '\n';
      std::cout << csv;
      maybe_write(flags.out_dir, "closure.json", out);
    } else if (*cmd_convergence || *cmd_dichotomy) {
      const pcnn::ExperimentConfig config = resolve_config(flags);
      log_line("running experiment with seed " + std::to_string(config.seed));
      const auto rows = *cmd_convergence
                            ? pcnn::run_convergence_experiment(config)
                            : pcnn::run_dichotomy_experiment(config);
      pcnn::emit_outputs(rows, config.out_dir);
      std::cout << pcnn::to_json(rows).dump(2) << '\n';
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
