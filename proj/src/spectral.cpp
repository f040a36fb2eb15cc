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

#include "pcnn/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pcnn/kernels.hpp"

namespace pcnn {

namespace {

constexpr double kPruneTol = 1e-14;

std::size_t pow_size(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

// In-place unnormalized forward DFT along every axis of a dim-dimensional
// N^dim array in row-major order (last axis fastest).
void dft_all_axes(std::vector<std::complex<double>>& data, std::size_t dim,
                  std::size_t n) {
  std::vector<std::complex<double>> twiddle(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      twiddle[j * n + k] = std::polar(
          1.0, -2.0 * std::numbers::pi * static_cast<double>(j * k % n) /
                   static_cast<double>(n));

  const std::size_t total = data.size();
  std::vector<std::complex<double>> line(n);
  std::size_t stride = 1;
  for (std::size_t axis_from_last = 0; axis_from_last < dim;
       ++axis_from_last) {
    const std::size_t block = stride * n;
    for (std::size_t base = 0; base < total; base += block) {
      for (std::size_t offset = 0; offset < stride; ++offset) {
        for (std::size_t j = 0; j < n; ++j)
          line[j] = data[base + offset + j * stride];
        for (std::size_t k = 0; k < n; ++k) {
          std::complex<double> acc = 0.0;
          for (std::size_t j = 0; j < n; ++j) acc += line[j] * twiddle[j * n + k];
          data[base + offset + k * stride] = acc;
        }
      }
    }
    stride = block;
  }
}

SpectralVector spectrum_from_grid(std::vector<std::complex<double>> data,
                                  std::size_t dim, std::size_t n) {
  dft_all_axes(data, dim, n);
  const double scale =
      1.0 / static_cast<double>(pow_size(n, dim));
  SpectralVector::Map entries;
  IntVector k(dim);
  std::vector<std::size_t> idx(dim, 0);
  for (std::size_t flat = 0; flat < data.size(); ++flat) {
    const std::complex<double> c = data[flat] * scale;
    if (std::abs(c) >= kPruneTol) {
      for (std::size_t a = 0; a < dim; ++a) {
        const auto j = static_cast<std::int64_t>(idx[a]);
        k[a] = j <= static_cast<std::int64_t>(n / 2)
                   ? j
                   : j - static_cast<std::int64_t>(n);
      }
      entries[k] = c;
    }
    for (std::size_t a = dim; a-- > 0;) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
  }
  return SpectralVector(std::move(entries));
}

}  // namespace

SpectralVector::SpectralVector(Map entries) : entries_(std::move(entries)) {}

std::complex<double> SpectralVector::coeff(const IntVector& k) const {
  const auto it = entries_.find(k);
  return it == entries_.end() ? std::complex<double>(0.0) : it->second;
}

double SpectralVector::energy() const {
  double acc = 0.0;
  for (const auto& [k, c] : entries_) acc += std::norm(c);
  return acc;
}

SpectralVector SpectralVector::pruned() const {
  Map kept;
  for (const auto& [k, c] : entries_)
    if (std::abs(c) >= kPruneTol) kept.emplace(k, c);
  return SpectralVector(std::move(kept));
}

double SpectralVector::energy_on(const FrequencyLattice& lattice) const {
  double acc = 0.0;
  for (const auto& [k, c] : entries_)
    if (member(lattice, k)) acc += std::norm(c);
  return acc;
}

double SpectralVector::energy_off(const FrequencyLattice& lattice) const {
  double acc = 0.0;
  for (const auto& [k, c] : entries_)
    if (!member(lattice, k)) acc += std::norm(c);
  return acc;
}

double TorusRidge::operator()(const std::vector<double>& x) const {
  double phase = 0.0;
  for (std::size_t i = 0; i < direction.size(); ++i)
    phase += static_cast<double>(direction[i]) * x[i];
  double acc = 0.0;
  for (const auto& [m, c] : profile_coeffs) {
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>(m) * phase;
    acc += c.real() * std::cos(angle) - c.imag() * std::sin(angle);
  }
  return acc;
}

SpectralVector ridge_spectrum(const TorusRidge& ridge) {
  SpectralVector::Map entries;
  const std::size_t dim = ridge.direction.size();
  bool zero_direction = true;
  for (auto v : ridge.direction) zero_direction &= (v == 0);
  for (const auto& [m, c] : ridge.profile_coeffs) {
    IntVector k(dim, 0);
    if (!zero_direction)
      for (std::size_t i = 0; i < dim; ++i) k[i] = m * ridge.direction[i];
    entries[k] += c;
  }
  return SpectralVector(std::move(entries)).pruned();
}

double lower_bound(const TorusRidge& ridge, const FrequencyLattice& lattice) {
  return std::sqrt(ridge_spectrum(ridge).energy_off(lattice));
}

SpectralVector empirical_spectrum(
    const std::function<double(const std::vector<double>&)>& fn,
    std::size_t dim, std::size_t grid_n) {
  if (grid_n < 2)
    throw std::invalid_argument("empirical_spectrum: grid must be >= 2");
  const std::size_t total = pow_size(grid_n, dim);
  std::vector<std::complex<double>> data(total);
  std::vector<double> x(dim, 0.0);
  std::vector<std::size_t> idx(dim, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (std::size_t a = 0; a < dim; ++a)
      x[a] = static_cast<double>(idx[a]) / static_cast<double>(grid_n);
    const double v = fn(x);
    if (!std::isfinite(v))
      throw std::invalid_argument("empirical_spectrum: non-finite sample");
    data[flat] = v;
    for (std::size_t a = dim; a-- > 0;) {
      if (++idx[a] < grid_n) break;
      idx[a] = 0;
    }
  }
  return spectrum_from_grid(std::move(data), dim, grid_n);
}

std::vector<double> TorusInputMap::operator()(
    const std::vector<double>& x) const {
  std::vector<double> h(width);
  for (std::size_t c = 0; c < width; ++c) {
    const IntVector& mode = modes[c % modes.size()];
    double phase = 0.0;
    for (std::size_t i = 0; i < mode.size(); ++i)
      phase += static_cast<double>(mode[i]) * x[i];
    h[c] = std::cos(2.0 * std::numbers::pi * phase);
  }
  return h;
}

ClosureReport verify_relu_closure(const PeriodicCnn& net,
                                  const FrequencyLattice& lattice,
                                  std::size_t grid_n,
                                  const TorusInputMap& input) {
  if (input.modes.empty())
    throw std::invalid_argument("verify_relu_closure: no input modes");
  const std::size_t dim = input.modes.front().size();
  if (lattice.dimension() != dim)
    throw std::invalid_argument("verify_relu_closure: dimension mismatch");

  std::int64_t max_coord = 1;
  for (const auto& g : lattice.generators())
    for (auto v : g) max_coord = std::max(max_coord, std::abs(v));
  for (const auto& m : input.modes)
    for (auto v : m) max_coord = std::max(max_coord, std::abs(v));
  const auto required = static_cast<std::size_t>(4 * max_coord);
  if (grid_n < required)
    throw std::invalid_argument(
        "verify_relu_closure: grid under-resolved, need N >= " +
        std::to_string(required));

  const std::size_t total = pow_size(grid_n, dim);
  const std::size_t n_layers = net.layers.size();
  // samples[layer][channel] over the flattened grid; layer 0 = inputs.
  std::vector<std::vector<std::vector<double>>> samples(
      n_layers + 1, std::vector<std::vector<double>>(
                        net.width, std::vector<double>(total)));

  std::vector<double> x(dim, 0.0);
  std::vector<std::size_t> idx(dim, 0);
  std::vector<double> z(net.width);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (std::size_t a = 0; a < dim; ++a)
      x[a] = static_cast<double>(idx[a]) / static_cast<double>(grid_n);
    std::vector<double> h = input(x);
    for (std::size_t c = 0; c < net.width; ++c) samples[0][c][flat] = h[c];
    for (std::size_t l = 0; l < n_layers; ++l) {
      kernels::circular_convolve(net.layers[l].filter.coefficients(), h, z);
      kernels::relu_bias(z, net.layers[l].bias.values(), h);
      for (std::size_t c = 0; c < net.width; ++c) samples[l + 1][c][flat] = h[c];
    }
    for (std::size_t a = dim; a-- > 0;) {
      if (++idx[a] < grid_n) break;
      idx[a] = 0;
    }
  }

  ClosureReport report;
  report.grid_n = grid_n;
  for (std::size_t l = 0; l <= n_layers; ++l) {
    double total_energy = 0.0;
    double off_energy = 0.0;
    for (std::size_t c = 0; c < net.width; ++c) {
      std::vector<std::complex<double>> data(samples[l][c].begin(),
                                             samples[l][c].end());
      const SpectralVector spectrum =
          spectrum_from_grid(std::move(data), dim, grid_n);
      total_energy += spectrum.energy();
      off_energy += spectrum.energy_off(lattice);
    }
    const double fraction =
        total_energy > 0.0 ? off_energy / total_energy : 0.0;
    report.layers.push_back({l, total_energy, fraction});
  }
  return report;
}

}  // namespace pcnn
