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

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "pcnn/lattice.hpp"
#include "pcnn/network.hpp"

// Fourier-side machinery on the torus: sparse spectra, ridge function
// spectra, the off-lattice projection lower bound, grid spectra of sampled
// functions, and the numerical check that ReLU layers keep spectral energy
// inside the network's frequency lattice.

namespace pcnn {

/// Sparse map from integer frequency tuples to complex coefficients.
class SpectralVector {
 public:
  using Map = std::map<IntVector, std::complex<double>>;

  SpectralVector() = default;
  explicit SpectralVector(Map entries);

  const Map& entries() const { return entries_; }
  std::complex<double> coeff(const IntVector& k) const;
  /// Parseval: squared L2 norm = sum of squared coefficient magnitudes.
  double energy() const;
  /// Coefficients with |c| < 1e-14 dropped.
  SpectralVector pruned() const;
  /// Split of energy() into the parts on and off the lattice.
  double energy_on(const FrequencyLattice& lattice) const;
  double energy_off(const FrequencyLattice& lattice) const;

 private:
  Map entries_;
};

/// f(x) = phi(u^T x) with phi given by finitely many Fourier coefficients
/// c_m; u must be an integer vector for f to live on the torus.
struct TorusRidge {
  IntVector direction;
  std::vector<std::pair<std::int64_t, std::complex<double>>> profile_coeffs;

  /// Pointwise evaluation (real part; real signals have conjugate-symmetric
  /// coefficient lists).
  double operator()(const std::vector<double>& x) const;
};

/// Spectrum {m*u -> c_m}; a zero direction collapses all mass to k = 0.
SpectralVector ridge_spectrum(const TorusRidge& ridge);

/// epsilon = sqrt(sum over k not in Lambda of |f_hat(k)|^2): the L2 error
/// floor for every readout of a network whose spectrum lies in the lattice.
double lower_bound(const TorusRidge& ridge, const FrequencyLattice& lattice);

/// Multidimensional DFT of N^dim grid samples, normalized so entries
/// estimate f_hat(k) for |k_i| <= N/2 (frequencies above N/2 alias down).
/// Throws on non-finite samples.
SpectralVector empirical_spectrum(
    const std::function<double(const std::vector<double>&)>& fn,
    std::size_t dim, std::size_t grid_n);

/// Torus-periodic inputs for closure experiments: channel c of the feature
/// vector is cos(2*pi*modes[c mod m].x) (or sin for entries flagged so).
struct TorusInputMap {
  std::vector<IntVector> modes;
  std::size_t width;

  std::vector<double> operator()(const std::vector<double>& x) const;
};

struct ClosureLayerReport {
  std::size_t layer;  // 0 = input features
  double total_energy;
  double off_lattice_fraction;
};

struct ClosureReport {
  std::vector<ClosureLayerReport> layers;
  std::size_t grid_n;
};

/// Per-layer off-lattice spectral energy fractions of the network features,
/// driven by the given torus input map, on an N^dim grid. Only frequencies
/// the grid resolves are counted, so this is a necessary (not sufficient)
/// check of spectral closure. Requires N >= 4 * the largest coordinate among
/// lattice generators and input modes; otherwise throws with the needed N.
ClosureReport verify_relu_closure(const PeriodicCnn& net,
                                  const FrequencyLattice& lattice,
                                  std::size_t grid_n,
                                  const TorusInputMap& input);

}  // namespace pcnn
