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
#include <cstddef>
#include <vector>

// Circular convolution, circulant matrices and their DFT diagonalization.
// Everything here is an immutable value; all operations are pure.

namespace pcnn {

/// A finite real filter (w_0, ..., w_M) acting by circular convolution at
/// a fixed period d. Trailing exact zeros are trimmed on construction, so
/// the last coefficient is nonzero unless the filter is identically zero.
class Filter {
 public:
  /// Throws std::invalid_argument if the trimmed support exceeds the period
  /// or period < 1.
  Filter(std::vector<double> coefficients, std::size_t period);

  /// The identity element delta_0 = [1].
  static Filter delta(std::size_t period);

  const std::vector<double>& coefficients() const { return coeffs_; }
  std::size_t support_size() const { return coeffs_.size(); }
  std::size_t period() const { return period_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Same coefficients at a different period (support must still fit).
  Filter with_period(std::size_t period) const;

 private:
  std::vector<double> coeffs_;
  std::size_t period_;
};

/// Dense view of the circulant matrix generated by a filter: entry (i, k)
/// is w_{(i-k) mod d}. Row-major storage.
class CirculantMatrix {
 public:
  CirculantMatrix(const Filter& generator, std::size_t dimension);

  std::size_t dimension() const { return dim_; }
  double operator()(std::size_t i, std::size_t k) const {
    return data_[i * dim_ + k];
  }
  std::vector<double> matvec(const std::vector<double>& x) const;

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

/// The d eigenvalues of the circulant matrix of a filter:
/// w_hat(l) = sum_m w_m * omega^{-m l}, omega = exp(2*pi*i/d).
struct DftMultipliers {
  std::vector<std::complex<double>> values;
};

/// out_i = sum_k w_{(i-k) mod d} x_k. Requires w.period() == x.size().
std::vector<double> circular_convolve(const Filter& w,
                                      const std::vector<double>& x);

/// Dense circulant matrix of w at dimension d (w.support_size() <= d).
CirculantMatrix as_matrix(const Filter& w, std::size_t d);

/// Eigenvalues of as_matrix(w, d) in Fourier order l = 0..d-1.
/// Direct O(d^2) transform; d is small everywhere in this project.
DftMultipliers dft_multipliers(const Filter& w, std::size_t d);

/// Filter c with c * x == a * (b * x) for all x of the shared period.
/// Coefficients are the polynomial product of a and b folded mod d.
Filter compose_filters(const Filter& a, const Filter& b);

}  // namespace pcnn
