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

#include "pcnn/filter.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pcnn/kernels.hpp"

namespace pcnn {

Filter::Filter(std::vector<double> coefficients, std::size_t period)
    : coeffs_(std::move(coefficients)), period_(period) {
  if (period_ < 1) throw std::invalid_argument("Filter: period must be >= 1");
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
  if (coeffs_.size() > period_)
    throw std::invalid_argument("Filter: support exceeds period");
}

Filter Filter::delta(std::size_t period) { return Filter({1.0}, period); }

Filter Filter::with_period(std::size_t period) const {
  return Filter(coeffs_, period);
}

CirculantMatrix::CirculantMatrix(const Filter& generator,
                                 std::size_t dimension)
    : dim_(dimension), data_(dimension * dimension, 0.0) {
  if (generator.support_size() > dim_)
    throw std::invalid_argument("CirculantMatrix: support exceeds dimension");
  const auto& w = generator.coefficients();
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = 0; k < dim_; ++k) {
      const std::size_t off = (i + dim_ - k) % dim_;
      if (off < w.size()) data_[i * dim_ + k] = w[off];
    }
}

std::vector<double> CirculantMatrix::matvec(
    const std::vector<double>& x) const {
  if (x.size() != dim_)
    throw std::invalid_argument("CirculantMatrix::matvec: dimension mismatch");
  std::vector<double> y(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    y[i] = kernels::dot({&data_[i * dim_], dim_}, x);
  return y;
}

std::vector<double> circular_convolve(const Filter& w,
                                      const std::vector<double>& x) {
  if (w.period() != x.size())
    throw std::invalid_argument("circular_convolve: dimension mismatch");
  std::vector<double> out(x.size());
  kernels::circular_convolve(w.coefficients(), x, out);
  return out;
}

CirculantMatrix as_matrix(const Filter& w, std::size_t d) {
  return CirculantMatrix(w, d);
}

DftMultipliers dft_multipliers(const Filter& w, std::size_t d) {
  if (w.period() != d)
    throw std::invalid_argument("dft_multipliers: period mismatch");
  DftMultipliers result;
  result.values.resize(d);
  const auto& c = w.coefficients();
  for (std::size_t l = 0; l < d; ++l) {
    std::complex<double> acc = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m) {
      const double angle = -2.0 * std::numbers::pi *
                           static_cast<double>(m * l % d) /
                           static_cast<double>(d);
      acc += c[m] * std::polar(1.0, angle);
    }
    result.values[l] = acc;
  }
  return result;
}

Filter compose_filters(const Filter& a, const Filter& b) {
  if (a.period() != b.period())
    throw std::invalid_argument("compose_filters: period mismatch");
  const std::size_t d = a.period();
  const auto& pa = a.coefficients();
  const auto& pb = b.coefficients();
  // Polynomial product folded mod d: indices >= d wrap around.
  std::vector<double> out(d, 0.0);
  for (std::size_t i = 0; i < pa.size(); ++i)
    for (std::size_t j = 0; j < pb.size(); ++j) out[(i + j) % d] += pa[i] * pb[j];
  return Filter(std::move(out), d);
}

}  // namespace pcnn
