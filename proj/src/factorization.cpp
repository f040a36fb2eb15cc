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

#include "pcnn/factorization.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace pcnn {

namespace {

constexpr double kRealRootTol = 1e-9;  // |Im| below this means a real root

// Ascending-coefficient polynomial product.
std::vector<double> poly_mul(const std::vector<double>& a,
                             const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<std::complex<double>> companion_roots(
    const std::vector<double>& monic_low_to_high) {
  // monic_low_to_high holds p_0..p_{n-1} of z^n + p_{n-1} z^{n-1} + ... + p_0.
  const auto n = static_cast<Eigen::Index>(monic_low_to_high.size());
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i)
    companion(i, n - 1) = -monic_low_to_high[static_cast<std::size_t>(i)];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw FactorizationError("factorize: eigenvalue iteration failed", 0.0);
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return roots;
}

// A degree-1 or degree-2 real polynomial block, ascending coefficients.
using Block = std::vector<double>;

std::vector<Block> real_blocks(std::vector<std::complex<double>> roots) {
  std::vector<Block> blocks;
  std::vector<std::complex<double>> complex_roots;
  for (const auto& r : roots) {
    if (std::abs(r.imag()) <= kRealRootTol) {
      blocks.push_back({-r.real(), 1.0});  // z - r
    } else if (r.imag() > 0.0) {
      complex_roots.push_back(r);  // keep one of each conjugate pair
    }
  }
  for (const auto& r : complex_roots) {
    // (z - r)(z - conj r) = z^2 - 2 Re(r) z + |r|^2
    blocks.push_back({std::norm(r), -2.0 * r.real(), 1.0});
  }
  return blocks;
}

}  // namespace

Filter reconvolve(const std::vector<Filter>& factors) {
  if (factors.empty())
    throw std::invalid_argument("reconvolve: empty factor list");
  Filter acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i)
    acc = compose_filters(factors[i], acc);
  return acc;
}

FactorizationResult factorize(const Filter& W, std::size_t s,
                              double tolerance) {
  if (s < 2) throw std::invalid_argument("factorize: s must be >= 2");
  if (W.is_zero())
    throw std::invalid_argument("factorize: zero filter has no factorization");

  const std::size_t d = W.period();
  const auto& coeffs = W.coefficients();
  const std::size_t degree = coeffs.size() - 1;  // M

  // Leading zeros W_0 = ... = W_{r-1} = 0 are shift factors z each.
  std::size_t shifts = 0;
  while (coeffs[shifts] == 0.0) ++shifts;

  std::vector<Block> blocks(shifts, Block{0.0, 1.0});
  const double scale = coeffs.back();
  if (degree > shifts) {
    // Monic part of W(z)/z^shifts.
    std::vector<double> monic(coeffs.begin() + static_cast<long>(shifts),
                              coeffs.end());
    for (auto& c : monic) c /= scale;
    monic.pop_back();
    auto pair_blocks = real_blocks(companion_roots(monic));
    blocks.insert(blocks.end(), pair_blocks.begin(), pair_blocks.end());
  }

  // Greedy packing of degree-1/degree-2 blocks into factors of degree <= s,
  // quadratics first so linear blocks can fill odd leftover slots. Every
  // closed factor then has degree >= s-1, which gives the depth bound
  // J <= (M-1)/(s-1) + 1 < M/(s-1) + 1. At s = 2 each block stays its own
  // factor (J <= M also meets the bound) so a conjugate pair is the only
  // occupant of a quadratic factor.
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const Block& a, const Block& b) {
                     return a.size() > b.size();
                   });
  std::vector<std::vector<double>> factor_polys;
  if (blocks.empty()) {
    factor_polys.push_back({1.0});  // degree-0 input
  } else if (s == 2) {
    for (const auto& block : blocks) factor_polys.push_back(block);
  } else {
    std::vector<double> current{1.0};
    for (const auto& block : blocks) {
      if (current.size() - 1 + block.size() - 1 > s) {
        factor_polys.push_back(std::move(current));
        current = {1.0};
      }
      current = poly_mul(current, block);
    }
    factor_polys.push_back(std::move(current));
  }
  for (auto& c : factor_polys.back()) c *= scale;

  FactorizationResult result;
  for (auto& p : factor_polys) result.factors.emplace_back(std::move(p), d);
  result.depth = result.factors.size();

  const Filter rebuilt = reconvolve(result.factors);
  const auto& got = rebuilt.coefficients();
  double residual = 0.0;
  const std::size_t n = std::max(got.size(), coeffs.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < got.size() ? got[i] : 0.0;
    const double b = i < coeffs.size() ? coeffs[i] : 0.0;
    residual = std::max(residual, std::abs(a - b));
  }
  result.residual = residual;
  if (residual > tolerance)
    throw FactorizationError(
        "factorize: reconvolution residual exceeds tolerance", residual);
  return result;
}

}  // namespace pcnn
