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

#include <algorithm>
#include <cstddef>
#include <span>

#include "pcnn/kernels.hpp"

namespace pcnn::kernels::scalar {

// Tap-major accumulation: for each filter tap m the update is a shifted
// axpy over the output, split at the wrap point so both halves are
// contiguous. The AVX2 variant uses the same order, so results match
// bit for bit.
void circular_convolve(std::span<const double> w, std::span<const double> x,
                       std::span<double> out) {
  const std::size_t d = x.size();
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t m = 0; m < w.size(); ++m) {
    const double wm = w[m];
    if (wm == 0.0) continue;
    // i in [0, m): x index i - m + d
    for (std::size_t i = 0; i < m; ++i) out[i] += wm * x[i + d - m];
    // i in [m, d): x index i - m
    for (std::size_t i = m; i < d; ++i) out[i] += wm * x[i - m];
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void relu_bias(std::span<const double> x, std::span<const double> b,
               std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = std::max(x[i] - b[i], 0.0);
}

}  // namespace pcnn::kernels::scalar
