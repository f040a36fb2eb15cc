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

#include <cstddef>
#include <span>
#include <string_view>

// Low-level arithmetic kernels behind the convolution and network forward
// pass. Every kernel has a scalar reference implementation and, on x86-64
// with AVX2, a vectorized variant selected once at startup. The two paths
// are equivalence-tested; callers never pick a variant explicitly.

namespace pcnn::kernels {

// out[i] = sum_k w[(i - k) mod d] * x[k], d = x.size().
// w.size() <= d; taps beyond w.size() are treated as zero.
void circular_convolve(std::span<const double> w, std::span<const double> x,
                       std::span<double> out);

double dot(std::span<const double> a, std::span<const double> b);

// out[i] = max(x[i] - b[i], 0)
void relu_bias(std::span<const double> x, std::span<const double> b,
               std::span<double> out);

// Name of the dispatched implementation ("scalar" or "avx2").
std::string_view active_backend();

// Forced-path entry points, exposed for equivalence tests only.
namespace scalar {
void circular_convolve(std::span<const double> w, std::span<const double> x,
                       std::span<double> out);
double dot(std::span<const double> a, std::span<const double> b);
void relu_bias(std::span<const double> x, std::span<const double> b,
               std::span<double> out);
}  // namespace scalar

#if defined(__x86_64__)
namespace avx2 {
void circular_convolve(std::span<const double> w, std::span<const double> x,
                       std::span<double> out);
double dot(std::span<const double> a, std::span<const double> b);
void relu_bias(std::span<const double> x, std::span<const double> b,
               std::span<double> out);
bool available();
}  // namespace avx2
#endif

}  // namespace pcnn::kernels
