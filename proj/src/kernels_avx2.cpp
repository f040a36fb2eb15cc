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

#if defined(__x86_64__)

#include <immintrin.h>

#include <algorithm>
#include <cstddef>
#include <span>

#include "pcnn/kernels.hpp"

// Compiled with -mavx2. No FMA contraction in circular_convolve/relu_bias:
// mul+add keeps each lane's rounding identical to the scalar path.

namespace pcnn::kernels::avx2 {

bool available() { return __builtin_cpu_supports("avx2"); }

namespace {

// out[0..n) += c * x[0..n)
inline void axpy(double c, const double* x, double* out, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vx = _mm256_loadu_pd(x + i);
    __m256d vo = _mm256_loadu_pd(out + i);
    vo = _mm256_add_pd(vo, _mm256_mul_pd(vc, vx));
    _mm256_storeu_pd(out + i, vo);
  }
  for (; i < n; ++i) out[i] += c * x[i];
}

}  // namespace

void circular_convolve(std::span<const double> w, std::span<const double> x,
                       std::span<double> out) {
  const std::size_t d = x.size();
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t m = 0; m < w.size(); ++m) {
    const double wm = w[m];
    if (wm == 0.0) continue;
    axpy(wm, x.data() + d - m, out.data(), m);
    axpy(wm, x.data(), out.data() + m, d - m);
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d va = _mm256_loadu_pd(a.data() + i);
    __m256d vb = _mm256_loadu_pd(b.data() + i);
    acc = _mm256_fmadd_pd(va, vb, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void relu_bias(std::span<const double> x, std::span<const double> b,
               std::span<double> out) {
  const std::size_t n = x.size();
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_sub_pd(_mm256_loadu_pd(x.data() + i),
                              _mm256_loadu_pd(b.data() + i));
    _mm256_storeu_pd(out.data() + i, _mm256_max_pd(v, zero));
  }
  for (; i < n; ++i) out[i] = std::max(x[i] - b[i], 0.0);
}

}  // namespace pcnn::kernels::avx2

#endif  // __x86_64__
