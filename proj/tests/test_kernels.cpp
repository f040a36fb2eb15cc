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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pcnn/kernels.hpp"
#include "pcnn/rng.hpp"

using namespace pcnn;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  return v;
}

}  // namespace

TEST_CASE("scalar circular convolution matches the direct formula") {
  Rng rng(11);
  for (std::size_t d : {1, 2, 3, 5, 8, 17, 64}) {
    for (std::size_t support = 1; support <= d; support += 3) {
      const auto w = random_vec(rng, support);
      const auto x = random_vec(rng, d);
      std::vector<double> out(d);
      kernels::scalar::circular_convolve(w, x, out);
      for (std::size_t i = 0; i < d; ++i) {
        double expect = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
          const std::size_t m = (i + d - k) % d;
          if (m < support) expect += w[m] * x[k];
        }
        CHECK(out[i] == doctest::Approx(expect).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("dispatched kernels agree with the scalar reference") {
  INFO("active backend: ", kernels::active_backend());
  Rng rng(7);
  for (std::size_t d : {1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 33, 64, 100}) {
    const auto w = random_vec(rng, std::min<std::size_t>(d, 6));
    const auto x = random_vec(rng, d);
    const auto b = random_vec(rng, d);

    std::vector<double> conv_ref(d), conv_disp(d);
    kernels::scalar::circular_convolve(w, x, conv_ref);
    kernels::circular_convolve(w, x, conv_disp);
    // Convolution and relu must match bitwise so backend choice can never
    // change results.
    CHECK(conv_ref == conv_disp);

    std::vector<double> relu_ref(d), relu_disp(d);
    kernels::scalar::relu_bias(x, b, relu_ref);
    kernels::relu_bias(x, b, relu_disp);
    CHECK(relu_ref == relu_disp);

    CHECK(kernels::dot(x, b) ==
          doctest::Approx(kernels::scalar::dot(x, b)).epsilon(1e-13));
  }
}

#if defined(__x86_64__)
TEST_CASE("forced AVX2 path agrees with scalar when available") {
  if (!kernels::avx2::available()) return;
  Rng rng(3);
  for (std::size_t d : {1, 3, 4, 7, 8, 12, 16, 31, 64}) {
    const auto w = random_vec(rng, std::min<std::size_t>(d, 5));
    const auto x = random_vec(rng, d);
    const auto b = random_vec(rng, d);

    std::vector<double> a1(d), a2(d);
    kernels::scalar::circular_convolve(w, x, a1);
    kernels::avx2::circular_convolve(w, x, a2);
    CHECK(a1 == a2);

    kernels::scalar::relu_bias(x, b, a1);
    kernels::avx2::relu_bias(x, b, a2);
    CHECK(a1 == a2);

    CHECK(kernels::avx2::dot(x, b) ==
          doctest::Approx(kernels::scalar::dot(x, b)).epsilon(1e-13));
  }
}
#endif

TEST_CASE("relu_bias clamps at zero") {
  const std::vector<double> x{1.0, -2.0, 0.5};
  const std::vector<double> b{0.5, 0.0, 0.5};
  std::vector<double> out(3);
  kernels::relu_bias(x, b, out);
  CHECK(out == std::vector<double>{0.5, 0.0, 0.0});
}
