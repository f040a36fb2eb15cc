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

#include "pcnn/kernels.hpp"

namespace pcnn::kernels {

namespace {

struct Backend {
  void (*circular_convolve)(std::span<const double>, std::span<const double>,
                            std::span<double>);
  double (*dot)(std::span<const double>, std::span<const double>);
  void (*relu_bias)(std::span<const double>, std::span<const double>,
                    std::span<double>);
  std::string_view name;
};

Backend select_backend() {
#if defined(__x86_64__)
  if (avx2::available())
    return {&avx2::circular_convolve, &avx2::dot, &avx2::relu_bias, "avx2"};
#endif
  return {&scalar::circular_convolve, &scalar::dot, &scalar::relu_bias,
          "scalar"};
}

const Backend& backend() {
  static const Backend b = select_backend();
  return b;
}

}  // namespace

void circular_convolve(std::span<const double> w, std::span<const double> x,
                       std::span<double> out) {
  backend().circular_convolve(w, x, out);
}

double dot(std::span<const double> a, std::span<const double> b) {
  return backend().dot(a, b);
}

void relu_bias(std::span<const double> x, std::span<const double> b,
               std::span<double> out) {
  backend().relu_bias(x, b, out);
}

std::string_view active_backend() { return backend().name; }

}  // namespace pcnn::kernels
