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

#include <stdexcept>
#include <vector>

#include "pcnn/filter.hpp"

// Factoring a long filter into a chain of short ones. A filter W supported
// on {0,...,M} splits as W = w^(J) * ... * w^(1) with every factor supported
// on {0,...,s} and J < M/(s-1) + 1. The construction treats W as the
// polynomial sum W_k z^k: complex roots come from the companion matrix,
// conjugate pairs are grouped into real quadratics, leftover real roots fill
// linear slots, and the global scale lands in the last factor.

namespace pcnn {

struct FactorizationResult {
  std::vector<Filter> factors;  // composition order: factors[0] applied first
  std::size_t depth = 0;        // J = factors.size()
  double residual = 0.0;        // max |reconvolve(factors) - W| coefficientwise
};

class FactorizationError : public std::runtime_error {
 public:
  FactorizationError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Requires s >= 2 and W not identically zero. Throws FactorizationError
/// (carrying the achieved residual) if the reconvolved factors miss W by
/// more than `tolerance` in any coefficient.
FactorizationResult factorize(const Filter& W, std::size_t s,
                              double tolerance);

/// Left-fold of compose_filters over a non-empty factor list.
Filter reconvolve(const std::vector<Filter>& factors);

}  // namespace pcnn
