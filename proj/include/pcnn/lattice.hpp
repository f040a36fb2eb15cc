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

#include <cstdint>
#include <vector>

// Integer frequency lattices: the additive subgroup of Z^d generated by
// filter support sets, with exact membership via a Hermite-normal-form
// basis. All arithmetic is overflow-checked 64-bit integer.

namespace pcnn {

using IntVector = std::vector<std::int64_t>;

class FrequencyLattice {
 public:
  /// Lattice spanned by the given generators (dimension taken from them;
  /// all generators must share it). An empty generator list or all-zero
  /// generators give the trivial lattice {0}.
  FrequencyLattice(std::vector<IntVector> generators, std::size_t dimension);

  const std::vector<IntVector>& generators() const { return generators_; }
  /// Row-style Hermite normal form: one row per lattice basis vector,
  /// positive pivots, entries above each pivot reduced into [0, pivot).
  const std::vector<IntVector>& hnf_basis() const { return hnf_; }
  std::size_t rank() const { return hnf_.size(); }
  std::size_t dimension() const { return dimension_; }

 private:
  std::vector<IntVector> generators_;
  std::vector<IntVector> hnf_;
  std::size_t dimension_;
};

/// Union of the support sets, spanned as one lattice.
FrequencyLattice lattice_from_supports(
    const std::vector<std::vector<IntVector>>& supports,
    std::size_t dimension);

/// True iff u is an integer combination of the lattice generators
/// (back-substitution against the HNF basis). Throws on dimension mismatch.
bool member(const FrequencyLattice& lattice, const IntVector& u);

}  // namespace pcnn
