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

#include "pcnn/lattice.hpp"

#include <cstdlib>
#include <stdexcept>

namespace pcnn {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out))
    throw std::overflow_error("lattice: integer overflow");
  return out;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out))
    throw std::overflow_error("lattice: integer overflow");
  return out;
}

// row_a -= q * row_b
void axpy_row(IntVector& row_a, std::int64_t q, const IntVector& row_b) {
  for (std::size_t i = 0; i < row_a.size(); ++i)
    row_a[i] = checked_sub(row_a[i], checked_mul(q, row_b[i]));
}

// Floor division, matching the reduction convention 0 <= r < |b|.
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Row-style Hermite normal form by Euclidean elimination, column by column.
std::vector<IntVector> hermite_normal_form(std::vector<IntVector> rows,
                                           std::size_t dimension) {
  std::vector<IntVector> basis;
  std::size_t fixed = 0;
  for (std::size_t col = 0; col < dimension && fixed < rows.size(); ++col) {
    // Euclid on the unfixed rows until at most one has a nonzero entry here.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = fixed; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        if (best == rows.size() ||
            std::abs(rows[r][col]) < std::abs(rows[best][col]))
          best = r;
      }
      if (best == rows.size()) break;  // column is zero below `fixed`
      bool reduced_any = false;
      for (std::size_t r = fixed; r < rows.size(); ++r) {
        if (r == best || rows[r][col] == 0) continue;
        const std::int64_t q = floor_div(rows[r][col], rows[best][col]);
        if (q != 0) axpy_row(rows[r], q, rows[best]);
        if (rows[r][col] != 0) reduced_any = true;
      }
      if (!reduced_any) {
        std::swap(rows[fixed], rows[best]);
        if (rows[fixed][col] < 0)
          for (auto& v : rows[fixed]) v = -v;
        // Reduce entries above the pivot into [0, pivot).
        for (auto& done : basis) {
          const std::int64_t q = floor_div(done[col], rows[fixed][col]);
          if (q != 0) axpy_row(done, q, rows[fixed]);
        }
        basis.push_back(rows[fixed]);
        ++fixed;
        break;
      }
    }
  }
  return basis;
}

}  // namespace

FrequencyLattice::FrequencyLattice(std::vector<IntVector> generators,
                                   std::size_t dimension)
    : generators_(std::move(generators)), dimension_(dimension) {
  for (const auto& g : generators_)
    if (g.size() != dimension_)
      throw std::invalid_argument("FrequencyLattice: generator dimension");
  hnf_ = hermite_normal_form(generators_, dimension_);
}

FrequencyLattice lattice_from_supports(
    const std::vector<std::vector<IntVector>>& supports,
    std::size_t dimension) {
  std::vector<IntVector> generators;
  for (const auto& support : supports)
    generators.insert(generators.end(), support.begin(), support.end());
  return FrequencyLattice(std::move(generators), dimension);
}

bool member(const FrequencyLattice& lattice, const IntVector& u) {
  if (u.size() != lattice.dimension())
    throw std::invalid_argument("member: dimension mismatch");
  IntVector residue = u;
  for (const auto& row : lattice.hnf_basis()) {
    std::size_t col = 0;
    while (row[col] == 0) ++col;  // pivot column
    if (residue[col] % row[col] != 0) continue;
    axpy_row(residue, residue[col] / row[col], row);
  }
  for (std::int64_t v : residue)
    if (v != 0) return false;
  return true;
}

}  // namespace pcnn
