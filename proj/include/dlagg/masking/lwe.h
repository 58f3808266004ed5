/*
 * Copyright 2026 The dlagg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DLAGG_MASKING_LWE_H_
#define DLAGG_MASKING_LWE_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "dlagg/common/seeded_random.h"
#include "dlagg/field/prime_field.h"
#include "dlagg/masking/stream.h"

namespace dlagg {

inline constexpr uint32_t kMinLweDimension = 710;

struct LweParams {
  uint32_t m = 1;
  uint32_t n_lwe = kMinLweDimension;
  double sigma = 3.0;  // in field units, i.e. multiples of 2^-frac_bits
  MaskSeed matrix_seed;

  // Throws InvalidConfig unless m >= 1 and sigma > 0. The dimension floor is
  // only enforced when enforce_min_dimension is set.
  void Validate(bool enforce_min_dimension) const;
};

// Public m x n_lwe matrix, row-major. Entry (i, j) is element i * n_lwe + j
// of the "A-matrix" stream under matrix_seed.
class LweMatrix {
 public:
  LweMatrix(uint32_t rows, uint32_t cols, std::vector<FieldElement> entries);

  static LweMatrix Generate(const LweParams& params, const PrimeField& field);
  // Shared read-only copy keyed by (seed, shape, q); regenerated on a miss.
  static std::shared_ptr<const LweMatrix> Shared(const LweParams& params,
                                                 const PrimeField& field);

  uint32_t rows() const { return rows_; }
  uint32_t cols() const { return cols_; }
  FieldElement at(uint32_t i, uint32_t j) const {
    return entries_[size_t{i} * cols_ + j];
  }
  std::span<const FieldElement> entries() const { return entries_; }

  // out[i] += sign * (A s)[i]. Throws DimensionMismatch.
  void MultiplyAccumulate(std::span<const FieldElement> s,
                          std::span<FieldElement> out, bool subtract,
                          const PrimeField& field) const;
  std::vector<FieldElement> Multiply(std::span<const FieldElement> s,
                                     const PrimeField& field) const;

 private:
  uint32_t rows_;
  uint32_t cols_;
  std::vector<FieldElement> entries_;
};

// Uniform secret in F_q^{n_lwe}.
std::vector<FieldElement> LweSecret(uint32_t n_lwe, const PrimeField& field,
                                    SeededRandomSource& rng);

// round(sigma * N(0, 1)) per coordinate, negatives in the upper half.
std::vector<FieldElement> GaussianError(double sigma, uint32_t m,
                                        const PrimeField& field,
                                        SeededRandomSource& rng);

// h = w + A s + e. Throws DimensionMismatch.
std::vector<FieldElement> LweMask(std::span<const FieldElement> w,
                                  std::span<const FieldElement> s,
                                  std::span<const FieldElement> e,
                                  const LweMatrix& a, const PrimeField& field);

}  // namespace dlagg

#endif  // DLAGG_MASKING_LWE_H_
