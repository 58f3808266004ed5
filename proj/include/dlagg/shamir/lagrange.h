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

#ifndef DLAGG_SHAMIR_LAGRANGE_H_
#define DLAGG_SHAMIR_LAGRANGE_H_

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "dlagg/field/prime_field.h"

namespace dlagg {

// Linear map from polynomial values at `sources` to values at `targets` for
// the unique polynomial of degree < |sources| through the source points.
class LagrangeBasis {
 public:
  LagrangeBasis(const PrimeField& field, std::span<const FieldElement> sources,
                std::span<const FieldElement> targets);

  size_t num_sources() const { return num_sources_; }
  size_t num_targets() const { return num_targets_; }
  FieldElement coefficient(size_t target, size_t source) const {
    return coeffs_[target * num_sources_ + source];
  }

  // out[j] = sum_s coefficient(j, s) * values[s].
  void Apply(const PrimeField& field, std::span<const FieldElement> values,
             std::span<FieldElement> out) const;

 private:
  size_t num_sources_;
  size_t num_targets_;
  std::vector<FieldElement> coeffs_;
};

// Process-wide basis cache keyed by (q, source points, target points), with
// concurrent readers and single-writer insertion. Basis construction is not
// counted in the thread's field-op tallies, so metered counts do not depend
// on cache state.
std::shared_ptr<const LagrangeBasis> CachedLagrangeBasis(
    const PrimeField& field, std::span<const FieldElement> sources,
    std::span<const FieldElement> targets);

size_t LagrangeCacheSize();
void ClearLagrangeCache();

}  // namespace dlagg

#endif  // DLAGG_SHAMIR_LAGRANGE_H_
