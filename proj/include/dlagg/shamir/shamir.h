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

#ifndef DLAGG_SHAMIR_SHAMIR_H_
#define DLAGG_SHAMIR_SHAMIR_H_

#include <cstdint>
#include <vector>

#include "dlagg/common/seeded_random.h"
#include "dlagg/field/prime_field.h"

namespace dlagg {

// One evaluation (x, f(x)) of a sharing polynomial; x is never zero.
struct Share {
  FieldElement x;
  FieldElement y;

  friend bool operator==(const Share&, const Share&) = default;
};

struct ShareSet {
  std::vector<Share> shares;
  uint32_t threshold = 0;
  uint32_t pack_width = 1;  // 1 for plain Shamir

  // Shares needed to interpolate: threshold + pack_width - 1.
  uint32_t reconstruction_size() const { return threshold + pack_width - 1; }
};

inline uint32_t DefaultThreshold(uint32_t n) { return n / 2 + 1; }

// t-out-of-n sharing of `secret` as f(0) of a random degree-(t-1)
// polynomial, evaluated at x = 1..n. Throws BadThreshold unless 0 < t <= n,
// and InvalidConfig unless n < q.
ShareSet ShamirShare(FieldElement secret, uint32_t t, uint32_t n,
                     const PrimeField& field, SeededRandomSource& rng);

// f(0) by Lagrange interpolation through every supplied share. Throws
// NotEnoughShares below the threshold and DuplicatePoint if two shares share
// an x or an x is zero.
FieldElement ShamirReconstruct(const ShareSet& set, const PrimeField& field);

// Pointwise sum; reconstructs to the sum of the two secrets. Throws
// PointMismatch unless both sets use the same points, threshold and width.
ShareSet AddShares(const ShareSet& a, const ShareSet& b,
                   const PrimeField& field);

}  // namespace dlagg

#endif  // DLAGG_SHAMIR_SHAMIR_H_
