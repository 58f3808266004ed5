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

#ifndef DLAGG_SHAMIR_PACKED_H_
#define DLAGG_SHAMIR_PACKED_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dlagg/common/seeded_random.h"
#include "dlagg/field/prime_field.h"
#include "dlagg/shamir/shamir.h"

namespace dlagg {

// Where packed secrets and shares live on the polynomial. The standard layout
// embeds secrets at 1..k and hands recipient j (0-based) the point k + 1 + j.
struct PackingLayout {
  std::vector<FieldElement> secret_points;
  std::vector<FieldElement> share_points;

  static PackingLayout Standard(uint32_t k, uint32_t n);

  uint32_t pack_width() const { return static_cast<uint32_t>(secret_points.size()); }
  uint32_t num_shares() const { return static_cast<uint32_t>(share_points.size()); }
  // Throws BadPacking if points repeat, are zero, or exceed the field.
  void Validate(const PrimeField& field) const;
};

// Packs k = layout.pack_width() secrets into one polynomial of degree
// t + k - 2: the k secrets at the secret points plus t - 1 uniformly random
// anchor values at the first t - 1 share points. Any t - 1 shares are
// independent of the secrets; any t + k - 1 shares determine them.
// Throws BadPacking if n < t + k - 1 and BadThreshold if t = 0.
ShareSet PackedShare(std::span<const FieldElement> secrets, uint32_t t,
                     uint32_t n, const PackingLayout& layout,
                     const PrimeField& field, SeededRandomSource& rng);

// Interpolates through every supplied share and evaluates at the secret
// points. Throws NotEnoughShares below t + k - 1 shares.
std::vector<FieldElement> PackedReconstruct(const ShareSet& set,
                                            const PackingLayout& layout,
                                            const PrimeField& field);

// One recipient's shares of a whole vector: one element per chunk of k
// coordinates, all at the recipient's point x.
struct ShareVector {
  FieldElement x;
  uint32_t vector_length = 0;
  uint32_t threshold = 0;
  uint32_t pack_width = 1;
  std::vector<FieldElement> values;

  friend bool operator==(const ShareVector&, const ShareVector&) = default;
};

inline uint32_t ChunkCount(uint32_t length, uint32_t k) {
  return (length + k - 1) / k;
}

inline FieldElement RecipientPoint(uint32_t recipient, uint32_t k) {
  return {uint64_t{k} + 1 + recipient};
}

// Splits w into ceil(m / k) chunks (last one zero-padded) and packs each
// chunk with the standard layout. Element j of the result belongs to
// recipient j.
std::vector<ShareVector> ShareVectorPacked(std::span<const FieldElement> w,
                                           uint32_t t, uint32_t n, uint32_t k,
                                           const PrimeField& field,
                                           SeededRandomSource& rng);

// Recovers the original length-m vector from at least t + k - 1 share
// vectors with matching headers.
std::vector<FieldElement> ReconstructVector(std::span<const ShareVector> shares,
                                            const PrimeField& field);

// acc += v pointwise. Throws PointMismatch on differing points or headers.
void AddShareVectorInPlace(ShareVector& acc, const ShareVector& v,
                           const PrimeField& field);
ShareVector AddShareVectors(const ShareVector& a, const ShareVector& b,
                            const PrimeField& field);

}  // namespace dlagg

#endif  // DLAGG_SHAMIR_PACKED_H_
