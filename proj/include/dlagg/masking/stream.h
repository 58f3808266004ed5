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

#ifndef DLAGG_MASKING_STREAM_H_
#define DLAGG_MASKING_STREAM_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "dlagg/common/sha256.h"
#include "dlagg/field/prime_field.h"

namespace dlagg {

// 32-byte seed of a mask stream.
struct MaskSeed {
  Digest bytes{};

  friend bool operator==(const MaskSeed&, const MaskSeed&) = default;
};

inline constexpr std::string_view kPairwiseTag = "pairwise";
inline constexpr std::string_view kPersonalTag = "personal";
inline constexpr std::string_view kMatrixTag = "A-matrix";

// Hash-counter expansion of a seed into field elements:
//   element i = BE256(SHA-256(seed || tag || i as 8-byte BE)) mod q,
// resampled as SHA-256(seed || tag || i || r) for retry byte r = 1, 2, ...
// whenever the 256-bit value is >= floor(2^256 / q) * q.
class MaskStream {
 public:
  MaskStream(const MaskSeed& seed, std::string_view domain_tag,
             const PrimeField& field);

  FieldElement At(uint64_t index);

  // acc[i] += element(first + i), or -= when `subtract` is set.
  void Accumulate(std::span<FieldElement> acc, bool subtract,
                  uint64_t first = 0);

 private:
  MaskSeed seed_;
  std::string tag_;
  const PrimeField& field_;
  uint64_t top_remainder_;  // 2^256 mod q
  Sha256 hasher_;
};

std::vector<FieldElement> StreamExpand(const MaskSeed& seed,
                                       std::string_view domain_tag,
                                       uint64_t count, const PrimeField& field);

}  // namespace dlagg

#endif  // DLAGG_MASKING_STREAM_H_
