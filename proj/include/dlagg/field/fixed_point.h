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

#ifndef DLAGG_FIELD_FIXED_POINT_H_
#define DLAGG_FIELD_FIXED_POINT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dlagg/field/prime_field.h"

namespace dlagg {

// Real <-> field codec: x maps to round(x * 2^frac_bits) mod q, negatives to
// the upper half of the field.
struct FixedPointConfig {
  unsigned frac_bits = 16;
  double clip_magnitude = 1048576.0;  // 2^20

  double scale() const;
  // Throws InvalidConfig unless frac_bits >= 1 and
  // 2 * max_clients * clip_magnitude * 2^frac_bits < q.
  void Validate(const PrimeField& field, uint64_t max_clients) const;
};

// Values beyond +-clip_magnitude are clipped; NaN encodes as zero.
FieldElement EncodeFixedPoint(double x, const FixedPointConfig& cfg,
                              const PrimeField& field);
std::vector<FieldElement> EncodeFixedPoint(std::span<const double> xs,
                                           const FixedPointConfig& cfg,
                                           const PrimeField& field);

// Decodes the sum of at most `summand_count` encoded values. Elements above
// q - bound are read as negative, with
// bound = summand_count * clip_magnitude * 2^frac_bits + extra_margin.
// Throws DecodeRange for elements in the band between the two halves.
double DecodeFixedPoint(FieldElement e, uint64_t summand_count,
                        const FixedPointConfig& cfg, const PrimeField& field,
                        uint64_t extra_margin = 0);
std::vector<double> DecodeFixedPoint(std::span<const FieldElement> es,
                                     uint64_t summand_count,
                                     const FixedPointConfig& cfg,
                                     const PrimeField& field,
                                     uint64_t extra_margin = 0);

}  // namespace dlagg

#endif  // DLAGG_FIELD_FIXED_POINT_H_
