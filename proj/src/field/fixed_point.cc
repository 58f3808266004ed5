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

#include "dlagg/field/fixed_point.h"

#include <cmath>
#include <string>

#include "dlagg/common/error.h"

namespace dlagg {
namespace {

unsigned __int128 DecodeBound(uint64_t summand_count,
                              const FixedPointConfig& cfg,
                              uint64_t extra_margin) {
  long double per_value = std::ceil(static_cast<long double>(cfg.clip_magnitude) *
                                    std::ldexp(1.0L, static_cast<int>(cfg.frac_bits)));
  long double bound = per_value * static_cast<long double>(summand_count) +
                      static_cast<long double>(extra_margin);
  if (bound >= std::ldexp(1.0L, 127)) return ~static_cast<unsigned __int128>(0) >> 1;
  return static_cast<unsigned __int128>(bound);
}

}  // namespace

double FixedPointConfig::scale() const {
  return std::ldexp(1.0, static_cast<int>(frac_bits));
}

void FixedPointConfig::Validate(const PrimeField& field,
                                uint64_t max_clients) const {
  if (frac_bits < 1 || frac_bits > 52) {
    Fail(ErrorCode::kInvalidConfig, "frac_bits must be in [1, 52]");
  }
  if (!(clip_magnitude > 0.0) || !std::isfinite(clip_magnitude)) {
    Fail(ErrorCode::kInvalidConfig, "clip_magnitude must be positive");
  }
  unsigned __int128 bound = DecodeBound(max_clients, *this, 0);
  if (2 * bound >= field.modulus()) {
    Fail(ErrorCode::kInvalidConfig,
         "2 * n * clip * 2^f must stay below q for n = " +
             std::to_string(max_clients));
  }
}

FieldElement EncodeFixedPoint(double x, const FixedPointConfig& cfg,
                              const PrimeField& field) {
  if (std::isnan(x)) return {0};
  if (x > cfg.clip_magnitude) x = cfg.clip_magnitude;
  if (x < -cfg.clip_magnitude) x = -cfg.clip_magnitude;
  return field.FromInt(std::llround(x * cfg.scale()));
}

std::vector<FieldElement> EncodeFixedPoint(std::span<const double> xs,
                                           const FixedPointConfig& cfg,
                                           const PrimeField& field) {
  std::vector<FieldElement> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(EncodeFixedPoint(x, cfg, field));
  return out;
}

double DecodeFixedPoint(FieldElement e, uint64_t summand_count,
                        const FixedPointConfig& cfg, const PrimeField& field,
                        uint64_t extra_margin) {
  const uint64_t q = field.modulus();
  unsigned __int128 bound = DecodeBound(summand_count, cfg, extra_margin);
  if (2 * bound >= q) {
    Fail(ErrorCode::kDecodeRange, "decode bound exceeds half the field");
  }
  if (e.value <= bound) {
    return static_cast<double>(e.value) / cfg.scale();
  }
  if (e.value >= q - static_cast<uint64_t>(bound)) {
    return -static_cast<double>(q - e.value) / cfg.scale();
  }
  Fail(ErrorCode::kDecodeRange,
       "element " + std::to_string(e.value) + " lies outside the decodable band");
}

std::vector<double> DecodeFixedPoint(std::span<const FieldElement> es,
                                     uint64_t summand_count,
                                     const FixedPointConfig& cfg,
                                     const PrimeField& field,
                                     uint64_t extra_margin) {
  std::vector<double> out;
  out.reserve(es.size());
  for (FieldElement e : es) {
    out.push_back(DecodeFixedPoint(e, summand_count, cfg, field, extra_margin));
  }
  return out;
}

}  // namespace dlagg
