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

#ifndef DLAGG_COMMON_SEEDED_RANDOM_H_
#define DLAGG_COMMON_SEEDED_RANDOM_H_

#include <cstdint>
#include <span>

#include "dlagg/common/sha256.h"
#include "dlagg/field/prime_field.h"

namespace dlagg {

// Deterministic random source: a SHA-256 counter stream,
// block_c = SHA-256(seed || "rng" || stream as 4-byte BE || c as 8-byte BE).
// Identical (seed, stream) pairs yield identical sequences on every platform.
class SeededRandomSource {
 public:
  explicit SeededRandomSource(const Digest& seed, uint32_t stream = 0);

  uint64_t NextU64();
  void FillBytes(std::span<uint8_t> out);

  // Uniform in [0, bound) by rejection; bound > 0.
  uint64_t UniformBelow(uint64_t bound);
  FieldElement UniformElement(const PrimeField& field);
  // Uniform in [0, 1) with 53 random bits.
  double UniformDouble();
  // Standard normal via Box-Muller; caches the second variate.
  double Gaussian();

 private:
  void Refill();

  Digest seed_;
  uint32_t stream_;
  uint64_t counter_ = 0;
  Digest block_{};
  size_t offset_ = sizeof(Digest);
  bool has_spare_ = false;
  double spare_ = 0.0;
  Sha256 hasher_;
};

}  // namespace dlagg

#endif  // DLAGG_COMMON_SEEDED_RANDOM_H_
