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

#include "dlagg/common/seeded_random.h"

#include <cmath>
#include <numbers>

#include "dlagg/common/bytes.h"

namespace dlagg {

SeededRandomSource::SeededRandomSource(const Digest& seed, uint32_t stream)
    : seed_(seed), stream_(stream) {}

void SeededRandomSource::Refill() {
  block_ = hasher_.Update(seed_)
               .Update("rng")
               .UpdateU32BE(stream_)
               .UpdateU64BE(counter_++)
               .Final();
  offset_ = 0;
}

uint64_t SeededRandomSource::NextU64() {
  if (offset_ + 8 > block_.size()) Refill();
  uint64_t v = LoadU64BE(block_.data() + offset_);
  offset_ += 8;
  return v;
}

void SeededRandomSource::FillBytes(std::span<uint8_t> out) {
  for (uint8_t& b : out) {
    if (offset_ >= block_.size()) Refill();
    b = block_[offset_++];
  }
}

uint64_t SeededRandomSource::UniformBelow(uint64_t bound) {
  // Accept v < limit, where limit is the largest multiple of bound <= 2^64.
  const uint64_t rem = (0 - bound) % bound;  // 2^64 mod bound
  while (true) {
    uint64_t v = NextU64();
    if (rem == 0 || v < 0 - rem) return v % bound;
  }
}

FieldElement SeededRandomSource::UniformElement(const PrimeField& field) {
  return {UniformBelow(field.modulus())};
}

double SeededRandomSource::UniformDouble() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

double SeededRandomSource::Gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] keeps the logarithm finite.
  double u1 = 1.0 - UniformDouble();
  double u2 = UniformDouble();
  double radius = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace dlagg
