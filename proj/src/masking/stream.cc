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

#include "dlagg/masking/stream.h"

#include <string>

#include "dlagg/common/bytes.h"
#include "dlagg/common/error.h"

namespace dlagg {
namespace {

uint64_t PowerOfTwoMod(unsigned exponent, const PrimeField& field) {
  FieldElement r = field.FromUint(1);
  const FieldElement two = field.FromUint(2);
  for (unsigned i = 0; i < exponent; ++i) r.value = field.MulRaw(r.value, two.value);
  return r.value;
}

}  // namespace

MaskStream::MaskStream(const MaskSeed& seed, std::string_view domain_tag,
                       const PrimeField& field)
    : seed_(seed),
      tag_(domain_tag),
      field_(field),
      top_remainder_(PowerOfTwoMod(256, field)) {}

FieldElement MaskStream::At(uint64_t index) {
  const uint64_t q = field_.modulus();
  for (unsigned retry = 0; retry < 256; ++retry) {
    hasher_.Update(seed_.bytes).Update(tag_).UpdateU64BE(index);
    if (retry != 0) {
      const uint8_t r = static_cast<uint8_t>(retry);
      hasher_.Update(std::span(&r, 1));
    }
    const Digest h = hasher_.Final();
    uint64_t words[4];
    for (int w = 0; w < 4; ++w) words[w] = LoadU64BE(h.data() + 8 * w);

    // value >= 2^256 - (2^256 mod q)  <=>  (2^256 - 1 - value) < 2^256 mod q.
    const bool rejected = top_remainder_ != 0 && ~words[0] == 0 &&
                          ~words[1] == 0 && ~words[2] == 0 &&
                          ~words[3] < top_remainder_;
    if (rejected) continue;

    unsigned __int128 r = 0;
    for (uint64_t w : words) {
      r = ((r << 64) | w) % q;
    }
    return {static_cast<uint64_t>(r)};
  }
  Fail(ErrorCode::kInvalidConfig, "mask stream exhausted its retry budget");
}

void MaskStream::Accumulate(std::span<FieldElement> acc, bool subtract,
                            uint64_t first) {
  for (size_t i = 0; i < acc.size(); ++i) {
    const uint64_t v = At(first + i).value;
    acc[i].value = subtract ? field_.SubRaw(acc[i].value, v)
                            : field_.AddRaw(acc[i].value, v);
  }
  ThreadFieldOpCounts().additions += acc.size();
}

std::vector<FieldElement> StreamExpand(const MaskSeed& seed,
                                       std::string_view domain_tag,
                                       uint64_t count, const PrimeField& field) {
  MaskStream stream(seed, domain_tag, field);
  std::vector<FieldElement> out;
  out.reserve(count);
  for (uint64_t i = 0; i < count; ++i) out.push_back(stream.At(i));
  return out;
}

}  // namespace dlagg
