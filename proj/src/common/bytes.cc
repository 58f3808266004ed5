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

#include "dlagg/common/bytes.h"

#include <string>

#include "dlagg/common/error.h"

namespace dlagg {

void AppendU8(Bytes& out, uint8_t v) { out.push_back(v); }

void AppendU32BE(Bytes& out, uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<uint8_t>(v >> shift));
  }
}

void AppendU64BE(Bytes& out, uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<uint8_t>(v >> shift));
  }
}

void AppendBytes(Bytes& out, std::span<const uint8_t> data) {
  out.insert(out.end(), data.begin(), data.end());
}

uint32_t LoadU32BE(const uint8_t* p) {
  return (uint32_t{p[0]} << 24) | (uint32_t{p[1]} << 16) |
         (uint32_t{p[2]} << 8) | uint32_t{p[3]};
}

uint64_t LoadU64BE(const uint8_t* p) {
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
  return v;
}

void StoreU64BE(uint8_t* p, uint64_t v) {
  for (int i = 7; i >= 0; --i) {
    p[i] = static_cast<uint8_t>(v);
    v >>= 8;
  }
}

void ByteReader::Require(size_t n) const {
  if (remaining() < n) {
    Fail(ErrorCode::kMalformedMessage,
         "truncated input: need " + std::to_string(n) + " bytes, have " +
             std::to_string(remaining()));
  }
}

uint8_t ByteReader::ReadU8() {
  Require(1);
  return data_[pos_++];
}

uint32_t ByteReader::ReadU32() {
  Require(4);
  uint32_t v = LoadU32BE(data_.data() + pos_);
  pos_ += 4;
  return v;
}

uint64_t ByteReader::ReadU64() {
  Require(8);
  uint64_t v = LoadU64BE(data_.data() + pos_);
  pos_ += 8;
  return v;
}

std::span<const uint8_t> ByteReader::ReadBytes(size_t n) {
  Require(n);
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

}  // namespace dlagg
