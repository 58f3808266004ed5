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

#ifndef DLAGG_COMMON_BYTES_H_
#define DLAGG_COMMON_BYTES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dlagg {

using Bytes = std::vector<uint8_t>;

void AppendU8(Bytes& out, uint8_t v);
void AppendU32BE(Bytes& out, uint32_t v);
void AppendU64BE(Bytes& out, uint64_t v);
void AppendBytes(Bytes& out, std::span<const uint8_t> data);

uint32_t LoadU32BE(const uint8_t* p);
uint64_t LoadU64BE(const uint8_t* p);
void StoreU64BE(uint8_t* p, uint64_t v);

// Bounds-checked big-endian cursor. Throws MalformedMessage on overrun.
class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

  uint8_t ReadU8();
  uint32_t ReadU32();
  uint64_t ReadU64();
  std::span<const uint8_t> ReadBytes(size_t n);

  size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }

 private:
  void Require(size_t n) const;

  std::span<const uint8_t> data_;
  size_t pos_ = 0;
};

}  // namespace dlagg

#endif  // DLAGG_COMMON_BYTES_H_
