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

#ifndef DLAGG_COMMON_SHA256_H_
#define DLAGG_COMMON_SHA256_H_

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>

namespace dlagg {

using Digest = std::array<uint8_t, 32>;

// Incremental SHA-256. Reusable: Final() resets the state.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(Sha256&&) noexcept;
  Sha256& operator=(Sha256&&) noexcept;

  Sha256& Update(std::span<const uint8_t> data);
  Sha256& Update(std::string_view text);
  Sha256& UpdateU32BE(uint32_t v);
  Sha256& UpdateU64BE(uint64_t v);
  Digest Final();

  static Digest Hash(std::span<const uint8_t> data);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// SHA-256(master_seed as 8-byte BE || label || index as 4-byte BE).
Digest DeriveSeed(uint64_t master_seed, std::string_view label,
                  uint32_t index);
// SHA-256(master_seed as 8-byte BE || label).
Digest DeriveSeed(uint64_t master_seed, std::string_view label);

}  // namespace dlagg

#endif  // DLAGG_COMMON_SHA256_H_
