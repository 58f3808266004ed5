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

#ifndef DLAGG_PROTOCOL_CONFIG_H_
#define DLAGG_PROTOCOL_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlagg/field/fixed_point.h"
#include "dlagg/field/prime_field.h"
#include "dlagg/masking/lwe.h"

namespace dlagg {

enum class ProtocolKind : uint8_t { kNv, kLwe, kPw };

std::string_view ProtocolName(ProtocolKind kind);  // "nv", "lwe", "pw"
std::optional<ProtocolKind> ProtocolFromName(std::string_view name);

// Stage labels, in protocol order. kControl tags bus-issued messages.
enum class Stage : uint8_t {
  kKeys = 0,
  kShares = 1,
  kMasked = 2,
  kAggregate = 3,
  kUnmask = 4,
  kControl = 5,
};

inline constexpr size_t kNumStages = 6;

std::string_view StageName(Stage stage);
std::optional<Stage> StageFromName(std::string_view name);

// NV: shares, aggregate. LWE: shares, masked, aggregate. PW: keys, masked,
// unmask.
const std::vector<Stage>& ProtocolStages(ProtocolKind kind);

struct RoundConfig {
  ProtocolKind protocol = ProtocolKind::kNv;
  uint32_t n = 3;
  uint32_t t = 0;  // 0 selects floor(n / 2) + 1
  uint32_t m = 1;
  uint64_t q = PrimeField::kMersenne61;
  FixedPointConfig fp;
  uint32_t pack_width = 64;
  uint32_t n_lwe = kMinLweDimension;
  double sigma = 3.0;
  bool enforce_lwe_min_dimension = true;
  std::string dh_group = "rfc3526-2048";
  bool personal_mask = true;

  uint32_t threshold() const;
  // Packing width the protocol actually uses (1 for PW).
  uint32_t effective_pack_width() const;
  // Shares needed per reconstruction: t + k - 1 for NV and LWE, t for PW.
  uint32_t required_shares() const;

  // Throws InvalidConfig, BadThreshold or BadPacking.
  void Validate() const;
};

}  // namespace dlagg

#endif  // DLAGG_PROTOCOL_CONFIG_H_
