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

#ifndef DLAGG_ORACLE_TRANSCRIPT_SCANNER_H_
#define DLAGG_ORACLE_TRANSCRIPT_SCANNER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dlagg/field/prime_field.h"
#include "dlagg/protocol/config.h"
#include "dlagg/simnet/bus.h"

namespace dlagg {

enum class SecretClass : uint8_t { kInput, kLweSecret, kDhKey, kPersonalSeed };

std::string_view SecretClassName(SecretClass secret);

struct SecretExposure {
  uint32_t owner = 0;
  SecretClass secret = SecretClass::kInput;
  uint32_t shares_seen = 0;  // distinct evaluation points
};

struct ScanResult {
  std::vector<SecretExposure> exposures;  // honest owners only
  std::vector<std::string> violations;
  uint32_t messages_scanned = 0;

  bool clean() const { return violations.empty(); }
  uint32_t MaxShares(SecretClass secret) const;
};

// Pools everything delivered to the coalition from honest clients and checks:
//   - fewer than t shares of any honest input (NV) or LWE secret,
//   - never t or more shares of both the DH key and the personal seed of one
//     honest client, nor of a DH key whose masked vector was seen when no
//     personal mask is in use,
//   - no masked vector equal to its sender's encoded input.
// Shares of a dropped client's DH key or a contributor's personal seed are
// opened by design and only reported.
ScanResult ScanTranscript(std::span<const TranscriptEntry> transcript,
                          std::span<const uint32_t> coalition,
                          const RoundConfig& cfg,
                          std::span<const std::vector<FieldElement>> encoded_inputs);

}  // namespace dlagg

#endif  // DLAGG_ORACLE_TRANSCRIPT_SCANNER_H_
