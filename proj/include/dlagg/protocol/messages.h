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

#ifndef DLAGG_PROTOCOL_MESSAGES_H_
#define DLAGG_PROTOCOL_MESSAGES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "dlagg/common/bytes.h"
#include "dlagg/field/prime_field.h"
#include "dlagg/protocol/config.h"
#include "dlagg/shamir/packed.h"

namespace dlagg {

enum class MessageKind : uint8_t {
  kPubKey = 1,
  kKeyShare = 2,
  kPersonalSeedShare = 3,
  kInputShareVector = 4,
  kMaskedVector = 5,
  kAggregatedShareVector = 6,
  kSecretSumShare = 7,
  kUnmaskShare = 8,
  kContributorSet = 9,
};

inline constexpr size_t kNumMessageKinds = 10;  // indexable by kind value
inline constexpr uint32_t kBusSender = 0xFFFFFFFF;
inline constexpr size_t kHeaderBytes = 13;
inline constexpr size_t kShareVectorHeaderBytes = 16;

std::string_view MessageKindName(MessageKind kind);

// Stage whose sends carry this kind under the given protocol.
Stage StageOf(ProtocolKind protocol, MessageKind kind);
// The message whose delivery defines membership at a stage boundary.
MessageKind CriticalKind(ProtocolKind protocol, Stage stage);

// True for kinds sent to every peer; their share point is the sender's.
bool IsBroadcastKind(MessageKind kind);

struct PubKeyBody {
  Bytes residue;  // fixed width
  friend bool operator==(const PubKeyBody&, const PubKeyBody&) = default;
};

struct ShareVectorBody {
  ShareVector share;
  friend bool operator==(const ShareVectorBody&, const ShareVectorBody&) = default;
};

struct MaskedVectorBody {
  std::vector<FieldElement> values;
  friend bool operator==(const MaskedVectorBody&, const MaskedVectorBody&) = default;
};

enum class SecretKind : uint8_t { kDhKey = 0, kPersonalSeed = 1 };

struct UnmaskEntry {
  uint32_t owner = 0;
  SecretKind secret = SecretKind::kDhKey;
  ShareVector share;
  friend bool operator==(const UnmaskEntry&, const UnmaskEntry&) = default;
};

struct UnmaskShareBody {
  std::vector<UnmaskEntry> entries;
  friend bool operator==(const UnmaskShareBody&, const UnmaskShareBody&) = default;
};

struct ContributorSetBody {
  Stage boundary = Stage::kShares;
  std::vector<uint32_t> ids;  // ascending
  friend bool operator==(const ContributorSetBody&, const ContributorSetBody&) = default;
};

using MessagePayload =
    std::variant<PubKeyBody, ShareVectorBody, MaskedVectorBody,
                 UnmaskShareBody, ContributorSetBody>;

struct ProtocolMessage {
  MessageKind kind = MessageKind::kPubKey;
  uint32_t sender = 0;
  uint32_t round = 0;
  MessagePayload payload;

  friend bool operator==(const ProtocolMessage&, const ProtocolMessage&) = default;
};

// Wire layout: kind (1) | sender (4) | round (4) | payload length (4) |
// payload, integers big-endian. Share vectors carry chunk count, vector
// length, t and k (4 bytes each) followed by 8-byte values; their evaluation
// point is implied by the recipient of a direct send or by the sender of a
// broadcast.
Bytes Serialize(const ProtocolMessage& msg);
size_t SerializedSize(const ProtocolMessage& msg);

// Throws MalformedMessage on truncation, trailing bytes, out-of-range field
// elements, or a payload that does not match the kind.
ProtocolMessage Parse(std::span<const uint8_t> wire, uint32_t recipient,
                      const PrimeField& field);

// Header peek without parsing the payload.
MessageKind PeekKind(std::span<const uint8_t> wire);

const ShareVector& ShareOf(const ProtocolMessage& msg);

}  // namespace dlagg

#endif  // DLAGG_PROTOCOL_MESSAGES_H_
