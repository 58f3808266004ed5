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

#include "dlagg/protocol/messages.h"

#include <array>
#include <string>

#include "dlagg/common/error.h"

namespace dlagg {
namespace {

constexpr std::array<std::string_view, kNumMessageKinds> kKindNames = {
    "",
    "PubKey",
    "KeyShare",
    "PersonalSeedShare",
    "InputShareVector",
    "MaskedVector",
    "AggregatedShareVector",
    "SecretSumShare",
    "UnmaskShare",
    "ContributorSet"};

void AppendShareVector(Bytes& out, const ShareVector& sv) {
  AppendU32BE(out, static_cast<uint32_t>(sv.values.size()));
  AppendU32BE(out, sv.vector_length);
  AppendU32BE(out, sv.threshold);
  AppendU32BE(out, sv.pack_width);
  const size_t base = out.size();
  out.resize(base + 8 * sv.values.size());
  for (size_t i = 0; i < sv.values.size(); ++i) {
    StoreU64BE(out.data() + base + 8 * i, sv.values[i].value);
  }
}

ShareVector ReadShareVector(ByteReader& in, uint32_t holder,
                            const PrimeField& field) {
  ShareVector sv;
  const uint32_t chunks = in.ReadU32();
  sv.vector_length = in.ReadU32();
  sv.threshold = in.ReadU32();
  sv.pack_width = in.ReadU32();
  if (sv.pack_width == 0 || sv.threshold == 0 ||
      chunks != ChunkCount(sv.vector_length, sv.pack_width)) {
    Fail(ErrorCode::kMalformedMessage, "inconsistent share vector header");
  }
  if (in.remaining() < size_t{chunks} * 8) {
    Fail(ErrorCode::kMalformedMessage, "share vector truncated");
  }
  sv.x = RecipientPoint(holder, sv.pack_width);
  sv.values.resize(chunks);
  for (auto& v : sv.values) v = ReadElement(in, field);
  return sv;
}

size_t ShareVectorSize(const ShareVector& sv) {
  return kShareVectorHeaderBytes + 8 * sv.values.size();
}

size_t PayloadSize(const ProtocolMessage& msg) {
  return std::visit(
      [](const auto& body) -> size_t {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, PubKeyBody>) {
          return body.residue.size();
        } else if constexpr (std::is_same_v<T, ShareVectorBody>) {
          return ShareVectorSize(body.share);
        } else if constexpr (std::is_same_v<T, MaskedVectorBody>) {
          return 8 * body.values.size();
        } else if constexpr (std::is_same_v<T, UnmaskShareBody>) {
          size_t n = 4;
          for (const auto& e : body.entries) n += 5 + ShareVectorSize(e.share);
          return n;
        } else {
          return 5 + 4 * body.ids.size();
        }
      },
      msg.payload);
}

template <typename T>
const T& BodyAs(const ProtocolMessage& msg) {
  const T* body = std::get_if<T>(&msg.payload);
  if (body == nullptr) {
    Fail(ErrorCode::kMalformedMessage,
         std::string("payload does not match kind ") +
             std::string(MessageKindName(msg.kind)));
  }
  return *body;
}

}  // namespace

std::string_view MessageKindName(MessageKind kind) {
  const auto i = static_cast<size_t>(kind);
  return i < kKindNames.size() ? kKindNames[i] : std::string_view("Unknown");
}

Stage StageOf(ProtocolKind protocol, MessageKind kind) {
  switch (kind) {
    case MessageKind::kPubKey:
    case MessageKind::kPersonalSeedShare:
      return Stage::kKeys;
    case MessageKind::kKeyShare:
      return protocol == ProtocolKind::kLwe ? Stage::kShares : Stage::kKeys;
    case MessageKind::kInputShareVector:
      return Stage::kShares;
    case MessageKind::kMaskedVector:
      return Stage::kMasked;
    case MessageKind::kAggregatedShareVector:
    case MessageKind::kSecretSumShare:
      return Stage::kAggregate;
    case MessageKind::kUnmaskShare:
      return Stage::kUnmask;
    case MessageKind::kContributorSet:
      return Stage::kControl;
  }
  return Stage::kControl;
}

MessageKind CriticalKind(ProtocolKind protocol, Stage stage) {
  switch (stage) {
    case Stage::kKeys:
      return MessageKind::kPubKey;
    case Stage::kShares:
      return protocol == ProtocolKind::kLwe ? MessageKind::kKeyShare
                                            : MessageKind::kInputShareVector;
    case Stage::kMasked:
      return MessageKind::kMaskedVector;
    case Stage::kAggregate:
      return protocol == ProtocolKind::kLwe ? MessageKind::kSecretSumShare
                                            : MessageKind::kAggregatedShareVector;
    case Stage::kUnmask:
      return MessageKind::kUnmaskShare;
    case Stage::kControl:
      break;
  }
  return MessageKind::kContributorSet;
}

bool IsBroadcastKind(MessageKind kind) {
  switch (kind) {
    case MessageKind::kPubKey:
    case MessageKind::kMaskedVector:
    case MessageKind::kAggregatedShareVector:
    case MessageKind::kSecretSumShare:
    case MessageKind::kUnmaskShare:
    case MessageKind::kContributorSet:
      return true;
    default:
      return false;
  }
}

size_t SerializedSize(const ProtocolMessage& msg) {
  return kHeaderBytes + PayloadSize(msg);
}

Bytes Serialize(const ProtocolMessage& msg) {
  Bytes out;
  const size_t payload = PayloadSize(msg);
  out.reserve(kHeaderBytes + payload);
  AppendU8(out, static_cast<uint8_t>(msg.kind));
  AppendU32BE(out, msg.sender);
  AppendU32BE(out, msg.round);
  AppendU32BE(out, static_cast<uint32_t>(payload));
  std::visit(
      [&out](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, PubKeyBody>) {
          AppendBytes(out, body.residue);
        } else if constexpr (std::is_same_v<T, ShareVectorBody>) {
          AppendShareVector(out, body.share);
        } else if constexpr (std::is_same_v<T, MaskedVectorBody>) {
          const size_t base = out.size();
          out.resize(base + 8 * body.values.size());
          for (size_t i = 0; i < body.values.size(); ++i) {
            StoreU64BE(out.data() + base + 8 * i, body.values[i].value);
          }
        } else if constexpr (std::is_same_v<T, UnmaskShareBody>) {
          AppendU32BE(out, static_cast<uint32_t>(body.entries.size()));
          for (const auto& e : body.entries) {
            AppendU32BE(out, e.owner);
            AppendU8(out, static_cast<uint8_t>(e.secret));
            AppendShareVector(out, e.share);
          }
        } else {
          AppendU8(out, static_cast<uint8_t>(body.boundary));
          AppendU32BE(out, static_cast<uint32_t>(body.ids.size()));
          for (uint32_t id : body.ids) AppendU32BE(out, id);
        }
      },
      msg.payload);
  return out;
}

MessageKind PeekKind(std::span<const uint8_t> wire) {
  if (wire.empty()) Fail(ErrorCode::kMalformedMessage, "empty message");
  return static_cast<MessageKind>(wire[0]);
}

ProtocolMessage Parse(std::span<const uint8_t> wire, uint32_t recipient,
                      const PrimeField& field) {
  ByteReader in(wire);
  ProtocolMessage msg;
  const uint8_t kind = in.ReadU8();
  if (kind == 0 || kind >= kNumMessageKinds) {
    Fail(ErrorCode::kMalformedMessage, "unknown message kind");
  }
  msg.kind = static_cast<MessageKind>(kind);
  msg.sender = in.ReadU32();
  msg.round = in.ReadU32();
  const uint32_t length = in.ReadU32();
  if (length != in.remaining()) {
    Fail(ErrorCode::kMalformedMessage, "payload length mismatch");
  }
  const uint32_t holder = IsBroadcastKind(msg.kind) ? msg.sender : recipient;
  switch (msg.kind) {
    case MessageKind::kPubKey: {
      auto bytes = in.ReadBytes(length);
      msg.payload = PubKeyBody{Bytes(bytes.begin(), bytes.end())};
      break;
    }
    case MessageKind::kKeyShare:
    case MessageKind::kPersonalSeedShare:
    case MessageKind::kInputShareVector:
    case MessageKind::kAggregatedShareVector:
    case MessageKind::kSecretSumShare:
      msg.payload = ShareVectorBody{ReadShareVector(in, holder, field)};
      break;
    case MessageKind::kMaskedVector: {
      if (length % 8 != 0) {
        Fail(ErrorCode::kMalformedMessage, "masked vector length not a multiple of 8");
      }
      MaskedVectorBody body;
      body.values.resize(length / 8);
      for (auto& v : body.values) v = ReadElement(in, field);
      msg.payload = std::move(body);
      break;
    }
    case MessageKind::kUnmaskShare: {
      UnmaskShareBody body;
      const uint32_t count = in.ReadU32();
      if (size_t{count} * (5 + kShareVectorHeaderBytes) > in.remaining()) {
        Fail(ErrorCode::kMalformedMessage, "unmask entry count too large");
      }
      body.entries.resize(count);
      for (auto& e : body.entries) {
        e.owner = in.ReadU32();
        const uint8_t secret = in.ReadU8();
        if (secret > 1) Fail(ErrorCode::kMalformedMessage, "unknown secret kind");
        e.secret = static_cast<SecretKind>(secret);
        e.share = ReadShareVector(in, holder, field);
      }
      msg.payload = std::move(body);
      break;
    }
    case MessageKind::kContributorSet: {
      ContributorSetBody body;
      const uint8_t boundary = in.ReadU8();
      if (boundary >= kNumStages) Fail(ErrorCode::kMalformedMessage, "unknown stage");
      body.boundary = static_cast<Stage>(boundary);
      const uint32_t count = in.ReadU32();
      if (size_t{count} * 4 != in.remaining()) {
        Fail(ErrorCode::kMalformedMessage, "contributor count mismatch");
      }
      body.ids.resize(count);
      for (auto& id : body.ids) id = in.ReadU32();
      msg.payload = std::move(body);
      break;
    }
  }
  if (!in.done()) Fail(ErrorCode::kMalformedMessage, "trailing payload bytes");
  return msg;
}

const ShareVector& ShareOf(const ProtocolMessage& msg) {
  return BodyAs<ShareVectorBody>(msg).share;
}

}  // namespace dlagg
