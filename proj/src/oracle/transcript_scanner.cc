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

#include "dlagg/oracle/transcript_scanner.h"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "dlagg/protocol/messages.h"

namespace dlagg {
namespace {

constexpr std::array<std::string_view, 4> kSecretNames = {
    "input", "lwe_secret", "dh_key", "personal_seed"};

}  // namespace

std::string_view SecretClassName(SecretClass secret) {
  return kSecretNames[static_cast<size_t>(secret)];
}

uint32_t ScanResult::MaxShares(SecretClass secret) const {
  uint32_t best = 0;
  for (const auto& e : exposures) {
    if (e.secret == secret) best = std::max(best, e.shares_seen);
  }
  return best;
}

ScanResult ScanTranscript(std::span<const TranscriptEntry> transcript,
                          std::span<const uint32_t> coalition,
                          const RoundConfig& cfg,
                          std::span<const std::vector<FieldElement>> encoded_inputs) {
  const std::set<uint32_t> members(coalition.begin(), coalition.end());
  const PrimeField field(cfg.q);
  const uint32_t t = cfg.threshold();
  std::map<std::pair<uint32_t, SecretClass>, std::set<uint64_t>> points;
  std::set<uint32_t> masked_seen;
  ScanResult result;

  auto honest = [&](uint32_t id) { return id != kBusSender && members.count(id) == 0; };

  for (const TranscriptEntry& entry : transcript) {
    if (!entry.delivered || members.count(entry.recipient) == 0 ||
        !honest(entry.sender)) {
      continue;
    }
    ++result.messages_scanned;
    const ProtocolMessage msg = Parse(*entry.wire, entry.recipient, field);
    switch (msg.kind) {
      case MessageKind::kInputShareVector:
        points[{msg.sender, SecretClass::kInput}].insert(ShareOf(msg).x.value);
        break;
      case MessageKind::kKeyShare:
        points[{msg.sender, cfg.protocol == ProtocolKind::kLwe
                                ? SecretClass::kLweSecret
                                : SecretClass::kDhKey}]
            .insert(ShareOf(msg).x.value);
        break;
      case MessageKind::kPersonalSeedShare:
        points[{msg.sender, SecretClass::kPersonalSeed}].insert(ShareOf(msg).x.value);
        break;
      case MessageKind::kUnmaskShare:
        for (const UnmaskEntry& e : std::get<UnmaskShareBody>(msg.payload).entries) {
          if (!honest(e.owner)) continue;
          points[{e.owner, e.secret == SecretKind::kDhKey ? SecretClass::kDhKey
                                                          : SecretClass::kPersonalSeed}]
              .insert(e.share.x.value);
        }
        break;
      case MessageKind::kMaskedVector: {
        masked_seen.insert(msg.sender);
        const auto& values = std::get<MaskedVectorBody>(msg.payload).values;
        if (msg.sender < encoded_inputs.size() && values == encoded_inputs[msg.sender]) {
          result.violations.push_back("masked vector of client " +
                                      std::to_string(msg.sender) +
                                      " equals its encoded input");
        }
        break;
      }
      default:
        break;
    }
  }

  std::map<uint32_t, std::array<uint32_t, 4>> per_owner;
  for (const auto& [key, seen] : points) {
    const auto count = static_cast<uint32_t>(seen.size());
    result.exposures.push_back({key.first, key.second, count});
    per_owner[key.first][static_cast<size_t>(key.second)] = count;
  }
  for (const auto& [owner, counts] : per_owner) {
    const std::string who = "client " + std::to_string(owner);
    if (counts[static_cast<size_t>(SecretClass::kInput)] >= t) {
      result.violations.push_back(who + ": threshold many input shares");
    }
    if (counts[static_cast<size_t>(SecretClass::kLweSecret)] >= t) {
      result.violations.push_back(who + ": threshold many LWE secret shares");
    }
    const bool key_open = counts[static_cast<size_t>(SecretClass::kDhKey)] >= t;
    const bool seed_open = counts[static_cast<size_t>(SecretClass::kPersonalSeed)] >= t;
    if (key_open && seed_open) {
      result.violations.push_back(who + ": DH key and personal seed both opened");
    }
    if (key_open && !cfg.personal_mask && masked_seen.count(owner) != 0) {
      result.violations.push_back(who + ": DH key opened after its masked vector");
    }
  }
  return result;
}

}  // namespace dlagg
