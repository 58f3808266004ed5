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

#ifndef DLAGG_PROTOCOL_CLIENT_H_
#define DLAGG_PROTOCOL_CLIENT_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "dlagg/common/seeded_random.h"
#include "dlagg/common/sha256.h"
#include "dlagg/field/prime_field.h"
#include "dlagg/masking/dh.h"
#include "dlagg/masking/lwe.h"
#include "dlagg/protocol/config.h"
#include "dlagg/protocol/messages.h"

namespace dlagg {

inline constexpr uint32_t kBroadcast = 0xFFFFFFFF;

struct Outbound {
  uint32_t recipient = kBroadcast;  // kBroadcast: every other client
  ProtocolMessage message;
};

struct AggregateResult {
  std::vector<double> average;
  std::vector<FieldElement> field_sum;  // decoded aggregate, before division
  std::vector<uint32_t> contributors;   // ascending
  bool exact = true;
  double noise_sigma_effective = 0.0;  // LWE only, field units

  friend bool operator==(const AggregateResult&, const AggregateResult&) = default;
};

// Read-only parameters shared by every client of one round.
struct RoundContext {
  RoundConfig config;
  PrimeField field;
  uint32_t round = 0;
  DhParams dh;                                // PW only
  std::shared_ptr<const LweMatrix> matrix;    // LWE only

  // The LWE matrix seed is SHA-256(master_seed || "matrix").
  static RoundContext Make(const RoundConfig& config, uint64_t master_seed,
                           uint32_t round);

  uint32_t n() const { return config.n; }
  uint32_t t() const { return config.threshold(); }
  uint32_t k() const { return config.effective_pack_width(); }
};

// Event-driven client. Start() emits the opening sends; OnMessage() consumes
// one delivered message and returns whatever it unlocks. Messages for a later
// stage are buffered; the contributor set of a stage is either every client
// (once all n have been heard from) or the bus-issued ContributorSet.
class Client {
 public:
  Client(uint32_t id, const RoundContext& ctx, std::span<const double> input,
         const Digest& seed);
  virtual ~Client() = default;

  Client(const Client&) = delete;
  Client& operator=(const Client&) = delete;

  uint32_t id() const { return id_; }
  const std::vector<FieldElement>& encoded_input() const { return input_; }

  virtual std::vector<Outbound> Start() = 0;

  // Throws UnexpectedMessage for a wrong round, kind or stage and
  // DuplicateSender for a repeated (kind, sender).
  std::vector<Outbound> OnMessage(const ProtocolMessage& msg);

  // The stage boundary this client is blocked on, if any.
  virtual std::optional<Stage> AwaitedBoundary() const = 0;

  bool finished() const { return result_.has_value(); }
  const std::optional<AggregateResult>& result() const { return result_; }

 protected:
  virtual std::vector<Outbound> Handle(const ProtocolMessage& msg) = 0;

  ProtocolMessage MakeMessage(MessageKind kind, MessagePayload payload) const;
  // Decodes the field sum of |contributors| inputs and divides by the count.
  void Finish(std::vector<FieldElement> field_sum,
              std::vector<uint32_t> contributors, uint64_t noise_margin = 0,
              double noise_sigma = 0.0);
  // Validates a share vector header against what this round expects.
  void CheckShape(const ShareVector& sv, uint32_t length, uint32_t k) const;
  [[noreturn]] void Unexpected(const ProtocolMessage& msg) const;

  const RoundContext& ctx_;
  const PrimeField& field_;
  const uint32_t id_;
  SeededRandomSource rng_;
  std::vector<FieldElement> input_;

 private:
  std::set<std::pair<uint8_t, uint32_t>> seen_;
  std::optional<AggregateResult> result_;
};

std::unique_ptr<Client> MakeClient(uint32_t id, const RoundContext& ctx,
                                   std::span<const double> input,
                                   const Digest& seed);

// Ascending ids of the clients in a per-sender map.
template <typename V>
std::vector<uint32_t> KeysOf(const std::map<uint32_t, V>& m) {
  std::vector<uint32_t> ids;
  ids.reserve(m.size());
  for (const auto& [id, unused] : m) ids.push_back(id);
  return ids;
}

}  // namespace dlagg

#endif  // DLAGG_PROTOCOL_CLIENT_H_
