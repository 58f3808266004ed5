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

#ifndef DLAGG_SIMNET_METRICS_H_
#define DLAGG_SIMNET_METRICS_H_

#include <array>
#include <cstdint>
#include <vector>

#include "dlagg/field/prime_field.h"
#include "dlagg/protocol/config.h"
#include "dlagg/protocol/messages.h"

namespace dlagg {

struct ClientMetrics {
  uint64_t messages_sent = 0;
  uint64_t bytes_sent = 0;
  uint64_t payload_bytes_sent = 0;
  uint64_t messages_received = 0;
  uint64_t bytes_received = 0;
  uint64_t suppressed_messages = 0;
  uint64_t suppressed_bytes = 0;
  FieldOpCounts field_ops;

  ClientMetrics& operator+=(const ClientMetrics& o);
  friend bool operator==(const ClientMetrics&, const ClientMetrics&) = default;
};

// Delivered plus to_dropped always equals sent.
struct StageMetrics {
  uint64_t messages_sent = 0;
  uint64_t bytes_sent = 0;
  uint64_t payload_bytes_sent = 0;
  uint64_t messages_delivered = 0;
  uint64_t bytes_delivered = 0;
  uint64_t messages_to_dropped = 0;
  uint64_t bytes_to_dropped = 0;
  uint64_t suppressed_messages = 0;
  uint64_t suppressed_bytes = 0;

  StageMetrics& operator+=(const StageMetrics& o);
  friend bool operator==(const StageMetrics&, const StageMetrics&) = default;
};

struct KindMetrics {
  uint64_t messages = 0;
  uint64_t bytes = 0;

  friend bool operator==(const KindMetrics&, const KindMetrics&) = default;
};

// Client traffic by client, stage and message kind. Bus-issued
// ContributorSet messages appear only under Stage::kControl and the
// ContributorSet kind, never in client totals.
struct Metrics {
  std::vector<ClientMetrics> clients;
  std::array<StageMetrics, kNumStages> stages{};
  std::array<KindMetrics, kNumMessageKinds> kinds{};

  Metrics() = default;
  explicit Metrics(uint32_t n) : clients(n) {}

  ClientMetrics Totals() const;
  StageMetrics& stage(Stage s) { return stages[static_cast<size_t>(s)]; }
  const StageMetrics& stage(Stage s) const {
    return stages[static_cast<size_t>(s)];
  }
  const KindMetrics& kind(MessageKind k) const {
    return kinds[static_cast<size_t>(k)];
  }

  uint64_t total_messages() const { return Totals().messages_sent; }
  uint64_t total_bytes() const { return Totals().bytes_sent; }
  uint64_t control_messages() const { return stage(Stage::kControl).messages_sent; }
  uint64_t control_bytes() const { return stage(Stage::kControl).bytes_sent; }
  // Bytes of every share-carrying kind.
  uint64_t share_bytes() const;
  FieldOpCounts field_ops() const { return Totals().field_ops; }

  // Per stage and per client: sent = delivered + addressed to dropped.
  bool Conserved() const;
  // Equality of everything except field-op tallies.
  bool TrafficEquals(const Metrics& o) const;

  void Merge(const Metrics& o);
};

// Closed-form traffic of a round without dropout and without a
// ContributorSet. Field-op tallies are left at zero.
Metrics MeterExpectations(const RoundConfig& cfg);

}  // namespace dlagg

#endif  // DLAGG_SIMNET_METRICS_H_
