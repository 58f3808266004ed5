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

#ifndef DLAGG_SIMNET_BUS_H_
#define DLAGG_SIMNET_BUS_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "dlagg/common/bytes.h"
#include "dlagg/protocol/client.h"
#include "dlagg/protocol/rounds.h"
#include "dlagg/simnet/dropout.h"
#include "dlagg/simnet/metrics.h"

namespace dlagg {

struct BusOptions {
  DropoutSchedule schedule;
  unsigned threads = 1;
  bool record_transcript = false;
  // Adds 1 to the first share value of every share message from client 0.
  bool fault_inject = false;
};

struct TranscriptEntry {
  uint32_t sender = 0;  // kBusSender for ContributorSet
  uint32_t recipient = 0;
  MessageKind kind = MessageKind::kPubKey;
  Stage stage = Stage::kControl;
  bool delivered = true;  // false if the recipient had dropped
  std::shared_ptr<const Bytes> wire;
};

// Bulk-synchronous, logical-time bus. Each superstep delivers every pending
// message, recipients in id order and per-sender FIFO; replies are emitted at
// the end of the superstep in recipient order, so parallel and sequential
// execution coincide. At quiescence, clients blocked on a stage boundary
// receive a ContributorSet listing the senders of that stage's critical
// message. Every message is serialized and parsed on the way through.
class MessageBus : public RoundTransport {
 public:
  explicit MessageBus(BusOptions options);

  AggregateResult Drive(std::span<const std::unique_ptr<Client>> clients,
                        const RoundContext& ctx) override;

  const Metrics& metrics() const { return metrics_; }
  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }

 private:
  struct Envelope {
    uint32_t sender;
    std::shared_ptr<const Bytes> wire;
  };
  struct Step;

  void Emit(uint32_t sender, std::vector<Outbound>& outs, Step& step);
  void Deliver(uint32_t sender, uint32_t recipient, Stage stage,
               MessageKind kind, const std::shared_ptr<const Bytes>& wire,
               Step& step);

  BusOptions options_;
  Metrics metrics_;
  std::vector<TranscriptEntry> transcript_;
};

}  // namespace dlagg

#endif  // DLAGG_SIMNET_BUS_H_
