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

#include "dlagg/simnet/bus.h"

#include <atomic>
#include <exception>
#include <optional>
#include <thread>

#include "dlagg/common/error.h"

namespace dlagg {

struct MessageBus::Step {
  const RoundContext& ctx;
  std::vector<bool> alive;
  std::vector<std::vector<Envelope>> next;
  std::array<std::vector<bool>, kNumMessageKinds> sent_kind;
};

namespace {

bool IsShareKind(MessageKind kind) {
  return kind == MessageKind::kInputShareVector ||
         kind == MessageKind::kKeyShare ||
         kind == MessageKind::kPersonalSeedShare;
}

void CorruptFirstShare(Bytes& wire, const PrimeField& field) {
  const size_t offset = kHeaderBytes + kShareVectorHeaderBytes;
  if (wire.size() < offset + 8) return;
  const uint64_t v = LoadU64BE(wire.data() + offset);
  StoreU64BE(wire.data() + offset, field.AddRaw(v, 1));
}

// Runs body(r) for r in [0, count), on up to `threads` threads.
template <typename F>
void ForEachRecipient(uint32_t count, unsigned threads, F body) {
  if (threads <= 1 || count <= 1) {
    for (uint32_t r = 0; r < count; ++r) body(r);
    return;
  }
  std::atomic<uint32_t> next{0};
  auto worker = [&]() {
    for (uint32_t r = next++; r < count; r = next++) body(r);
  };
  std::vector<std::thread> pool;
  const unsigned used = std::min<unsigned>(threads, count);
  pool.reserve(used - 1);
  for (unsigned i = 1; i < used; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace

MessageBus::MessageBus(BusOptions options) : options_(std::move(options)) {}

void MessageBus::Deliver(uint32_t sender, uint32_t recipient, Stage stage,
                         MessageKind kind,
                         const std::shared_ptr<const Bytes>& wire, Step& step) {
  const uint64_t size = wire->size();
  StageMetrics& st = metrics_.stage(stage);
  const bool live = step.alive[recipient];
  if (live) {
    ++st.messages_delivered;
    st.bytes_delivered += size;
    if (sender != kBusSender) {
      ++metrics_.clients[recipient].messages_received;
      metrics_.clients[recipient].bytes_received += size;
    }
    step.next[recipient].push_back({sender, wire});
  } else {
    ++st.messages_to_dropped;
    st.bytes_to_dropped += size;
  }
  if (options_.record_transcript) {
    transcript_.push_back({sender, recipient, kind, stage, live, wire});
  }
}

void MessageBus::Emit(uint32_t sender, std::vector<Outbound>& outs, Step& step) {
  const ProtocolKind protocol = step.ctx.config.protocol;
  const uint32_t n = step.ctx.n();
  const std::optional<Stage> drop = options_.schedule.StageFor(sender);
  for (Outbound& ob : outs) {
    const MessageKind kind = ob.message.kind;
    const Stage stage = StageOf(protocol, kind);
    if (step.alive[sender] && drop.has_value() && stage >= *drop) {
      step.alive[sender] = false;
    }
    const uint64_t fanout = ob.recipient == kBroadcast ? n - 1 : 1;
    ClientMetrics& cm = metrics_.clients[sender];
    StageMetrics& st = metrics_.stage(stage);
    if (!step.alive[sender]) {
      const uint64_t size = SerializedSize(ob.message);
      cm.suppressed_messages += fanout;
      cm.suppressed_bytes += fanout * size;
      st.suppressed_messages += fanout;
      st.suppressed_bytes += fanout * size;
      continue;
    }
    Bytes wire = Serialize(ob.message);
    if (options_.fault_inject && sender == 0 && IsShareKind(kind)) {
      CorruptFirstShare(wire, step.ctx.field);
    }
    const auto shared = std::make_shared<const Bytes>(std::move(wire));
    const uint64_t size = shared->size();
    const uint64_t payload = size - kHeaderBytes;
    cm.messages_sent += fanout;
    cm.bytes_sent += fanout * size;
    cm.payload_bytes_sent += fanout * payload;
    st.messages_sent += fanout;
    st.bytes_sent += fanout * size;
    st.payload_bytes_sent += fanout * payload;
    auto& km = metrics_.kinds[static_cast<size_t>(kind)];
    km.messages += fanout;
    km.bytes += fanout * size;
    step.sent_kind[static_cast<size_t>(kind)][sender] = true;
    if (ob.recipient == kBroadcast) {
      for (uint32_t j = 0; j < n; ++j) {
        if (j != sender) Deliver(sender, j, stage, kind, shared, step);
      }
    } else {
      if (ob.recipient >= n || ob.recipient == sender) {
        Fail(ErrorCode::kUnexpectedMessage, "message addressed outside the round");
      }
      Deliver(sender, ob.recipient, stage, kind, shared, step);
    }
  }
}

AggregateResult MessageBus::Drive(std::span<const std::unique_ptr<Client>> clients,
                                  const RoundContext& ctx) {
  const uint32_t n = ctx.n();
  if (clients.size() != n) {
    Fail(ErrorCode::kInvalidConfig, "client count differs from the round size");
  }
  metrics_ = Metrics(n);
  transcript_.clear();
  Step step{ctx, std::vector<bool>(n, true), std::vector<std::vector<Envelope>>(n), {}};
  for (auto& v : step.sent_kind) v.assign(n, false);

  std::vector<std::vector<Outbound>> outs(n);
  std::vector<std::exception_ptr> errors(n);
  auto run_phase = [&](auto&& work) {
    ForEachRecipient(n, options_.threads, [&](uint32_t r) {
      if (!step.alive[r]) return;
      const FieldOpCounts before = ThreadFieldOpCounts();
      try {
        work(r);
      } catch (...) {
        errors[r] = std::current_exception();
      }
      metrics_.clients[r].field_ops += ThreadFieldOpCounts() - before;
    });
    for (uint32_t r = 0; r < n; ++r) {
      if (errors[r]) std::rethrow_exception(errors[r]);
    }
    for (uint32_t r = 0; r < n; ++r) {
      Emit(r, outs[r], step);
      outs[r].clear();
    }
  };

  run_phase([&](uint32_t r) { outs[r] = clients[r]->Start(); });

  std::array<bool, kNumStages> issued{};
  while (true) {
    bool pending = false;
    for (const auto& inbox : step.next) pending = pending || !inbox.empty();
    if (pending) {
      std::vector<std::vector<Envelope>> current = std::move(step.next);
      step.next.assign(n, {});
      run_phase([&](uint32_t r) {
        for (const Envelope& env : current[r]) {
          std::vector<Outbound> more =
              clients[r]->OnMessage(Parse(*env.wire, r, ctx.field));
          outs[r].insert(outs[r].end(), std::make_move_iterator(more.begin()),
                         std::make_move_iterator(more.end()));
        }
      });
      continue;
    }

    std::optional<Stage> boundary;
    bool unfinished = false;
    for (uint32_t r = 0; r < n; ++r) {
      if (!step.alive[r] || clients[r]->finished()) continue;
      unfinished = true;
      const std::optional<Stage> b = clients[r]->AwaitedBoundary();
      if (b.has_value() && (!boundary.has_value() || *b < *boundary)) boundary = b;
    }
    if (!unfinished) break;
    if (!boundary.has_value() || issued[static_cast<size_t>(*boundary)]) {
      Fail(ErrorCode::kInsufficientSurvivors, "round stalled with clients waiting");
    }
    issued[static_cast<size_t>(*boundary)] = true;
    const MessageKind critical = CriticalKind(ctx.config.protocol, *boundary);
    std::vector<bool> delivered(n);
    for (uint32_t i = 0; i < n; ++i) {
      delivered[i] = step.sent_kind[static_cast<size_t>(critical)][i];
    }
    ContributorSetBody body{*boundary, ComputeContributorSet(delivered)};
    const auto wire = std::make_shared<const Bytes>(Serialize(
        ProtocolMessage{MessageKind::kContributorSet, kBusSender, ctx.round, body}));
    StageMetrics& control = metrics_.stage(Stage::kControl);
    auto& km = metrics_.kinds[static_cast<size_t>(MessageKind::kContributorSet)];
    for (uint32_t r = 0; r < n; ++r) {
      if (!step.alive[r] || clients[r]->finished() ||
          clients[r]->AwaitedBoundary() != boundary) {
        continue;
      }
      ++control.messages_sent;
      control.bytes_sent += wire->size();
      ++km.messages;
      km.bytes += wire->size();
      Deliver(kBusSender, r, Stage::kControl, MessageKind::kContributorSet, wire,
              step);
    }
  }

  const AggregateResult* agreed = nullptr;
  for (uint32_t r = 0; r < n; ++r) {
    if (!step.alive[r] || !clients[r]->finished()) continue;
    const AggregateResult& res = *clients[r]->result();
    if (agreed == nullptr) {
      agreed = &res;
    } else if (!(res == *agreed)) {
      Fail(ErrorCode::kInconsistentResult,
           "client " + std::to_string(r) + " disagrees on the aggregate");
    }
  }
  if (agreed == nullptr) {
    Fail(ErrorCode::kInsufficientSurvivors, "no client completed the round");
  }
  return *agreed;
}

}  // namespace dlagg
