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

#include "dlagg/simnet/metrics.h"

#include "dlagg/masking/dh.h"
#include "dlagg/shamir/packed.h"

namespace dlagg {
namespace {

struct KindTraffic {
  MessageKind kind;
  uint64_t bytes;  // one message, header included
};

}  // namespace

ClientMetrics& ClientMetrics::operator+=(const ClientMetrics& o) {
  messages_sent += o.messages_sent;
  bytes_sent += o.bytes_sent;
  payload_bytes_sent += o.payload_bytes_sent;
  messages_received += o.messages_received;
  bytes_received += o.bytes_received;
  suppressed_messages += o.suppressed_messages;
  suppressed_bytes += o.suppressed_bytes;
  field_ops += o.field_ops;
  return *this;
}

StageMetrics& StageMetrics::operator+=(const StageMetrics& o) {
  messages_sent += o.messages_sent;
  bytes_sent += o.bytes_sent;
  payload_bytes_sent += o.payload_bytes_sent;
  messages_delivered += o.messages_delivered;
  bytes_delivered += o.bytes_delivered;
  messages_to_dropped += o.messages_to_dropped;
  bytes_to_dropped += o.bytes_to_dropped;
  suppressed_messages += o.suppressed_messages;
  suppressed_bytes += o.suppressed_bytes;
  return *this;
}

ClientMetrics Metrics::Totals() const {
  ClientMetrics total;
  for (const auto& c : clients) total += c;
  return total;
}

uint64_t Metrics::share_bytes() const {
  uint64_t total = 0;
  for (MessageKind k :
       {MessageKind::kKeyShare, MessageKind::kPersonalSeedShare,
        MessageKind::kInputShareVector, MessageKind::kAggregatedShareVector,
        MessageKind::kSecretSumShare, MessageKind::kUnmaskShare}) {
    total += kind(k).bytes;
  }
  return total;
}

bool Metrics::Conserved() const {
  StageMetrics client_stages;
  for (size_t s = 0; s < kNumStages; ++s) {
    const StageMetrics& st = stages[s];
    if (st.messages_sent != st.messages_delivered + st.messages_to_dropped ||
        st.bytes_sent != st.bytes_delivered + st.bytes_to_dropped) {
      return false;
    }
    if (s != static_cast<size_t>(Stage::kControl)) client_stages += st;
  }
  const ClientMetrics total = Totals();
  return total.messages_sent == client_stages.messages_sent &&
         total.bytes_sent == client_stages.bytes_sent &&
         total.bytes_received == client_stages.bytes_delivered &&
         total.messages_received == client_stages.messages_delivered &&
         total.suppressed_bytes == client_stages.suppressed_bytes;
}

bool Metrics::TrafficEquals(const Metrics& o) const {
  if (clients.size() != o.clients.size() || stages != o.stages ||
      kinds != o.kinds) {
    return false;
  }
  for (size_t i = 0; i < clients.size(); ++i) {
    ClientMetrics a = clients[i];
    ClientMetrics b = o.clients[i];
    a.field_ops = b.field_ops = FieldOpCounts{};
    if (!(a == b)) return false;
  }
  return true;
}

void Metrics::Merge(const Metrics& o) {
  if (clients.size() < o.clients.size()) clients.resize(o.clients.size());
  for (size_t i = 0; i < o.clients.size(); ++i) clients[i] += o.clients[i];
  for (size_t s = 0; s < kNumStages; ++s) stages[s] += o.stages[s];
  for (size_t k = 0; k < kNumMessageKinds; ++k) {
    kinds[k].messages += o.kinds[k].messages;
    kinds[k].bytes += o.kinds[k].bytes;
  }
}

Metrics MeterExpectations(const RoundConfig& cfg) {
  const uint64_t n = cfg.n;
  const uint64_t k = cfg.effective_pack_width();
  const uint64_t sv = kHeaderBytes + kShareVectorHeaderBytes;
  const uint64_t masked = kHeaderBytes + 8 * uint64_t{cfg.m};
  std::vector<KindTraffic> per_peer;
  switch (cfg.protocol) {
    case ProtocolKind::kNv: {
      const uint64_t chunks = ChunkCount(cfg.m, static_cast<uint32_t>(k));
      per_peer = {{MessageKind::kInputShareVector, sv + 8 * chunks},
                  {MessageKind::kAggregatedShareVector, sv + 8 * chunks}};
      break;
    }
    case ProtocolKind::kLwe: {
      const uint64_t chunks = ChunkCount(cfg.n_lwe, static_cast<uint32_t>(k));
      per_peer = {{MessageKind::kKeyShare, sv + 8 * chunks},
                  {MessageKind::kMaskedVector, masked},
                  {MessageKind::kSecretSumShare, sv + 8 * chunks}};
      break;
    }
    case ProtocolKind::kPw: {
      const DhParams dh = DhParams::ByName(cfg.dh_group);
      const unsigned limb_bits = PrimeField(cfg.q).bit_width() - 1;
      const uint64_t key_limbs = LimbCount(dh.secret_key_bits(), limb_bits);
      const uint64_t seed_limbs = LimbCount(8 * sizeof(Digest), limb_bits);
      per_peer.push_back({MessageKind::kPubKey, kHeaderBytes + dh.residue_width()});
      per_peer.push_back({MessageKind::kKeyShare, sv + 8 * key_limbs});
      uint64_t unmask = kHeaderBytes + 4;
      if (cfg.personal_mask) {
        per_peer.push_back({MessageKind::kPersonalSeedShare, sv + 8 * seed_limbs});
        unmask += n * (5 + kShareVectorHeaderBytes + 8 * seed_limbs);
      }
      per_peer.push_back({MessageKind::kMaskedVector, masked});
      per_peer.push_back({MessageKind::kUnmaskShare, unmask});
      break;
    }
  }

  Metrics out(cfg.n);
  for (const KindTraffic& kt : per_peer) {
    const uint64_t peers = n - 1;
    const uint64_t messages = n * peers;
    StageMetrics& st = out.stage(StageOf(cfg.protocol, kt.kind));
    st.messages_sent += messages;
    st.bytes_sent += messages * kt.bytes;
    st.payload_bytes_sent += messages * (kt.bytes - kHeaderBytes);
    st.messages_delivered += messages;
    st.bytes_delivered += messages * kt.bytes;
    auto& kind = out.kinds[static_cast<size_t>(kt.kind)];
    kind.messages += messages;
    kind.bytes += messages * kt.bytes;
    for (ClientMetrics& c : out.clients) {
      c.messages_sent += peers;
      c.bytes_sent += peers * kt.bytes;
      c.payload_bytes_sent += peers * (kt.bytes - kHeaderBytes);
      c.messages_received += peers;
      c.bytes_received += peers * kt.bytes;
    }
  }
  return out;
}

}  // namespace dlagg
