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

#include "dlagg/protocol/rounds.h"

#include "dlagg/common/error.h"

namespace dlagg {
namespace {

AggregateResult RunAs(ProtocolKind kind,
                      std::span<const std::vector<double>> inputs,
                      const RoundConfig& cfg, uint64_t master_seed,
                      RoundTransport& bus) {
  if (cfg.protocol != kind) {
    Fail(ErrorCode::kInvalidConfig,
         "round configured for " + std::string(ProtocolName(cfg.protocol)));
  }
  return RunRound(inputs, cfg, master_seed, 0, bus);
}

}  // namespace

Digest ClientSeed(uint64_t master_seed, uint32_t client) {
  return DeriveSeed(master_seed, "client", client);
}

AggregateResult RunRound(std::span<const std::vector<double>> inputs,
                         const RoundConfig& cfg, uint64_t master_seed,
                         uint32_t round, RoundTransport& bus) {
  if (inputs.size() != cfg.n) {
    Fail(ErrorCode::kDimensionMismatch, "need one input vector per client");
  }
  const RoundContext ctx = RoundContext::Make(cfg, master_seed, round);
  std::vector<std::unique_ptr<Client>> clients;
  clients.reserve(cfg.n);
  for (uint32_t i = 0; i < cfg.n; ++i) {
    clients.push_back(MakeClient(i, ctx, inputs[i], ClientSeed(master_seed, i)));
  }
  return bus.Drive(clients, ctx);
}

AggregateResult NvRound(std::span<const std::vector<double>> inputs,
                        const RoundConfig& cfg, uint64_t master_seed,
                        RoundTransport& bus) {
  return RunAs(ProtocolKind::kNv, inputs, cfg, master_seed, bus);
}

AggregateResult LweRound(std::span<const std::vector<double>> inputs,
                         const RoundConfig& cfg, uint64_t master_seed,
                         RoundTransport& bus) {
  return RunAs(ProtocolKind::kLwe, inputs, cfg, master_seed, bus);
}

AggregateResult PwRound(std::span<const std::vector<double>> inputs,
                        const RoundConfig& cfg, uint64_t master_seed,
                        RoundTransport& bus) {
  return RunAs(ProtocolKind::kPw, inputs, cfg, master_seed, bus);
}

std::vector<uint32_t> ComputeContributorSet(const std::vector<bool>& delivered) {
  std::vector<uint32_t> ids;
  for (uint32_t i = 0; i < delivered.size(); ++i) {
    if (delivered[i]) ids.push_back(i);
  }
  return ids;
}

}  // namespace dlagg
