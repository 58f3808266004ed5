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

#ifndef DLAGG_PROTOCOL_ROUNDS_H_
#define DLAGG_PROTOCOL_ROUNDS_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "dlagg/common/sha256.h"
#include "dlagg/protocol/client.h"
#include "dlagg/protocol/config.h"

namespace dlagg {

// Delivery contract the rounds rely on: per-sender FIFO, no duplication,
// stage-atomic dropout, and a ContributorSet for any stage boundary the live
// clients block on.
class RoundTransport {
 public:
  virtual ~RoundTransport() = default;

  // Runs the clients to completion and returns the result every finished
  // client agrees on. Throws the first protocol error, InsufficientSurvivors
  // if the round stalls, or InconsistentResult on disagreement.
  virtual AggregateResult Drive(std::span<const std::unique_ptr<Client>> clients,
                                const RoundContext& ctx) = 0;
};

// SHA-256(master_seed || "client" || i).
Digest ClientSeed(uint64_t master_seed, uint32_t client);

// inputs[i] is client i's real vector of length cfg.m.
AggregateResult RunRound(std::span<const std::vector<double>> inputs,
                         const RoundConfig& cfg, uint64_t master_seed,
                         uint32_t round, RoundTransport& bus);

AggregateResult NvRound(std::span<const std::vector<double>> inputs,
                        const RoundConfig& cfg, uint64_t master_seed,
                        RoundTransport& bus);
AggregateResult LweRound(std::span<const std::vector<double>> inputs,
                         const RoundConfig& cfg, uint64_t master_seed,
                         RoundTransport& bus);
AggregateResult PwRound(std::span<const std::vector<double>> inputs,
                        const RoundConfig& cfg, uint64_t master_seed,
                        RoundTransport& bus);

// Ascending ids whose stage-critical message reached every survivor.
std::vector<uint32_t> ComputeContributorSet(const std::vector<bool>& delivered);

}  // namespace dlagg

#endif  // DLAGG_PROTOCOL_ROUNDS_H_
