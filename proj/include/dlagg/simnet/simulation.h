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

#ifndef DLAGG_SIMNET_SIMULATION_H_
#define DLAGG_SIMNET_SIMULATION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dlagg/common/error.h"
#include "dlagg/protocol/client.h"
#include "dlagg/protocol/config.h"
#include "dlagg/simnet/bus.h"
#include "dlagg/simnet/dropout.h"
#include "dlagg/simnet/metrics.h"

namespace dlagg {

struct SimConfig {
  RoundConfig round;
  uint64_t master_seed = 0;
  double dropout_rate = 0.0;
  DropoutPolicy dropout_policy;
  uint32_t rounds = 1;
  unsigned threads = 1;
  bool fault_inject = false;
  bool record_transcript = false;
  // Shrinks the NV/LWE pack width to max(1, min(k, n - t + 1 - dropouts)).
  bool clamp_pack_width = true;

  // Throws InvalidConfig unless rate lies in [0, 1] and rounds >= 1.
  void Validate() const;
};

// The round configuration a simulation actually runs: explicit threshold
// and, when clamping, the reduced pack width.
RoundConfig ResolveRoundConfig(const SimConfig& cfg);

// Client i's input in round r: uniform in [-1, 1]^m from
// SHA-256(master_seed || "inputs" || i), stream r.
std::vector<std::vector<double>> SyntheticInputs(uint64_t master_seed,
                                                 uint32_t round, uint32_t n,
                                                 uint32_t m);

struct RoundOutcome {
  std::optional<AggregateResult> result;
  std::optional<ErrorCode> failure;
  std::string failure_detail;
  Metrics metrics;
  std::vector<TranscriptEntry> transcript;
  std::vector<std::vector<FieldElement>> encoded_inputs;

  bool ok() const { return result.has_value(); }
};

// One round over caller-supplied inputs. Protocol errors are captured in the
// outcome.
RoundOutcome SimulateRound(const SimConfig& cfg,
                           std::span<const std::vector<double>> inputs,
                           uint32_t round_index);

struct SimReport {
  SimConfig config;
  RoundConfig resolved;
  DropoutSchedule schedule;
  std::optional<AggregateResult> result;  // last completed round
  std::optional<ErrorCode> failure;
  std::string failure_detail;
  Metrics metrics;  // summed over rounds
  uint32_t rounds_completed = 0;
  double wall_time_s = 0.0;

  bool ok() const { return !failure.has_value(); }
};

// Runs cfg.rounds rounds over synthetic inputs, stopping at the first failed
// round. Never throws; configuration errors are reported as failures too.
SimReport RunSimulation(const SimConfig& cfg);

}  // namespace dlagg

#endif  // DLAGG_SIMNET_SIMULATION_H_
