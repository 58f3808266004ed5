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

#include "dlagg/simnet/simulation.h"

#include <algorithm>
#include <chrono>

#include "dlagg/common/seeded_random.h"
#include "dlagg/common/sha256.h"
#include "dlagg/field/fixed_point.h"
#include "dlagg/protocol/rounds.h"

namespace dlagg {
namespace {

DropoutSchedule ScheduleFor(const SimConfig& cfg) {
  return MakeDropoutSchedule(cfg.master_seed, cfg.round.n, cfg.dropout_rate,
                             cfg.dropout_policy, cfg.round.protocol);
}

}  // namespace

void SimConfig::Validate() const {
  if (!(dropout_rate >= 0.0 && dropout_rate <= 1.0)) {
    Fail(ErrorCode::kInvalidConfig, "dropout rate must lie in [0, 1]");
  }
  if (rounds == 0) Fail(ErrorCode::kInvalidConfig, "rounds must be >= 1");
  if (threads == 0) Fail(ErrorCode::kInvalidConfig, "threads must be >= 1");
}

RoundConfig ResolveRoundConfig(const SimConfig& cfg) {
  RoundConfig r = cfg.round;
  r.t = r.threshold();
  if (cfg.clamp_pack_width && r.protocol != ProtocolKind::kPw) {
    const int64_t room = int64_t{r.n} - r.t + 1 -
                         static_cast<int64_t>(DropoutCount(r.n, cfg.dropout_rate));
    r.pack_width = static_cast<uint32_t>(
        std::max<int64_t>(1, std::min<int64_t>(r.pack_width, room)));
  }
  return r;
}

std::vector<std::vector<double>> SyntheticInputs(uint64_t master_seed,
                                                 uint32_t round, uint32_t n,
                                                 uint32_t m) {
  std::vector<std::vector<double>> inputs(n, std::vector<double>(m));
  for (uint32_t i = 0; i < n; ++i) {
    SeededRandomSource rng(DeriveSeed(master_seed, "inputs", i), round);
    for (double& v : inputs[i]) v = 2.0 * rng.UniformDouble() - 1.0;
  }
  return inputs;
}

RoundOutcome SimulateRound(const SimConfig& cfg,
                           std::span<const std::vector<double>> inputs,
                           uint32_t round_index) {
  RoundOutcome outcome;
  try {
    cfg.Validate();
    const RoundConfig resolved = ResolveRoundConfig(cfg);
    BusOptions options;
    options.schedule = ScheduleFor(cfg);
    options.threads = cfg.threads;
    options.record_transcript = cfg.record_transcript;
    options.fault_inject = cfg.fault_inject;
    MessageBus bus(std::move(options));
    try {
      if (cfg.record_transcript) {
        const PrimeField field(resolved.q);
        for (const auto& w : inputs) {
          outcome.encoded_inputs.push_back(EncodeFixedPoint(w, resolved.fp, field));
        }
      }
      outcome.result = RunRound(inputs, resolved, cfg.master_seed, round_index, bus);
    } catch (const Error& e) {
      outcome.failure = e.code();
      outcome.failure_detail = e.what();
    }
    outcome.metrics = bus.metrics();
    if (cfg.record_transcript) outcome.transcript = bus.transcript();
  } catch (const Error& e) {
    outcome.failure = e.code();
    outcome.failure_detail = e.what();
  }
  return outcome;
}

SimReport RunSimulation(const SimConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  SimReport report;
  report.config = cfg;
  report.resolved = cfg.round;
  report.metrics = Metrics(cfg.round.n);
  try {
    cfg.Validate();
    report.resolved = ResolveRoundConfig(cfg);
    report.resolved.Validate();
    report.schedule = ScheduleFor(cfg);
    for (uint32_t r = 0; r < cfg.rounds; ++r) {
      const auto inputs = SyntheticInputs(cfg.master_seed, r, cfg.round.n, cfg.round.m);
      RoundOutcome outcome = SimulateRound(cfg, inputs, r);
      report.metrics.Merge(outcome.metrics);
      if (!outcome.ok()) {
        report.failure = outcome.failure;
        report.failure_detail = outcome.failure_detail;
        report.result.reset();
        break;
      }
      report.result = std::move(outcome.result);
      ++report.rounds_completed;
    }
  } catch (const Error& e) {
    report.failure = e.code();
    report.failure_detail = e.what();
  } catch (const std::exception& e) {
    report.failure = ErrorCode::kInvalidConfig;
    report.failure_detail = e.what();
  }
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace dlagg
