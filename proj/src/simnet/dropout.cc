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

#include "dlagg/simnet/dropout.h"

#include <cmath>
#include <numeric>
#include <vector>

#include "dlagg/common/error.h"
#include "dlagg/common/seeded_random.h"
#include "dlagg/common/sha256.h"

namespace dlagg {

DropoutPolicy DropoutPolicy::FromName(const std::string& name) {
  if (name == "uniform") return Uniform();
  std::optional<Stage> stage = StageFromName(name);
  if (!stage.has_value() || *stage == Stage::kControl) {
    Fail(ErrorCode::kInvalidConfig, "unknown dropout stage '" + name + "'");
  }
  return Fixed(*stage);
}

std::string DropoutPolicy::Label() const {
  return kind == Kind::kUniform ? "uniform" : std::string(StageName(stage));
}

std::optional<Stage> DropoutSchedule::StageFor(uint32_t client) const {
  auto it = drop_stage.find(client);
  if (it == drop_stage.end()) return std::nullopt;
  return it->second;
}

uint32_t DropoutCount(uint32_t n, double rate) {
  return static_cast<uint32_t>(std::floor(rate * n + 1e-9));
}

DropoutSchedule MakeDropoutSchedule(uint64_t master_seed, uint32_t n,
                                    double rate, const DropoutPolicy& policy,
                                    ProtocolKind protocol,
                                    std::optional<uint32_t> threshold) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    Fail(ErrorCode::kInvalidConfig, "dropout rate must lie in [0, 1]");
  }
  const uint32_t count = DropoutCount(n, rate);
  if (threshold.has_value() && count + *threshold > n) {
    Fail(ErrorCode::kTooManyDropouts,
         std::to_string(count) + " dropouts leave fewer than " +
             std::to_string(*threshold) + " of " + std::to_string(n) + " clients");
  }
  SeededRandomSource rng(DeriveSeed(master_seed, "dropout"));
  std::vector<uint32_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  const std::vector<Stage>& stages = ProtocolStages(protocol);
  DropoutSchedule schedule;
  for (uint32_t i = 0; i < count; ++i) {
    const uint32_t pick = i + static_cast<uint32_t>(rng.UniformBelow(n - i));
    std::swap(ids[i], ids[pick]);
    const Stage stage = policy.kind == DropoutPolicy::Kind::kFixed
                            ? policy.stage
                            : stages[rng.UniformBelow(stages.size())];
    schedule.drop_stage.emplace(ids[i], stage);
  }
  return schedule;
}

}  // namespace dlagg
