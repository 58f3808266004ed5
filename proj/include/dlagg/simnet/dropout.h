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

#ifndef DLAGG_SIMNET_DROPOUT_H_
#define DLAGG_SIMNET_DROPOUT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "dlagg/protocol/config.h"

namespace dlagg {

struct DropoutPolicy {
  enum class Kind { kFixed, kUniform };
  Kind kind = Kind::kUniform;
  Stage stage = Stage::kShares;  // kFixed only

  static DropoutPolicy Fixed(Stage stage) { return {Kind::kFixed, stage}; }
  static DropoutPolicy Uniform() { return {Kind::kUniform, Stage::kShares}; }
  // A stage name or "uniform"; throws InvalidConfig otherwise.
  static DropoutPolicy FromName(const std::string& name);
  std::string Label() const;

  friend bool operator==(const DropoutPolicy&, const DropoutPolicy&) = default;
};

// A dropped client sends nothing from the first send attempt at or after its
// stage onward.
struct DropoutSchedule {
  std::map<uint32_t, Stage> drop_stage;

  bool Drops(uint32_t client) const { return drop_stage.count(client) != 0; }
  std::optional<Stage> StageFor(uint32_t client) const;
  size_t size() const { return drop_stage.size(); }

  friend bool operator==(const DropoutSchedule&, const DropoutSchedule&) = default;
};

// floor(rate * n), tolerant of rates such as 0.3 that are inexact in binary.
uint32_t DropoutCount(uint32_t n, double rate);

// Samples floor(rate * n) distinct clients from SHA-256(seed || "dropout")
// and assigns each a stage: the fixed one, or one drawn uniformly from the
// protocol's stages. Throws InvalidConfig unless rate lies in [0, 1], and
// TooManyDropouts if a threshold is given and more than n - t would drop.
DropoutSchedule MakeDropoutSchedule(uint64_t master_seed, uint32_t n,
                                    double rate, const DropoutPolicy& policy,
                                    ProtocolKind protocol,
                                    std::optional<uint32_t> threshold = std::nullopt);

}  // namespace dlagg

#endif  // DLAGG_SIMNET_DROPOUT_H_
