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

#include "dlagg/protocol/config.h"

#include <array>

#include "dlagg/common/error.h"
#include "dlagg/masking/dh.h"
#include "dlagg/shamir/shamir.h"

namespace dlagg {
namespace {

constexpr std::array<std::string_view, 3> kProtocolNames = {"nv", "lwe", "pw"};
constexpr std::array<std::string_view, kNumStages> kStageNames = {
    "keys", "shares", "masked", "aggregate", "unmask", "control"};

}  // namespace

std::string_view ProtocolName(ProtocolKind kind) {
  return kProtocolNames[static_cast<size_t>(kind)];
}

std::optional<ProtocolKind> ProtocolFromName(std::string_view name) {
  for (size_t i = 0; i < kProtocolNames.size(); ++i) {
    if (kProtocolNames[i] == name) return static_cast<ProtocolKind>(i);
  }
  return std::nullopt;
}

std::string_view StageName(Stage stage) {
  return kStageNames[static_cast<size_t>(stage)];
}

std::optional<Stage> StageFromName(std::string_view name) {
  for (size_t i = 0; i < kStageNames.size(); ++i) {
    if (kStageNames[i] == name) return static_cast<Stage>(i);
  }
  return std::nullopt;
}

const std::vector<Stage>& ProtocolStages(ProtocolKind kind) {
  static const std::vector<Stage> nv = {Stage::kShares, Stage::kAggregate};
  static const std::vector<Stage> lwe = {Stage::kShares, Stage::kMasked,
                                         Stage::kAggregate};
  static const std::vector<Stage> pw = {Stage::kKeys, Stage::kMasked,
                                        Stage::kUnmask};
  switch (kind) {
    case ProtocolKind::kNv:
      return nv;
    case ProtocolKind::kLwe:
      return lwe;
    case ProtocolKind::kPw:
      return pw;
  }
  return nv;
}

uint32_t RoundConfig::threshold() const {
  return t == 0 ? DefaultThreshold(n) : t;
}

uint32_t RoundConfig::effective_pack_width() const {
  return protocol == ProtocolKind::kPw ? 1 : pack_width;
}

uint32_t RoundConfig::required_shares() const {
  return threshold() + effective_pack_width() - 1;
}

void RoundConfig::Validate() const {
  const uint32_t th = threshold();
  if (n < 2) Fail(ErrorCode::kInvalidConfig, "at least 2 clients are required");
  if (th == 0 || th > n) {
    Fail(ErrorCode::kBadThreshold, "threshold must lie in [1, n]");
  }
  if (protocol == ProtocolKind::kPw && (n < 3 || th < 2)) {
    Fail(ErrorCode::kBadThreshold, "pairwise masking needs n >= 3 and t >= 2");
  }
  if (m == 0) Fail(ErrorCode::kInvalidConfig, "model size must be >= 1");
  if (pack_width == 0) Fail(ErrorCode::kBadPacking, "pack width must be >= 1");
  const PrimeField field(q);
  fp.Validate(field, n);
  if (uint64_t{effective_pack_width()} + n >= q) {
    Fail(ErrorCode::kBadPacking, "field too small for the evaluation points");
  }
  if (protocol != ProtocolKind::kPw && n < required_shares()) {
    Fail(ErrorCode::kBadPacking, "packing needs n >= t + k - 1");
  }
  if (protocol == ProtocolKind::kLwe) {
    LweParams params;
    params.m = m;
    params.n_lwe = n_lwe;
    params.sigma = sigma;
    params.Validate(enforce_lwe_min_dimension);
  }
  if (protocol == ProtocolKind::kPw) {
    DhParams::ByName(dh_group).Validate();
    if (field.bit_width() < 3) {
      Fail(ErrorCode::kInvalidConfig, "field too small for key limbs");
    }
  }
}

}  // namespace dlagg
