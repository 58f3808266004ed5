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

#include "dlagg/common/error.h"

#include <array>
#include <utility>

namespace dlagg {
namespace {

constexpr std::array<std::pair<ErrorCode, std::string_view>, 21> kNames{{
    {ErrorCode::kZeroInverse, "ZeroInverse"},
    {ErrorCode::kDecodeRange, "DecodeRange"},
    {ErrorCode::kBadThreshold, "BadThreshold"},
    {ErrorCode::kNotEnoughShares, "NotEnoughShares"},
    {ErrorCode::kDuplicatePoint, "DuplicatePoint"},
    {ErrorCode::kPointMismatch, "PointMismatch"},
    {ErrorCode::kBadPacking, "BadPacking"},
    {ErrorCode::kInvalidPublicKey, "InvalidPublicKey"},
    {ErrorCode::kDimensionMismatch, "DimensionMismatch"},
    {ErrorCode::kUnexpectedMessage, "UnexpectedMessage"},
    {ErrorCode::kDuplicateSender, "DuplicateSender"},
    {ErrorCode::kInsufficientSurvivors, "InsufficientSurvivors"},
    {ErrorCode::kInsufficientContributors, "InsufficientContributors"},
    {ErrorCode::kMissingKeyShares, "MissingKeyShares"},
    {ErrorCode::kSafetyViolation, "SafetyViolation"},
    {ErrorCode::kTooManyDropouts, "TooManyDropouts"},
    {ErrorCode::kEmptyContributors, "EmptyContributors"},
    {ErrorCode::kFieldTooLarge, "FieldTooLarge"},
    {ErrorCode::kMalformedMessage, "MalformedMessage"},
    {ErrorCode::kInvalidConfig, "InvalidConfig"},
    {ErrorCode::kInconsistentResult, "InconsistentResult"},
}};

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "Unknown";
}

std::optional<ErrorCode> ErrorCodeFromName(std::string_view name) {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + detail),
      code_(code) {}

void Fail(ErrorCode code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace dlagg
