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

#ifndef DLAGG_COMMON_ERROR_H_
#define DLAGG_COMMON_ERROR_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dlagg {

// Failure categories shared by every module. The names are part of the
// report and CLI output format.
enum class ErrorCode {
  kZeroInverse,
  kDecodeRange,
  kBadThreshold,
  kNotEnoughShares,
  kDuplicatePoint,
  kPointMismatch,
  kBadPacking,
  kInvalidPublicKey,
  kDimensionMismatch,
  kUnexpectedMessage,
  kDuplicateSender,
  kInsufficientSurvivors,
  kInsufficientContributors,
  kMissingKeyShares,
  kSafetyViolation,
  kTooManyDropouts,
  kEmptyContributors,
  kFieldTooLarge,
  kMalformedMessage,
  kInvalidConfig,
  kInconsistentResult,
};

std::string_view ErrorCodeName(ErrorCode code);
std::optional<ErrorCode> ErrorCodeFromName(std::string_view name);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& detail);

}  // namespace dlagg

#endif  // DLAGG_COMMON_ERROR_H_
