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

#ifndef DLAGG_SIMNET_CONFIG_FILE_H_
#define DLAGG_SIMNET_CONFIG_FILE_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dlagg/simnet/simulation.h"

namespace dlagg {

using KeyValueList = std::vector<std::pair<std::string, std::string>>;

// Flat "key = value" text. '#' starts a comment; blank lines are skipped.
// Throws InvalidConfig naming the offending line.
KeyValueList ParseKeyValueText(std::string_view text);
KeyValueList ReadKeyValueFile(const std::string& path);

// Keys accepted by ApplySetting, in documentation order:
// protocol, clients, model_size, threshold, dropout_rate, dropout_stage,
// seed, pack_width, rounds, sigma, lwe_dim, dh_group, personal_mask,
// frac_bits, clip, field_modulus, threads, fault_inject.
const std::vector<std::string>& SimConfigKeys();

// Throws InvalidConfig for unknown keys or unparsable values.
void ApplySetting(SimConfig& cfg, std::string_view key, std::string_view value);
void ApplySettings(SimConfig& cfg, const KeyValueList& settings);

// Strict parsers shared with the command line.
uint64_t ParseUnsigned(std::string_view key, std::string_view value);
double ParseReal(std::string_view key, std::string_view value);
bool ParseBool(std::string_view key, std::string_view value);

}  // namespace dlagg

#endif  // DLAGG_SIMNET_CONFIG_FILE_H_
