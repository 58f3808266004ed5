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

#include "dlagg/simnet/config_file.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dlagg/common/error.h"

namespace dlagg {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void BadValue(std::string_view key, std::string_view value) {
  Fail(ErrorCode::kInvalidConfig,
       "bad value '" + std::string(value) + "' for " + std::string(key));
}

uint32_t ParseU32(std::string_view key, std::string_view value) {
  const uint64_t v = ParseUnsigned(key, value);
  if (v > 0xFFFFFFFFu) BadValue(key, value);
  return static_cast<uint32_t>(v);
}

}  // namespace

uint64_t ParseUnsigned(std::string_view key, std::string_view value) {
  uint64_t v = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (ec != std::errc() || ptr != end || value.empty()) BadValue(key, value);
  return v;
}

double ParseReal(std::string_view key, std::string_view value) {
  const std::string text(value);
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
    BadValue(key, value);
  }
  return v;
}

bool ParseBool(std::string_view key, std::string_view value) {
  if (value == "on" || value == "true" || value == "1" || value == "yes") return true;
  if (value == "off" || value == "false" || value == "0" || value == "no") return false;
  BadValue(key, value);
}

KeyValueList ParseKeyValueText(std::string_view text) {
  KeyValueList out;
  size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view() : text.substr(eol + 1);
    const size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      Fail(ErrorCode::kInvalidConfig,
           "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));
    if (key.empty()) {
      Fail(ErrorCode::kInvalidConfig, "line " + std::to_string(line_no) + ": empty key");
    }
    out.emplace_back(std::string(key), std::string(value));
  }
  return out;
}

KeyValueList ReadKeyValueFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kInvalidConfig, "cannot read config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return ParseKeyValueText(text.str());
}

const std::vector<std::string>& SimConfigKeys() {
  static const std::vector<std::string> keys = {
      "protocol",   "clients",      "model_size", "threshold",
      "dropout_rate", "dropout_stage", "seed",     "pack_width",
      "rounds",     "sigma",        "lwe_dim",    "dh_group",
      "personal_mask", "frac_bits", "clip",       "field_modulus",
      "threads",    "fault_inject"};
  return keys;
}

void ApplySetting(SimConfig& cfg, std::string_view key, std::string_view value) {
  RoundConfig& r = cfg.round;
  if (key == "protocol") {
    auto kind = ProtocolFromName(value);
    if (!kind.has_value()) BadValue(key, value);
    r.protocol = *kind;
  } else if (key == "clients") {
    r.n = ParseU32(key, value);
  } else if (key == "model_size") {
    r.m = ParseU32(key, value);
  } else if (key == "threshold") {
    r.t = ParseU32(key, value);
  } else if (key == "dropout_rate") {
    cfg.dropout_rate = ParseReal(key, value);
  } else if (key == "dropout_stage") {
    cfg.dropout_policy = DropoutPolicy::FromName(std::string(value));
  } else if (key == "seed") {
    cfg.master_seed = ParseUnsigned(key, value);
  } else if (key == "pack_width") {
    r.pack_width = ParseU32(key, value);
  } else if (key == "rounds") {
    cfg.rounds = ParseU32(key, value);
  } else if (key == "sigma") {
    r.sigma = ParseReal(key, value);
  } else if (key == "lwe_dim") {
    r.n_lwe = ParseU32(key, value);
  } else if (key == "dh_group") {
    r.dh_group = std::string(value);
  } else if (key == "personal_mask") {
    r.personal_mask = ParseBool(key, value);
  } else if (key == "frac_bits") {
    r.fp.frac_bits = ParseU32(key, value);
  } else if (key == "clip") {
    r.fp.clip_magnitude = ParseReal(key, value);
  } else if (key == "field_modulus") {
    r.q = ParseUnsigned(key, value);
  } else if (key == "threads") {
    cfg.threads = ParseU32(key, value);
  } else if (key == "fault_inject") {
    cfg.fault_inject = ParseBool(key, value);
  } else {
    Fail(ErrorCode::kInvalidConfig, "unknown setting '" + std::string(key) + "'");
  }
}

void ApplySettings(SimConfig& cfg, const KeyValueList& settings) {
  for (const auto& [key, value] : settings) ApplySetting(cfg, key, value);
}

}  // namespace dlagg
