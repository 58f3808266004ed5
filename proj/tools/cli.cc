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

#include "cli.h"

#include <CLI11.hpp>

#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <fstream>

#include "dlagg/common/error.h"
#include "dlagg/simnet/config_file.h"
#include "dlagg/simnet/report_json.h"
#include "dlagg/simnet/simulation.h"

namespace dlagg::cli {
namespace {

// Settings with a --flag spelling: underscores become hyphens.
std::string FlagName(const std::string& key) {
  std::string flag = "--" + key;
  for (char& c : flag) {
    if (c == '_') c = '-';
  }
  return flag;
}

struct SettingFlags {
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> options;

  void Register(CLI::App& app, const std::vector<std::string>& skip = {}) {
    for (const std::string& key : SimConfigKeys()) {
      if (std::find(skip.begin(), skip.end(), key) != skip.end()) continue;
      CLI::Option* opt = app.add_option(FlagName(key), values[key],
                                        "setting '" + key + "'");
      options.emplace_back(key, opt);
    }
  }

  // Config file first, then every flag given on the command line.
  void Apply(SimConfig& cfg, const std::string& config_path) const {
    if (!config_path.empty()) ApplySettings(cfg, ReadKeyValueFile(config_path));
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) ApplySetting(cfg, key, values.at(key));
    }
  }
};

SimConfig CliDefaults() {
  SimConfig cfg;
  cfg.round.n = 10;
  cfg.round.m = 100;
  return cfg;
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

void PrintError(std::ostream& out, const std::string& code,
                const std::string& detail) {
  Json j;
  j["error"] = code;
  j["detail"] = detail;
  out << j.dump() << "\n";
}

int CmdRun(const SettingFlags& flags, const std::string& config_path,
           std::ostream& out, std::ostream& err) {
  SimConfig cfg = CliDefaults();
  try {
    flags.Apply(cfg, config_path);
    cfg.Validate();
    ResolveRoundConfig(cfg).Validate();
  } catch (const Error& e) {
    PrintError(err, std::string(ErrorCodeName(e.code())), e.what());
    return kExitUsage;
  }
  const SimReport report = RunSimulation(cfg);
  out << ReportToJson(report).dump(2) << "\n";
  return report.ok() ? kExitOk : kExitFailure;
}

struct SweepAxes {
  std::string protocols = "nv,lwe,pw";
  std::string clients = "10,20";
  std::string model_sizes = "100";
  std::string dropout_rates = "0,0.1,0.2,0.3";
  uint32_t repetitions = 1;
  std::string output;
};

std::string FormatRate(double rate) {
  std::ostringstream s;
  s << rate;
  return s.str();
}

int CmdSweep(const SettingFlags& flags, const std::string& config_path,
             const SweepAxes& axes, std::ostream& out, std::ostream& err) {
  SimConfig base = CliDefaults();
  std::vector<ProtocolKind> protocols;
  std::vector<uint32_t> clients;
  std::vector<uint32_t> sizes;
  std::vector<double> rates;
  try {
    flags.Apply(base, config_path);
    for (const auto& p : SplitList(axes.protocols)) {
      auto kind = ProtocolFromName(p);
      if (!kind.has_value()) Fail(ErrorCode::kInvalidConfig, "unknown protocol " + p);
      protocols.push_back(*kind);
    }
    for (const auto& c : SplitList(axes.clients)) {
      clients.push_back(static_cast<uint32_t>(ParseUnsigned("clients", c)));
    }
    for (const auto& m : SplitList(axes.model_sizes)) {
      sizes.push_back(static_cast<uint32_t>(ParseUnsigned("model_sizes", m)));
    }
    for (const auto& r : SplitList(axes.dropout_rates)) {
      rates.push_back(ParseReal("dropout_rates", r));
    }
    if (protocols.empty() || clients.empty() || sizes.empty() || rates.empty() ||
        axes.repetitions == 0) {
      Fail(ErrorCode::kInvalidConfig, "every sweep axis needs at least one value");
    }
  } catch (const Error& e) {
    PrintError(err, std::string(ErrorCodeName(e.code())), e.what());
    return kExitUsage;
  }

  std::ofstream file;
  std::ostream* csv = &out;
  if (!axes.output.empty()) {
    file.open(axes.output);
    if (!file) {
      PrintError(err, "InvalidConfig", "cannot write " + axes.output);
      return kExitUsage;
    }
    csv = &file;
  }
  *csv << "protocol,n,m,rate,stage,repetition,wall_time_s,total_bytes,"
          "bytes_per_client,total_messages,control_messages,share_bytes,"
          "field_ops,outcome\n";
  for (ProtocolKind protocol : protocols) {
    for (uint32_t n : clients) {
      for (uint32_t m : sizes) {
        for (double rate : rates) {
          for (uint32_t rep = 0; rep < axes.repetitions; ++rep) {
            SimConfig cfg = base;
            cfg.round.protocol = protocol;
            cfg.round.n = n;
            cfg.round.m = m;
            cfg.dropout_rate = rate;
            cfg.master_seed = base.master_seed + rep;
            const uint32_t t = cfg.round.threshold();
            if (rate < 0.0 || rate > 1.0 || t > n ||
                n - DropoutCount(n, rate) < t) {
              err << "skipping " << ProtocolName(protocol) << " n=" << n
                  << " m=" << m << " rate=" << FormatRate(rate)
                  << ": fewer than t survivors\n";
              continue;
            }
            const SimReport report = RunSimulation(cfg);
            const Metrics& mt = report.metrics;
            std::ostringstream row;
            row << ProtocolName(protocol) << ',' << n << ',' << m << ','
                << FormatRate(rate) << ',' << cfg.dropout_policy.Label() << ','
                << rep << ',' << std::fixed << std::setprecision(6)
                << report.wall_time_s << ',' << mt.total_bytes() << ','
                << std::setprecision(2)
                << static_cast<double>(mt.total_bytes()) / n << ','
                << mt.total_messages() << ',' << mt.control_messages() << ','
                << mt.share_bytes() << ',' << mt.field_ops().total() << ','
                << (report.ok() ? std::string("completed")
                                : std::string(ErrorCodeName(*report.failure)))
                << '\n';
            *csv << row.str();
            csv->flush();
          }
        }
      }
    }
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Dropout-resilient secure aggregation simulator", "dlagg"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "Run one simulation and print a JSON report");
  SettingFlags run_flags;
  std::string run_config;
  run->add_option("--config", run_config, "key = value settings file");
  run_flags.Register(*run);

  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter grid and write CSV");
  SettingFlags sweep_flags;
  std::string sweep_config;
  SweepAxes axes;
  sweep->add_option("--config", sweep_config, "key = value settings file");
  sweep->add_option("--protocols", axes.protocols, "comma list of nv, lwe, pw");
  sweep->add_option("--clients", axes.clients, "comma list of client counts");
  sweep->add_option("--model-sizes", axes.model_sizes, "comma list of model sizes");
  sweep->add_option("--dropout-rates", axes.dropout_rates, "comma list of rates");
  sweep->add_option("--repetitions", axes.repetitions, "runs per grid point");
  sweep->add_option("--output", axes.output, "CSV path (default stdout)");
  sweep_flags.Register(*sweep, {"protocol", "clients", "model_size", "dropout_rate"});

  CLI::App* verify = app.add_subcommand("verify", "Run the oracle property suite");
  VerifyOptions verify_options;
  verify->add_flag("--quick", verify_options.quick, "reduced suite");
  verify->add_flag("--fault-inject", verify_options.fault_inject,
                   "corrupt client 0's shares (negative control)");
  verify->add_option("--threads", verify_options.threads, "bus worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    PrintError(err, "Usage", e.what());
    return kExitUsage;
  }

  try {
    if (run->parsed()) return CmdRun(run_flags, run_config, out, err);
    if (sweep->parsed()) return CmdSweep(sweep_flags, sweep_config, axes, out, err);
    return RunVerify(verify_options, out);
  } catch (const std::exception& e) {
    PrintError(err, "Internal", e.what());
    return kExitFailure;
  }
}

}  // namespace dlagg::cli
