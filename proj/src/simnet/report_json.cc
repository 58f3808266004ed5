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

#include "dlagg/simnet/report_json.h"

namespace dlagg {
namespace {

Json StageToJson(const StageMetrics& s) {
  Json j;
  j["messages_sent"] = s.messages_sent;
  j["bytes_sent"] = s.bytes_sent;
  j["payload_bytes_sent"] = s.payload_bytes_sent;
  j["messages_delivered"] = s.messages_delivered;
  j["bytes_delivered"] = s.bytes_delivered;
  j["messages_to_dropped"] = s.messages_to_dropped;
  j["bytes_to_dropped"] = s.bytes_to_dropped;
  j["suppressed_messages"] = s.suppressed_messages;
  j["suppressed_bytes"] = s.suppressed_bytes;
  return j;
}

Json ClientToJson(const ClientMetrics& c) {
  Json j;
  j["messages_sent"] = c.messages_sent;
  j["bytes_sent"] = c.bytes_sent;
  j["payload_bytes_sent"] = c.payload_bytes_sent;
  j["messages_received"] = c.messages_received;
  j["bytes_received"] = c.bytes_received;
  j["suppressed_messages"] = c.suppressed_messages;
  j["suppressed_bytes"] = c.suppressed_bytes;
  j["field_ops"] = FieldOpsToJson(c.field_ops);
  return j;
}

}  // namespace

Json FieldOpsToJson(const FieldOpCounts& ops) {
  Json j;
  j["additions"] = ops.additions;
  j["multiplications"] = ops.multiplications;
  j["inversions"] = ops.inversions;
  return j;
}

Json MetricsToJson(const Metrics& metrics, bool per_client) {
  Json j;
  j["totals"] = ClientToJson(metrics.Totals());
  j["control_messages"] = metrics.control_messages();
  j["control_bytes"] = metrics.control_bytes();
  j["share_bytes"] = metrics.share_bytes();
  j["conserved"] = metrics.Conserved();
  Json stages = Json::object();
  for (size_t s = 0; s < kNumStages; ++s) {
    stages[std::string(StageName(static_cast<Stage>(s)))] = StageToJson(metrics.stages[s]);
  }
  j["stages"] = std::move(stages);
  Json kinds = Json::object();
  for (size_t k = 1; k < kNumMessageKinds; ++k) {
    const KindMetrics& km = metrics.kinds[k];
    if (km.messages == 0) continue;
    kinds[std::string(MessageKindName(static_cast<MessageKind>(k)))] = {
        {"messages", km.messages}, {"bytes", km.bytes}};
  }
  j["kinds"] = std::move(kinds);
  if (per_client) {
    Json clients = Json::array();
    for (const auto& c : metrics.clients) clients.push_back(ClientToJson(c));
    j["clients"] = std::move(clients);
  }
  return j;
}

Json ReportToJson(const SimReport& report, bool include_wall_time) {
  const RoundConfig& r = report.resolved;
  Json j;
  j["protocol"] = std::string(ProtocolName(r.protocol));
  j["clients"] = r.n;
  j["threshold"] = r.threshold();
  j["model_size"] = r.m;
  j["pack_width"] = r.effective_pack_width();
  j["rounds"] = report.config.rounds;
  j["seed"] = report.config.master_seed;
  j["dropout_rate"] = report.config.dropout_rate;
  j["dropout_stage"] = report.config.dropout_policy.Label();
  j["field_modulus"] = r.q;
  j["frac_bits"] = r.fp.frac_bits;
  if (r.protocol == ProtocolKind::kLwe) {
    j["lwe_dim"] = r.n_lwe;
    j["sigma"] = r.sigma;
  }
  if (r.protocol == ProtocolKind::kPw) {
    j["dh_group"] = r.dh_group;
    j["personal_mask"] = r.personal_mask;
  }
  j["outcome"] = report.ok() ? "completed" : "failed";
  j["failure"] = report.failure.has_value()
                     ? Json(std::string(ErrorCodeName(*report.failure)))
                     : Json(nullptr);
  j["failure_detail"] = report.failure.has_value() ? Json(report.failure_detail)
                                                   : Json(nullptr);
  j["rounds_completed"] = report.rounds_completed;
  Json dropped = Json::array();
  for (const auto& [client, stage] : report.schedule.drop_stage) {
    dropped.push_back({{"client", client}, {"stage", std::string(StageName(stage))}});
  }
  j["schedule"] = std::move(dropped);
  if (report.result.has_value()) {
    const AggregateResult& res = *report.result;
    Json out;
    out["contributors"] = res.contributors;
    out["exact"] = res.exact;
    if (!res.exact) out["noise_sigma_effective"] = res.noise_sigma_effective;
    out["average"] = res.average;
    j["result"] = std::move(out);
  } else {
    j["result"] = nullptr;
  }
  j["metrics"] = MetricsToJson(report.metrics);
  if (include_wall_time) j["wall_time_s"] = report.wall_time_s;
  return j;
}

}  // namespace dlagg
