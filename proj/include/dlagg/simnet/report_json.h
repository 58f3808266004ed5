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

#ifndef DLAGG_SIMNET_REPORT_JSON_H_
#define DLAGG_SIMNET_REPORT_JSON_H_

#include "json.hpp"

#include "dlagg/simnet/metrics.h"
#include "dlagg/simnet/simulation.h"

namespace dlagg {

using Json = nlohmann::ordered_json;

Json FieldOpsToJson(const FieldOpCounts& ops);
Json MetricsToJson(const Metrics& metrics, bool per_client = true);
// Keys appear in a fixed order; wall_time_s is last and can be omitted.
Json ReportToJson(const SimReport& report, bool include_wall_time = true);

}  // namespace dlagg

#endif  // DLAGG_SIMNET_REPORT_JSON_H_
