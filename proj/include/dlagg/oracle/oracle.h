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

#ifndef DLAGG_ORACLE_ORACLE_H_
#define DLAGG_ORACLE_ORACLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dlagg/field/fixed_point.h"
#include "dlagg/shamir/shamir.h"
#include "dlagg/simnet/simulation.h"

namespace dlagg {

// Neumaier-compensated sum.
double CompensatedSum(std::span<const double> values);

// Mean over the listed contributors. Throws EmptyContributors.
std::vector<double> PlaintextAggregate(std::span<const std::vector<double>> vectors,
                                       std::span<const uint32_t> contributors);

// Sum of the contributors' fixed-point encodings mod q, computed with plain
// 128-bit integer arithmetic.
std::vector<uint64_t> EncodedSum(std::span<const std::vector<double>> vectors,
                                 std::span<const uint32_t> contributors,
                                 const FixedPointConfig& fp, uint64_t q);

// For every candidate secret s in F_q, the number of polynomials of degree at
// most t - 1 with f(0) = s that pass through all fixed shares. Exhaustive;
// throws FieldTooLarge if q > 127.
std::vector<uint64_t> BruteForceShareConsistency(std::span<const Share> fixed,
                                                 uint32_t t, uint64_t q);

// Packed analogue: polynomials of degree at most t + k - 2 with secrets at
// 1..k. Histogram index is sum_i s_i q^i. Throws FieldTooLarge if q > 127 or
// the enumeration exceeds 2^26 polynomials.
std::vector<uint64_t> BruteForcePackedConsistency(std::span<const Share> fixed,
                                                  uint32_t t, uint32_t k,
                                                  uint64_t q);

struct TrajectoryConfig {
  uint32_t n = 10;
  uint32_t rounds = 5;
  uint32_t d = 20;
  double eta = 0.5;
  uint64_t seed = 1;

  // Throws InvalidConfig unless d <= 100, rounds <= 20 and n >= 3.
  void Validate() const;
};

enum class AggregationBackend { kPlaintext, kNv, kPw, kLwe };

// Client c minimises 0.5 * |w - mu_c|^2 with mu_c uniform in [-1, 1]^d from
// SHA-256(seed || "optimum" || c). Each round every client takes one local
// gradient step from the shared model and the backend averages the results.
// Returns the shared model after each round. Protocol settings other than
// the protocol, n and m come from protocol_template.
std::vector<std::vector<double>> MiniTrainingTrajectory(
    const TrajectoryConfig& cfg, AggregationBackend backend,
    const SimConfig& protocol_template = {});

}  // namespace dlagg

#endif  // DLAGG_ORACLE_ORACLE_H_
