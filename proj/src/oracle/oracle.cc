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

#include "dlagg/oracle/oracle.h"

#include <cmath>
#include <string>

#include "dlagg/common/error.h"
#include "dlagg/common/seeded_random.h"
#include "dlagg/common/sha256.h"

namespace dlagg {
namespace {

using u128 = unsigned __int128;

// Evaluates the polynomial with the given coefficients at x, mod q.
uint64_t Evaluate(const std::vector<uint64_t>& coeffs, uint64_t x, uint64_t q) {
  uint64_t acc = 0;
  for (size_t i = coeffs.size(); i-- > 0;) acc = (acc * x + coeffs[i]) % q;
  return acc;
}

// Steps a little-endian base-q counter; returns false after wrapping.
bool Advance(std::vector<uint64_t>& digits, uint64_t q) {
  for (auto& d : digits) {
    if (++d < q) return true;
    d = 0;
  }
  return false;
}

void CheckSmallField(uint64_t q) {
  if (q > 127) Fail(ErrorCode::kFieldTooLarge, "exhaustive oracle needs q <= 127");
  if (q < 2) Fail(ErrorCode::kInvalidConfig, "modulus must be >= 2");
}

}  // namespace

double CompensatedSum(std::span<const double> values) {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

std::vector<double> PlaintextAggregate(std::span<const std::vector<double>> vectors,
                                       std::span<const uint32_t> contributors) {
  if (contributors.empty()) {
    Fail(ErrorCode::kEmptyContributors, "plaintext aggregate over no vectors");
  }
  const size_t m = vectors[contributors.front()].size();
  std::vector<double> mean(m);
  std::vector<double> column(contributors.size());
  for (size_t j = 0; j < m; ++j) {
    for (size_t c = 0; c < contributors.size(); ++c) {
      const auto& v = vectors[contributors[c]];
      if (v.size() != m) Fail(ErrorCode::kDimensionMismatch, "ragged vectors");
      column[c] = v[j];
    }
    mean[j] = CompensatedSum(column) / static_cast<double>(contributors.size());
  }
  return mean;
}

std::vector<uint64_t> EncodedSum(std::span<const std::vector<double>> vectors,
                                 std::span<const uint32_t> contributors,
                                 const FixedPointConfig& fp, uint64_t q) {
  if (contributors.empty()) {
    Fail(ErrorCode::kEmptyContributors, "encoded sum over no vectors");
  }
  const size_t m = vectors[contributors.front()].size();
  const double scale = std::ldexp(1.0, static_cast<int>(fp.frac_bits));
  std::vector<uint64_t> sum(m, 0);
  for (uint32_t c : contributors) {
    for (size_t j = 0; j < m; ++j) {
      double x = vectors[c][j];
      if (std::isnan(x)) x = 0.0;
      x = std::fmax(-fp.clip_magnitude, std::fmin(fp.clip_magnitude, x));
      const long long scaled = std::llround(x * scale);
      const uint64_t residue =
          scaled >= 0 ? static_cast<uint64_t>(scaled) % q
                      : (q - static_cast<uint64_t>(-scaled) % q) % q;
      sum[j] = static_cast<uint64_t>((u128{sum[j]} + residue) % q);
    }
  }
  return sum;
}

std::vector<uint64_t> BruteForceShareConsistency(std::span<const Share> fixed,
                                                 uint32_t t, uint64_t q) {
  CheckSmallField(q);
  if (t == 0) Fail(ErrorCode::kBadThreshold, "threshold must be >= 1");
  std::vector<uint64_t> histogram(q, 0);
  std::vector<uint64_t> coeffs(t, 0);  // coeffs[0] is the secret
  do {
    bool consistent = true;
    for (const Share& s : fixed) {
      if (Evaluate(coeffs, s.x.value % q, q) != s.y.value % q) {
        consistent = false;
        break;
      }
    }
    if (consistent) ++histogram[coeffs[0]];
  } while (Advance(coeffs, q));
  return histogram;
}

std::vector<uint64_t> BruteForcePackedConsistency(std::span<const Share> fixed,
                                                  uint32_t t, uint32_t k,
                                                  uint64_t q) {
  CheckSmallField(q);
  if (t == 0 || k == 0) Fail(ErrorCode::kBadThreshold, "t and k must be >= 1");
  const uint32_t coefficients = t + k - 1;
  if (coefficients * std::log2(static_cast<double>(q)) > 26.0) {
    Fail(ErrorCode::kFieldTooLarge, "packed enumeration too large");
  }
  uint64_t buckets = 1;
  for (uint32_t i = 0; i < k; ++i) buckets *= q;
  std::vector<uint64_t> histogram(buckets, 0);
  std::vector<uint64_t> coeffs(coefficients, 0);
  do {
    bool consistent = true;
    for (const Share& s : fixed) {
      if (Evaluate(coeffs, s.x.value % q, q) != s.y.value % q) {
        consistent = false;
        break;
      }
    }
    if (!consistent) continue;
    uint64_t index = 0;
    for (uint32_t i = k; i-- > 0;) index = index * q + Evaluate(coeffs, i + 1, q);
    ++histogram[index];
  } while (Advance(coeffs, q));
  return histogram;
}

void TrajectoryConfig::Validate() const {
  if (d == 0 || d > 100 || rounds == 0 || rounds > 20 || n < 3 || !(eta > 0.0)) {
    Fail(ErrorCode::kInvalidConfig,
         "trajectory needs 1 <= d <= 100, 1 <= rounds <= 20, n >= 3, eta > 0");
  }
}

std::vector<std::vector<double>> MiniTrainingTrajectory(
    const TrajectoryConfig& cfg, AggregationBackend backend,
    const SimConfig& protocol_template) {
  cfg.Validate();
  std::vector<std::vector<double>> optimum(cfg.n, std::vector<double>(cfg.d));
  for (uint32_t c = 0; c < cfg.n; ++c) {
    SeededRandomSource rng(DeriveSeed(cfg.seed, "optimum", c));
    for (double& v : optimum[c]) v = 2.0 * rng.UniformDouble() - 1.0;
  }
  SimConfig sim = protocol_template;
  sim.round.n = cfg.n;
  sim.round.m = cfg.d;
  sim.master_seed = cfg.seed;
  switch (backend) {
    case AggregationBackend::kNv:
      sim.round.protocol = ProtocolKind::kNv;
      break;
    case AggregationBackend::kPw:
      sim.round.protocol = ProtocolKind::kPw;
      break;
    case AggregationBackend::kLwe:
      sim.round.protocol = ProtocolKind::kLwe;
      break;
    case AggregationBackend::kPlaintext:
      break;
  }

  std::vector<uint32_t> everyone(cfg.n);
  for (uint32_t c = 0; c < cfg.n; ++c) everyone[c] = c;
  std::vector<double> model(cfg.d, 0.0);
  std::vector<std::vector<double>> trajectory;
  for (uint32_t r = 0; r < cfg.rounds; ++r) {
    std::vector<std::vector<double>> local(cfg.n, model);
    for (uint32_t c = 0; c < cfg.n; ++c) {
      for (uint32_t j = 0; j < cfg.d; ++j) {
        local[c][j] -= cfg.eta * (model[j] - optimum[c][j]);
      }
    }
    if (backend == AggregationBackend::kPlaintext) {
      model = PlaintextAggregate(local, everyone);
    } else {
      RoundOutcome outcome = SimulateRound(sim, local, r);
      if (!outcome.ok()) Fail(*outcome.failure, outcome.failure_detail);
      model = outcome.result->average;
    }
    trajectory.push_back(model);
  }
  return trajectory;
}

}  // namespace dlagg
