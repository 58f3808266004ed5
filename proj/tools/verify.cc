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

#include <chrono>
#include <cmath>
#include <iomanip>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "dlagg/common/error.h"
#include "dlagg/common/seeded_random.h"
#include "dlagg/common/sha256.h"
#include "dlagg/shamir/packed.h"
#include "dlagg/oracle/oracle.h"
#include "dlagg/shamir/shamir.h"
#include "dlagg/simnet/metrics.h"
#include "dlagg/simnet/report_json.h"
#include "dlagg/simnet/simulation.h"

namespace dlagg::cli {
namespace {

struct Check {
  bool passed = true;
  std::string detail;

  void Expect(bool ok, const std::string& what) {
    if (!ok && passed) {
      passed = false;
      detail = what;
    }
  }
};

SeededRandomSource Rng(std::string_view label) {
  return SeededRandomSource(DeriveSeed(2024, label));
}

Check ShareConsistency() {
  Check check;
  const uint64_t q = 17;
  const PrimeField field(q);
  auto rng = Rng("verify-share");
  const ShareSet set = ShamirShare(field.FromUint(5), 3, 5, field, rng);
  for (size_t a = 0; a < 5; ++a) {
    for (size_t b = a + 1; b < 5; ++b) {
      const Share fixed[] = {set.shares[a], set.shares[b]};
      for (uint64_t count : BruteForceShareConsistency(fixed, 3, q)) {
        check.Expect(count == 1, "q=17 histogram not flat");
      }
    }
  }
  for (uint64_t count : BruteForceShareConsistency({}, 3, q)) {
    check.Expect(count == q * q, "q=17 unconstrained count differs from q^2");
  }
  const PrimeField f7(7);
  const ShareSet small = ShamirShare(f7.FromUint(3), 2, 4, f7, rng);
  for (uint64_t count : BruteForceShareConsistency({&small.shares[1], 1}, 2, 7)) {
    check.Expect(count == 1, "q=7 histogram not flat");
  }
  return check;
}

Check PackedConsistency() {
  Check check;
  const uint64_t q = 127;
  const PrimeField field(q);
  auto rng = Rng("verify-packed");
  const FieldElement secrets[] = {field.FromUint(11), field.FromUint(99)};
  const PackingLayout layout = PackingLayout::Standard(2, 4);
  const ShareSet set = PackedShare(secrets, 2, 4, layout, field, rng);
  for (const Share& s : set.shares) {
    for (uint64_t count : BruteForcePackedConsistency({&s, 1}, 2, 2, q)) {
      check.Expect(count == 1, "packed histogram not flat");
    }
  }
  return check;
}

Check ReconstructionAndHomomorphism(uint32_t trials) {
  Check check;
  auto rng = Rng("verify-reconstruct");
  const uint64_t moduli[] = {17, 127, PrimeField::kMersenne61};
  for (uint32_t trial = 0; trial < trials; ++trial) {
    const PrimeField field(moduli[trial % 3]);
    const uint32_t n = 3 + static_cast<uint32_t>(rng.UniformBelow(6));
    const uint32_t t = 1 + static_cast<uint32_t>(rng.UniformBelow(n));
    const FieldElement a = rng.UniformElement(field);
    const FieldElement b = rng.UniformElement(field);
    const ShareSet sa = ShamirShare(a, t, n, field, rng);
    const ShareSet sb = ShamirShare(b, t, n, field, rng);
    ShareSet subset{{}, t, 1};
    for (uint32_t i = 0; i < t; ++i) subset.shares.push_back(sa.shares[n - 1 - i]);
    check.Expect(ShamirReconstruct(subset, field) == a, "t-subset reconstruction");
    check.Expect(ShamirReconstruct(AddShares(sa, sb, field), field) == field.Add(a, b),
                 "homomorphic addition");
  }
  return check;
}

SimConfig ProtocolConfig(ProtocolKind protocol, uint32_t n, uint32_t m,
                         double rate, Stage stage, const VerifyOptions& options,
                         bool quick) {
  SimConfig cfg;
  cfg.round.protocol = protocol;
  cfg.round.n = n;
  cfg.round.m = m;
  cfg.round.sigma = 1e-6;
  if (quick) cfg.round.dh_group = "test-1019";
  cfg.dropout_rate = rate;
  cfg.dropout_policy = DropoutPolicy::Fixed(stage);
  cfg.master_seed = 100 + n;
  cfg.threads = options.threads;
  cfg.fault_inject = options.fault_inject;
  return cfg;
}

Check Equivalence(ProtocolKind protocol, const VerifyOptions& options) {
  Check check;
  const std::vector<uint32_t> sizes =
      options.quick ? std::vector<uint32_t>{3, 5, 10} : std::vector<uint32_t>{3, 5, 10, 20};
  const double tolerance = protocol == ProtocolKind::kLwe ? 1e-3 : std::ldexp(1.0, -15);
  for (uint32_t n : sizes) {
    for (double rate : {0.0, 0.3}) {
      for (Stage stage : ProtocolStages(protocol)) {
        SimConfig cfg = ProtocolConfig(protocol, n, 8, rate, stage, options, options.quick);
        const auto inputs = SyntheticInputs(cfg.master_seed, 0, n, 8);
        const RoundOutcome outcome = SimulateRound(cfg, inputs, 0);
        std::ostringstream where;
        where << ProtocolName(protocol) << " n=" << n << " rate=" << rate
              << " stage=" << StageName(stage);
        if (!outcome.ok()) {
          check.Expect(false, where.str() + ": " + outcome.failure_detail);
          continue;
        }
        const auto& res = *outcome.result;
        const auto expected = PlaintextAggregate(inputs, res.contributors);
        if (protocol != ProtocolKind::kLwe) {
          const auto sum = EncodedSum(inputs, res.contributors, cfg.round.fp, cfg.round.q);
          bool exact = sum.size() == res.field_sum.size();
          for (size_t j = 0; exact && j < sum.size(); ++j) {
            exact = sum[j] == res.field_sum[j].value;
          }
          check.Expect(exact, where.str() + ": field sum differs");
        }
        for (size_t j = 0; j < expected.size(); ++j) {
          check.Expect(std::fabs(res.average[j] - expected[j]) <= tolerance,
                       where.str() + ": average outside tolerance");
        }
      }
    }
  }
  return check;
}

Check TrajectoryParity(const VerifyOptions& options) {
  Check check;
  TrajectoryConfig cfg;
  cfg.rounds = options.quick ? 3 : 5;
  SimConfig base;
  base.round.sigma = 1e-6;
  base.threads = options.threads;
  if (options.quick) base.round.dh_group = "test-1019";
  const auto plain = MiniTrainingTrajectory(cfg, AggregationBackend::kPlaintext);
  for (auto backend : {AggregationBackend::kNv, AggregationBackend::kPw,
                       AggregationBackend::kLwe}) {
    const auto traj = MiniTrainingTrajectory(cfg, backend, base);
    for (size_t r = 0; r < plain.size(); ++r) {
      for (size_t j = 0; j < plain[r].size(); ++j) {
        check.Expect(std::fabs(traj[r][j] - plain[r][j]) <= 1e-3,
                     "trajectory gap above 1e-3");
      }
    }
  }
  return check;
}

Check MeteringIdentity(const VerifyOptions& options) {
  Check check;
  struct Case {
    ProtocolKind protocol;
    uint32_t n;
    uint32_t m;
  };
  std::vector<Case> cases;
  for (auto p : {ProtocolKind::kNv, ProtocolKind::kLwe, ProtocolKind::kPw}) {
    for (uint32_t n : {3u, 5u, 10u}) {
      for (uint32_t m : {4u, 100u}) cases.push_back({p, n, m});
    }
  }
  if (!options.quick) cases.push_back({ProtocolKind::kNv, 1000, 100});
  for (const Case& c : cases) {
    SimConfig cfg = ProtocolConfig(c.protocol, c.n, c.m, 0.0, Stage::kShares,
                                   options, true);
    cfg.fault_inject = false;
    const SimReport report = RunSimulation(cfg);
    std::ostringstream where;
    where << ProtocolName(c.protocol) << " n=" << c.n << " m=" << c.m;
    check.Expect(report.ok(), where.str() + ": round failed");
    check.Expect(report.metrics.TrafficEquals(MeterExpectations(report.resolved)),
                 where.str() + ": metrics differ from closed form");
    check.Expect(report.metrics.Conserved(), where.str() + ": bytes not conserved");
  }
  return check;
}

Check Determinism(const VerifyOptions& options) {
  Check check;
  for (auto p : {ProtocolKind::kNv, ProtocolKind::kLwe, ProtocolKind::kPw}) {
    SimConfig cfg = ProtocolConfig(p, 5, 6, 0.2, Stage::kMasked, options, true);
    cfg.round.sigma = 3.0;
    const std::string a = ReportToJson(RunSimulation(cfg), false).dump();
    cfg.threads = 2;
    const std::string b = ReportToJson(RunSimulation(cfg), false).dump();
    check.Expect(a == b, std::string(ProtocolName(p)) + ": reports differ");
  }
  return check;
}

}  // namespace

int RunVerify(const VerifyOptions& options, std::ostream& out) {
  struct Property {
    std::string name;
    std::function<Check()> run;
  };
  const std::vector<Property> properties = {
      {"share_consistency_flat", ShareConsistency},
      {"packed_consistency_flat", PackedConsistency},
      {"reconstruction_homomorphism",
       [&] { return ReconstructionAndHomomorphism(options.quick ? 300 : 1000); }},
      {"nv_plaintext_equivalence", [&] { return Equivalence(ProtocolKind::kNv, options); }},
      {"pw_plaintext_equivalence", [&] { return Equivalence(ProtocolKind::kPw, options); }},
      {"lwe_plaintext_equivalence", [&] { return Equivalence(ProtocolKind::kLwe, options); }},
      {"trajectory_parity", [&] { return TrajectoryParity(options); }},
      {"metering_identity", [&] { return MeteringIdentity(options); }},
      {"determinism", [&] { return Determinism(options); }},
  };
  int failures = 0;
  for (const Property& p : properties) {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      check = p.run();
    } catch (const std::exception& e) {
      check.Expect(false, e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << (check.passed ? "PASS " : "FAIL ") << p.name << " (" << std::fixed
        << std::setprecision(2) << secs << " s)";
    if (!check.passed) out << ": " << check.detail;
    out << "\n";
    if (!check.passed) ++failures;
  }
  out << (failures == 0 ? "all properties passed" : "properties failed: ")
      << (failures == 0 ? "" : std::to_string(failures)) << "\n";
  return failures == 0 ? kExitOk : kExitFailure;
}

}  // namespace dlagg::cli
