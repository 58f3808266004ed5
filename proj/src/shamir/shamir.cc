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

#include "dlagg/shamir/shamir.h"

#include <string>

#include "dlagg/common/error.h"
#include "dlagg/shamir/lagrange.h"

namespace dlagg {

ShareSet ShamirShare(FieldElement secret, uint32_t t, uint32_t n,
                     const PrimeField& field, SeededRandomSource& rng) {
  if (t == 0 || t > n) {
    Fail(ErrorCode::kBadThreshold, "need 0 < t <= n, got t=" +
                                       std::to_string(t) +
                                       " n=" + std::to_string(n));
  }
  if (n >= field.modulus()) {
    Fail(ErrorCode::kInvalidConfig, "need n < q for distinct share points");
  }
  std::vector<FieldElement> coeffs(t);
  coeffs[0] = secret;
  for (uint32_t i = 1; i < t; ++i) coeffs[i] = rng.UniformElement(field);

  ShareSet out;
  out.threshold = t;
  out.pack_width = 1;
  out.shares.reserve(n);
  for (uint32_t j = 1; j <= n; ++j) {
    const FieldElement x{j};
    FieldElement y = coeffs[t - 1];
    for (uint32_t i = t - 1; i-- > 0;) y = field.Add(field.Mul(y, x), coeffs[i]);
    out.shares.push_back({x, y});
  }
  return out;
}

FieldElement ShamirReconstruct(const ShareSet& set, const PrimeField& field) {
  if (set.pack_width != 1) {
    Fail(ErrorCode::kBadPacking, "plain reconstruction of a packed share set");
  }
  if (set.shares.size() < set.threshold || set.shares.empty()) {
    Fail(ErrorCode::kNotEnoughShares,
         "have " + std::to_string(set.shares.size()) + " shares, need " +
             std::to_string(set.threshold));
  }
  std::vector<FieldElement> xs, ys;
  xs.reserve(set.shares.size());
  ys.reserve(set.shares.size());
  for (const Share& s : set.shares) {
    if (s.x.value == 0) {
      Fail(ErrorCode::kDuplicatePoint, "share at x = 0 collides with the secret");
    }
    xs.push_back(s.x);
    ys.push_back(s.y);
  }
  const FieldElement zero{0};
  auto basis = CachedLagrangeBasis(field, xs, std::span(&zero, 1));
  FieldElement out;
  basis->Apply(field, ys, std::span(&out, 1));
  return out;
}

ShareSet AddShares(const ShareSet& a, const ShareSet& b,
                   const PrimeField& field) {
  if (a.threshold != b.threshold || a.pack_width != b.pack_width ||
      a.shares.size() != b.shares.size()) {
    Fail(ErrorCode::kPointMismatch, "share sets have different parameters");
  }
  ShareSet out{{}, a.threshold, a.pack_width};
  out.shares.reserve(a.shares.size());
  for (size_t i = 0; i < a.shares.size(); ++i) {
    if (a.shares[i].x != b.shares[i].x) {
      Fail(ErrorCode::kPointMismatch, "share sets use different points");
    }
    out.shares.push_back({a.shares[i].x, field.Add(a.shares[i].y, b.shares[i].y)});
  }
  return out;
}

}  // namespace dlagg
