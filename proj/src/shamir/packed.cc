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

#include "dlagg/shamir/packed.h"

#include <algorithm>
#include <set>
#include <string>

#include "dlagg/common/error.h"
#include "dlagg/shamir/lagrange.h"

namespace dlagg {
namespace {

void CheckPackingParameters(uint32_t t, uint32_t k, uint32_t n) {
  if (t == 0) Fail(ErrorCode::kBadThreshold, "threshold must be positive");
  if (k == 0) Fail(ErrorCode::kBadPacking, "pack width must be positive");
  if (n < t + k - 1) {
    Fail(ErrorCode::kBadPacking,
         "n=" + std::to_string(n) + " is below t + k - 1 = " +
             std::to_string(t + k - 1));
  }
}

// Row-major [chunk][recipient] share values for `chunks` chunks of k secrets.
std::vector<FieldElement> PackChunks(std::span<const FieldElement> secrets,
                                     uint32_t chunks, uint32_t t,
                                     const PackingLayout& layout,
                                     const PrimeField& field,
                                     SeededRandomSource& rng) {
  const uint32_t k = layout.pack_width();
  const uint32_t n = layout.num_shares();
  const uint32_t anchors = t - 1;

  std::vector<FieldElement> sources(layout.secret_points);
  sources.insert(sources.end(), layout.share_points.begin(),
                 layout.share_points.begin() + anchors);
  std::span<const FieldElement> targets(layout.share_points.data() + anchors,
                                        n - anchors);
  auto basis = CachedLagrangeBasis(field, sources, targets);

  std::vector<FieldElement> out(size_t{chunks} * n);
  std::vector<FieldElement> values(k + anchors);
  for (uint32_t c = 0; c < chunks; ++c) {
    for (uint32_t i = 0; i < k; ++i) {
      size_t idx = size_t{c} * k + i;
      values[i] = idx < secrets.size() ? secrets[idx] : FieldElement{0};
    }
    for (uint32_t a = 0; a < anchors; ++a) {
      values[k + a] = rng.UniformElement(field);
    }
    FieldElement* row = &out[size_t{c} * n];
    std::copy(values.begin() + k, values.end(), row);
    basis->Apply(field, values, std::span(row + anchors, n - anchors));
  }
  return out;
}

void CheckDistinctNonSecretPoints(std::span<const FieldElement> xs,
                                  std::span<const FieldElement> secret_points) {
  std::set<uint64_t> seen;
  for (FieldElement x : xs) {
    if (!seen.insert(x.value).second) {
      Fail(ErrorCode::kDuplicatePoint,
           "duplicate share point " + std::to_string(x.value));
    }
    if (x.value == 0 ||
        std::find(secret_points.begin(), secret_points.end(), x) !=
            secret_points.end()) {
      Fail(ErrorCode::kDuplicatePoint,
           "share point " + std::to_string(x.value) +
               " collides with a secret point");
    }
  }
}

}  // namespace

PackingLayout PackingLayout::Standard(uint32_t k, uint32_t n) {
  PackingLayout layout;
  layout.secret_points.reserve(k);
  for (uint32_t i = 1; i <= k; ++i) layout.secret_points.push_back({i});
  layout.share_points.reserve(n);
  for (uint32_t j = 0; j < n; ++j) layout.share_points.push_back(RecipientPoint(j, k));
  return layout;
}

void PackingLayout::Validate(const PrimeField& field) const {
  if (secret_points.empty()) Fail(ErrorCode::kBadPacking, "no secret points");
  std::set<uint64_t> seen;
  for (const auto* points : {&secret_points, &share_points}) {
    for (FieldElement p : *points) {
      if (p.value == 0 || p.value >= field.modulus()) {
        Fail(ErrorCode::kBadPacking, "layout point out of range");
      }
      if (!seen.insert(p.value).second) {
        Fail(ErrorCode::kBadPacking, "layout points must be distinct");
      }
    }
  }
}

ShareSet PackedShare(std::span<const FieldElement> secrets, uint32_t t,
                     uint32_t n, const PackingLayout& layout,
                     const PrimeField& field, SeededRandomSource& rng) {
  if (layout.num_shares() != n || secrets.size() != layout.pack_width()) {
    Fail(ErrorCode::kBadPacking, "layout does not match k secrets and n shares");
  }
  CheckPackingParameters(t, layout.pack_width(), n);
  layout.Validate(field);
  auto values = PackChunks(secrets, 1, t, layout, field, rng);
  ShareSet out{{}, t, layout.pack_width()};
  out.shares.reserve(n);
  for (uint32_t j = 0; j < n; ++j) out.shares.push_back({layout.share_points[j], values[j]});
  return out;
}

std::vector<FieldElement> PackedReconstruct(const ShareSet& set,
                                            const PackingLayout& layout,
                                            const PrimeField& field) {
  if (set.pack_width != layout.pack_width()) {
    Fail(ErrorCode::kBadPacking, "share set and layout disagree on k");
  }
  if (set.shares.size() < set.reconstruction_size()) {
    Fail(ErrorCode::kNotEnoughShares,
         "have " + std::to_string(set.shares.size()) + " shares, need " +
             std::to_string(set.reconstruction_size()));
  }
  std::vector<FieldElement> xs, ys;
  for (const Share& s : set.shares) {
    xs.push_back(s.x);
    ys.push_back(s.y);
  }
  CheckDistinctNonSecretPoints(xs, layout.secret_points);
  auto basis = CachedLagrangeBasis(field, xs, layout.secret_points);
  std::vector<FieldElement> out(layout.pack_width());
  basis->Apply(field, ys, out);
  return out;
}

std::vector<ShareVector> ShareVectorPacked(std::span<const FieldElement> w,
                                           uint32_t t, uint32_t n, uint32_t k,
                                           const PrimeField& field,
                                           SeededRandomSource& rng) {
  CheckPackingParameters(t, k, n);
  if (uint64_t{k} + n >= field.modulus()) {
    Fail(ErrorCode::kBadPacking, "k + n evaluation points exceed the field");
  }
  const auto m = static_cast<uint32_t>(w.size());
  const uint32_t chunks = ChunkCount(m, k);
  const PackingLayout layout = PackingLayout::Standard(k, n);
  auto values = PackChunks(w, chunks, t, layout, field, rng);

  std::vector<ShareVector> out(n);
  for (uint32_t j = 0; j < n; ++j) {
    ShareVector& sv = out[j];
    sv.x = layout.share_points[j];
    sv.vector_length = m;
    sv.threshold = t;
    sv.pack_width = k;
    sv.values.resize(chunks);
    for (uint32_t c = 0; c < chunks; ++c) sv.values[c] = values[size_t{c} * n + j];
  }
  return out;
}

std::vector<FieldElement> ReconstructVector(std::span<const ShareVector> shares,
                                            const PrimeField& field) {
  if (shares.empty()) Fail(ErrorCode::kNotEnoughShares, "no share vectors");
  const ShareVector& first = shares.front();
  const uint32_t k = first.pack_width;
  const uint32_t chunks = ChunkCount(first.vector_length, k);
  for (const ShareVector& sv : shares) {
    if (sv.vector_length != first.vector_length || sv.threshold != first.threshold ||
        sv.pack_width != k || sv.values.size() != chunks) {
      Fail(ErrorCode::kPointMismatch, "share vector headers disagree");
    }
  }
  if (shares.size() < size_t{first.threshold} + k - 1) {
    Fail(ErrorCode::kNotEnoughShares,
         "have " + std::to_string(shares.size()) + " share vectors, need " +
             std::to_string(first.threshold + k - 1));
  }
  std::vector<FieldElement> xs;
  xs.reserve(shares.size());
  for (const ShareVector& sv : shares) xs.push_back(sv.x);
  const PackingLayout layout = PackingLayout::Standard(k, 0);
  CheckDistinctNonSecretPoints(xs, layout.secret_points);
  auto basis = CachedLagrangeBasis(field, xs, layout.secret_points);

  std::vector<FieldElement> out(size_t{chunks} * k);
  std::vector<FieldElement> column(shares.size());
  for (uint32_t c = 0; c < chunks; ++c) {
    for (size_t s = 0; s < shares.size(); ++s) column[s] = shares[s].values[c];
    basis->Apply(field, column, std::span(out.data() + size_t{c} * k, k));
  }
  out.resize(first.vector_length);
  return out;
}

void AddShareVectorInPlace(ShareVector& acc, const ShareVector& v,
                           const PrimeField& field) {
  if (acc.x != v.x || acc.vector_length != v.vector_length ||
      acc.threshold != v.threshold || acc.pack_width != v.pack_width ||
      acc.values.size() != v.values.size()) {
    Fail(ErrorCode::kPointMismatch, "share vectors are not aligned");
  }
  field.AddInPlace(acc.values, v.values);
}

ShareVector AddShareVectors(const ShareVector& a, const ShareVector& b,
                            const PrimeField& field) {
  ShareVector out = a;
  AddShareVectorInPlace(out, b, field);
  return out;
}

}  // namespace dlagg
