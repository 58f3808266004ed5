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

#include "dlagg/shamir/lagrange.h"

#include <map>
#include <string>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "dlagg/common/error.h"

namespace dlagg {
namespace {

constexpr size_t kMaxCacheEntries = 4096;

struct CacheKey {
  uint64_t modulus;
  std::vector<uint64_t> sources;
  std::vector<uint64_t> targets;

  friend bool operator<(const CacheKey& a, const CacheKey& b) {
    return std::tie(a.modulus, a.sources, a.targets) <
           std::tie(b.modulus, b.sources, b.targets);
  }
};

struct Cache {
  std::shared_mutex mu;
  std::map<CacheKey, std::shared_ptr<const LagrangeBasis>> entries;
};

Cache& GlobalCache() {
  static Cache* cache = new Cache();
  return *cache;
}

}  // namespace

LagrangeBasis::LagrangeBasis(const PrimeField& field,
                             std::span<const FieldElement> sources,
                             std::span<const FieldElement> targets)
    : num_sources_(sources.size()),
      num_targets_(targets.size()),
      coeffs_(sources.size() * targets.size()) {
  const size_t s_count = sources.size();
  if (s_count == 0) Fail(ErrorCode::kNotEnoughShares, "empty source set");
  for (size_t a = 0; a < s_count; ++a) {
    for (size_t b = a + 1; b < s_count; ++b) {
      if (sources[a] == sources[b]) {
        Fail(ErrorCode::kDuplicatePoint,
             "duplicate evaluation point " + std::to_string(sources[a].value));
      }
    }
  }
  // denom[s] = prod_{j != s} (x_s - x_j)
  std::vector<FieldElement> denom(s_count, FieldElement{1});
  for (size_t s = 0; s < s_count; ++s) {
    for (size_t j = 0; j < s_count; ++j) {
      if (j != s) denom[s] = field.Mul(denom[s], field.Sub(sources[s], sources[j]));
    }
  }
  std::vector<FieldElement> scratch(s_count);
  for (size_t t = 0; t < targets.size(); ++t) {
    const FieldElement z = targets[t];
    FieldElement* row = &coeffs_[t * s_count];
    size_t hit = s_count;
    for (size_t s = 0; s < s_count; ++s) {
      if (sources[s] == z) hit = s;
    }
    if (hit != s_count) {
      row[hit] = FieldElement{1};
      continue;
    }
    FieldElement numerator{1};
    for (size_t s = 0; s < s_count; ++s) {
      FieldElement diff = field.Sub(z, sources[s]);
      numerator = field.Mul(numerator, diff);
      scratch[s] = field.Mul(diff, denom[s]);
    }
    field.BatchInverse(scratch);
    for (size_t s = 0; s < s_count; ++s) {
      row[s] = field.Mul(numerator, scratch[s]);
    }
  }
}

void LagrangeBasis::Apply(const PrimeField& field,
                          std::span<const FieldElement> values,
                          std::span<FieldElement> out) const {
  if (values.size() != num_sources_ || out.size() != num_targets_) {
    Fail(ErrorCode::kDimensionMismatch, "Lagrange basis dimension mismatch");
  }
  for (size_t t = 0; t < num_targets_; ++t) {
    const FieldElement* row = &coeffs_[t * num_sources_];
    unsigned __int128 acc = 0;
    for (size_t s = 0; s < num_sources_; ++s) {
      acc += field.MulRaw(row[s].value, values[s].value);
    }
    out[t].value = field.Reduce128(acc);
  }
  auto& counts = ThreadFieldOpCounts();
  counts.multiplications += num_targets_ * num_sources_;
  counts.additions += num_targets_ * num_sources_;
}

std::shared_ptr<const LagrangeBasis> CachedLagrangeBasis(
    const PrimeField& field, std::span<const FieldElement> sources,
    std::span<const FieldElement> targets) {
  CacheKey key{field.modulus(), {}, {}};
  key.sources.reserve(sources.size());
  for (FieldElement s : sources) key.sources.push_back(s.value);
  key.targets.reserve(targets.size());
  for (FieldElement t : targets) key.targets.push_back(t.value);

  Cache& cache = GlobalCache();
  {
    std::shared_lock lock(cache.mu);
    auto it = cache.entries.find(key);
    if (it != cache.entries.end()) return it->second;
  }
  const FieldOpCounts saved = ThreadFieldOpCounts();
  auto basis = std::make_shared<const LagrangeBasis>(field, sources, targets);
  ThreadFieldOpCounts() = saved;

  std::unique_lock lock(cache.mu);
  if (cache.entries.size() >= kMaxCacheEntries) cache.entries.clear();
  auto [it, inserted] = cache.entries.emplace(std::move(key), basis);
  return it->second;
}

size_t LagrangeCacheSize() {
  Cache& cache = GlobalCache();
  std::shared_lock lock(cache.mu);
  return cache.entries.size();
}

void ClearLagrangeCache() {
  Cache& cache = GlobalCache();
  std::unique_lock lock(cache.mu);
  cache.entries.clear();
}

}  // namespace dlagg
