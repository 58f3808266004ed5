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

#include "dlagg/masking/lwe.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "dlagg/common/error.h"

namespace dlagg {
namespace {

// Products below 2^(2b) can be summed 2^(128 - 2b) at a time in 128 bits.
uint32_t LazyBlock(const PrimeField& field) {
  const unsigned spare = 128 - 2 * field.bit_width();
  return 1u << std::min(spare, 6u);
}

}  // namespace

void LweParams::Validate(bool enforce_min_dimension) const {
  if (m == 0) Fail(ErrorCode::kInvalidConfig, "LWE model size must be >= 1");
  if (!(sigma > 0.0)) Fail(ErrorCode::kInvalidConfig, "LWE sigma must be > 0");
  if (n_lwe == 0 || (enforce_min_dimension && n_lwe < kMinLweDimension)) {
    Fail(ErrorCode::kInvalidConfig,
         "LWE dimension must be at least " + std::to_string(kMinLweDimension));
  }
}

LweMatrix::LweMatrix(uint32_t rows, uint32_t cols,
                     std::vector<FieldElement> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != size_t{rows} * cols) {
    Fail(ErrorCode::kDimensionMismatch, "matrix entry count does not match shape");
  }
}

LweMatrix LweMatrix::Generate(const LweParams& params, const PrimeField& field) {
  return LweMatrix(params.m, params.n_lwe,
                   StreamExpand(params.matrix_seed, kMatrixTag,
                                uint64_t{params.m} * params.n_lwe, field));
}

std::shared_ptr<const LweMatrix> LweMatrix::Shared(const LweParams& params,
                                                   const PrimeField& field) {
  using Key = std::tuple<Digest, uint32_t, uint32_t, uint64_t>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const LweMatrix>> cache;
  const Key key{params.matrix_seed.bytes, params.m, params.n_lwe,
                field.modulus()};
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (cache.size() >= 4) cache.clear();
  auto matrix = std::make_shared<const LweMatrix>(Generate(params, field));
  cache.emplace(key, matrix);
  return matrix;
}

void LweMatrix::MultiplyAccumulate(std::span<const FieldElement> s,
                                   std::span<FieldElement> out, bool subtract,
                                   const PrimeField& field) const {
  if (s.size() != cols_ || out.size() != rows_) {
    Fail(ErrorCode::kDimensionMismatch, "A s dimensions do not agree");
  }
  const uint32_t block = LazyBlock(field);
  const FieldElement* row = entries_.data();
  for (uint32_t i = 0; i < rows_; ++i, row += cols_) {
    uint64_t acc = 0;
    uint32_t j = 0;
    while (j < cols_) {
      const uint32_t stop = std::min(cols_, j + block);
      unsigned __int128 partial = 0;
      for (; j < stop; ++j) {
        partial += static_cast<unsigned __int128>(row[j].value) * s[j].value;
      }
      acc = field.AddRaw(acc, field.Reduce128(partial));
    }
    out[i].value = subtract ? field.SubRaw(out[i].value, acc)
                            : field.AddRaw(out[i].value, acc);
  }
  auto& counts = ThreadFieldOpCounts();
  counts.multiplications += uint64_t{rows_} * cols_;
  counts.additions += uint64_t{rows_} * cols_;
}

std::vector<FieldElement> LweMatrix::Multiply(std::span<const FieldElement> s,
                                              const PrimeField& field) const {
  std::vector<FieldElement> out(rows_);
  MultiplyAccumulate(s, out, false, field);
  return out;
}

std::vector<FieldElement> LweSecret(uint32_t n_lwe, const PrimeField& field,
                                    SeededRandomSource& rng) {
  std::vector<FieldElement> s(n_lwe);
  for (auto& v : s) v = rng.UniformElement(field);
  return s;
}

std::vector<FieldElement> GaussianError(double sigma, uint32_t m,
                                        const PrimeField& field,
                                        SeededRandomSource& rng) {
  std::vector<FieldElement> e(m);
  for (auto& v : e) v = field.FromInt(std::llround(sigma * rng.Gaussian()));
  return e;
}

std::vector<FieldElement> LweMask(std::span<const FieldElement> w,
                                  std::span<const FieldElement> s,
                                  std::span<const FieldElement> e,
                                  const LweMatrix& a, const PrimeField& field) {
  if (w.size() != a.rows() || e.size() != a.rows() || s.size() != a.cols()) {
    Fail(ErrorCode::kDimensionMismatch, "LWE mask operands do not agree");
  }
  std::vector<FieldElement> h(w.begin(), w.end());
  field.AddInPlace(h, e);
  a.MultiplyAccumulate(s, h, false, field);
  return h;
}

}  // namespace dlagg
