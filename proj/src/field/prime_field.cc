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

#include "dlagg/field/prime_field.h"

#include <bit>
#include <string>

#include "dlagg/common/error.h"

namespace dlagg {

namespace internal {
thread_local FieldOpCounts tls_field_op_counts;
}  // namespace internal

FieldOpCounts& FieldOpCounts::operator+=(const FieldOpCounts& o) {
  additions += o.additions;
  multiplications += o.multiplications;
  inversions += o.inversions;
  return *this;
}

FieldOpCounts operator-(FieldOpCounts a, const FieldOpCounts& b) {
  a.additions -= b.additions;
  a.multiplications -= b.multiplications;
  a.inversions -= b.inversions;
  return a;
}

namespace {

uint64_t MulMod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t PowMod(uint64_t base, uint64_t e, uint64_t m) {
  uint64_t result = 1 % m;
  base %= m;
  while (e != 0) {
    if (e & 1) result = MulMod(result, base, m);
    base = MulMod(base, base, m);
    e >>= 1;
  }
  return result;
}

}  // namespace

// Deterministic Miller-Rabin; these bases are exact for all n < 3.3e24.
bool IsPrime64(uint64_t n) {
  if (n < 2) return false;
  constexpr uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (uint64_t p : kBases) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : kBases) {
    uint64_t x = PowMod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = MulMod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(uint64_t q) : q_(q) {
  if (q >= (uint64_t{1} << 63) || !IsPrime64(q)) {
    Fail(ErrorCode::kInvalidConfig,
         "field modulus must be a prime below 2^63, got " + std::to_string(q));
  }
  bit_width_ = static_cast<unsigned>(std::bit_width(q - 1));
  mersenne_bits_ = ((q & (q + 1)) == 0) ? std::bit_width(q) : 0;
}

uint64_t PrimeField::Reduce128(unsigned __int128 x) const {
  if (mersenne_bits_ != 0) {
    // Two folds bring any 128-bit value below q + 2^7.
    unsigned __int128 folded = (x & q_) + (x >> mersenne_bits_);
    uint64_t r = static_cast<uint64_t>((folded & q_) + (folded >> mersenne_bits_));
    return r >= q_ ? r - q_ : r;
  }
  return static_cast<uint64_t>(x % q_);
}

FieldElement PrimeField::FromInt(int64_t x) const {
  if (x >= 0) return {static_cast<uint64_t>(x) % q_};
  uint64_t mag = static_cast<uint64_t>(-(x + 1)) + 1;
  uint64_t r = mag % q_;
  return {r == 0 ? 0 : q_ - r};
}

int64_t PrimeField::ToSigned(FieldElement a) const {
  if (a.value > q_ / 2) return -static_cast<int64_t>(q_ - a.value);
  return static_cast<int64_t>(a.value);
}

FieldElement PrimeField::Apply(FieldElement a, FieldElement b,
                               FieldOp op) const {
  switch (op) {
    case FieldOp::kAdd:
      return Add(a, b);
    case FieldOp::kSub:
      return Sub(a, b);
    case FieldOp::kMul:
      return Mul(a, b);
  }
  return {};
}

FieldElement PrimeField::Inverse(FieldElement a) const {
  if (a.value == 0) Fail(ErrorCode::kZeroInverse, "inverse of zero");
  ++internal::tls_field_op_counts.inversions;
  // Extended Euclid on signed 128-bit to stay exact for q < 2^63.
  __int128 t = 0, new_t = 1;
  __int128 r = q_, new_r = a.value;
  while (new_r != 0) {
    __int128 quotient = r / new_r;
    __int128 tmp = t - quotient * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quotient * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += q_;
  return {static_cast<uint64_t>(t)};
}

FieldElement PrimeField::Pow(FieldElement base, uint64_t exponent) const {
  FieldElement result{1 % q_};
  while (exponent != 0) {
    if (exponent & 1) result = Mul(result, base);
    base = Mul(base, base);
    exponent >>= 1;
  }
  return result;
}

void PrimeField::BatchInverse(std::span<FieldElement> values) const {
  if (values.empty()) return;
  std::vector<FieldElement> prefix(values.size());
  FieldElement acc{1 % q_};
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i].value == 0) Fail(ErrorCode::kZeroInverse, "batch inverse");
    prefix[i] = acc;
    acc = Mul(acc, values[i]);
  }
  FieldElement inv = Inverse(acc);
  for (size_t i = values.size(); i-- > 0;) {
    FieldElement original = values[i];
    values[i] = Mul(inv, prefix[i]);
    inv = Mul(inv, original);
  }
}

void PrimeField::AddInPlace(std::span<FieldElement> acc,
                            std::span<const FieldElement> v) const {
  if (acc.size() != v.size()) {
    Fail(ErrorCode::kDimensionMismatch, "vector add of unequal lengths");
  }
  for (size_t i = 0; i < acc.size(); ++i) {
    acc[i].value = AddRaw(acc[i].value, v[i].value);
  }
  internal::tls_field_op_counts.additions += acc.size();
}

void PrimeField::SubInPlace(std::span<FieldElement> acc,
                            std::span<const FieldElement> v) const {
  if (acc.size() != v.size()) {
    Fail(ErrorCode::kDimensionMismatch, "vector sub of unequal lengths");
  }
  for (size_t i = 0; i < acc.size(); ++i) {
    acc[i].value = SubRaw(acc[i].value, v[i].value);
  }
  internal::tls_field_op_counts.additions += acc.size();
}

void AppendElement(Bytes& out, FieldElement e) { AppendU64BE(out, e.value); }

FieldElement ReadElement(ByteReader& in, const PrimeField& field) {
  uint64_t v = in.ReadU64();
  if (v >= field.modulus()) {
    Fail(ErrorCode::kMalformedMessage, "field element out of range");
  }
  return {v};
}

}  // namespace dlagg
