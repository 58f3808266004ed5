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

#ifndef DLAGG_FIELD_PRIME_FIELD_H_
#define DLAGG_FIELD_PRIME_FIELD_H_

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "dlagg/common/bytes.h"

namespace dlagg {

// Element of F_q in canonical form, 0 <= value < q. The modulus lives in the
// PrimeField that produced it.
struct FieldElement {
  uint64_t value = 0;

  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

enum class FieldOp { kAdd, kSub, kMul };

// Per-thread tallies of field arithmetic. The simulator snapshots these around
// each client activation to attribute work to clients without locking.
struct FieldOpCounts {
  uint64_t additions = 0;
  uint64_t multiplications = 0;
  uint64_t inversions = 0;

  uint64_t total() const { return additions + multiplications + inversions; }
  FieldOpCounts& operator+=(const FieldOpCounts& o);
  friend FieldOpCounts operator-(FieldOpCounts a, const FieldOpCounts& b);
  friend bool operator==(const FieldOpCounts&, const FieldOpCounts&) = default;
};

namespace internal {
extern thread_local FieldOpCounts tls_field_op_counts;
}  // namespace internal

inline FieldOpCounts& ThreadFieldOpCounts() {
  return internal::tls_field_op_counts;
}

// Prime field F_q for q < 2^63. Reduction takes a shift-and-add path when q
// is a Mersenne prime.
class PrimeField {
 public:
  static constexpr uint64_t kMersenne61 = (uint64_t{1} << 61) - 1;

  // Throws InvalidConfig unless q is a prime below 2^63.
  explicit PrimeField(uint64_t q = kMersenne61);

  uint64_t modulus() const { return q_; }
  // Bits needed to represent q - 1.
  unsigned bit_width() const { return bit_width_; }
  bool is_mersenne() const { return mersenne_bits_ != 0; }

  FieldElement FromUint(uint64_t x) const { return {x % q_}; }
  FieldElement FromInt(int64_t x) const;
  // Lift to (-q/2, q/2].
  int64_t ToSigned(FieldElement a) const;

  FieldElement Add(FieldElement a, FieldElement b) const {
    ++internal::tls_field_op_counts.additions;
    return {AddRaw(a.value, b.value)};
  }
  FieldElement Sub(FieldElement a, FieldElement b) const {
    ++internal::tls_field_op_counts.additions;
    return {SubRaw(a.value, b.value)};
  }
  FieldElement Neg(FieldElement a) const {
    return {a.value == 0 ? 0 : q_ - a.value};
  }
  FieldElement Mul(FieldElement a, FieldElement b) const {
    ++internal::tls_field_op_counts.multiplications;
    return {MulRaw(a.value, b.value)};
  }
  FieldElement Apply(FieldElement a, FieldElement b, FieldOp op) const;

  // Throws ZeroInverse for a = 0.
  FieldElement Inverse(FieldElement a) const;
  FieldElement Pow(FieldElement base, uint64_t exponent) const;

  // In-place inversion of every element (Montgomery's trick, one inversion).
  void BatchInverse(std::span<FieldElement> values) const;

  void AddInPlace(std::span<FieldElement> acc,
                  std::span<const FieldElement> v) const;
  void SubInPlace(std::span<FieldElement> acc,
                  std::span<const FieldElement> v) const;

  // Reduce a 128-bit value.
  uint64_t Reduce128(unsigned __int128 x) const;

  uint64_t AddRaw(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  uint64_t SubRaw(uint64_t a, uint64_t b) const {
    return a >= b ? a - b : a + (q_ - b);
  }
  uint64_t MulRaw(uint64_t a, uint64_t b) const {
    return Reduce128(static_cast<unsigned __int128>(a) * b);
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    return a.q_ == b.q_;
  }

 private:
  uint64_t q_;
  unsigned bit_width_;
  unsigned mersenne_bits_;
};

bool IsPrime64(uint64_t n);

// 8-byte big-endian element encoding used on the wire.
void AppendElement(Bytes& out, FieldElement e);
// Throws MalformedMessage if the decoded value is not below q.
FieldElement ReadElement(class ByteReader& in, const PrimeField& field);

}  // namespace dlagg

#endif  // DLAGG_FIELD_PRIME_FIELD_H_
