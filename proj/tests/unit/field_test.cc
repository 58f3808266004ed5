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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "dlagg/common/error.h"
#include "dlagg/common/seeded_random.h"
#include "dlagg/common/sha256.h"
#include "dlagg/field/fixed_point.h"
#include "dlagg/field/prime_field.h"
#include "test_oracles.h"

namespace dlagg {
namespace {

using testing::BruteInverse;

TEST(PrimeFieldTest, AddWrapsAtModulus) {
  const PrimeField field;
  EXPECT_EQ(field.Add(field.FromUint(field.modulus() - 1), field.FromUint(1)).value, 0u);
}

TEST(PrimeFieldTest, SmallFieldArithmetic) {
  const PrimeField f17(17);
  EXPECT_EQ(f17.Mul(f17.FromUint(3), f17.FromUint(5)).value, 3u * 5u % 17u);
  EXPECT_EQ(f17.Sub(f17.FromUint(2), f17.FromUint(5)).value, (2u + 17u - 5u) % 17u);
}

TEST(PrimeFieldTest, DefaultModulusIsMersenne61) {
  const PrimeField field;
  EXPECT_EQ(field.modulus(), (uint64_t{1} << 61) - 1);
  EXPECT_EQ(field.bit_width(), 61u);
  EXPECT_TRUE(field.is_mersenne());
}

TEST(PrimeFieldTest, RejectsComposite) {
  EXPECT_THROW(PrimeField(15), Error);
}

TEST(PrimeFieldTest, InverseMatchesBruteForce) {
  EXPECT_EQ(PrimeField(17).Inverse(PrimeField(17).FromUint(1)).value, 1u);
  EXPECT_EQ(PrimeField(7).Inverse(PrimeField(7).FromUint(2)).value, BruteInverse(2, 7));
  EXPECT_EQ(PrimeField(17).Inverse(PrimeField(17).FromUint(3)).value, BruteInverse(3, 17));
  for (uint64_t q : {7u, 17u, 127u}) {
    const PrimeField f(q);
    for (uint64_t a = 1; a < q; ++a) {
      EXPECT_EQ(f.Inverse(f.FromUint(a)).value, BruteInverse(a, q));
    }
  }
}

TEST(PrimeFieldTest, ZeroHasNoInverse) {
  const PrimeField field(17);
  try {
    field.Inverse(field.FromUint(0));
    FAIL() << "expected ZeroInverse";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroInverse);
  }
}

TEST(PrimeFieldTest, BatchInverseMatchesSingle) {
  const PrimeField field;
  SeededRandomSource rng(DeriveSeed(1, "batch"));
  std::vector<FieldElement> values(50);
  for (auto& v : values) {
    do {
      v = rng.UniformElement(field);
    } while (v.value == 0);
  }
  auto batch = values;
  field.BatchInverse(batch);
  for (size_t i = 0; i < values.size(); ++i) {
    EXPECT_EQ(batch[i], field.Inverse(values[i]));
  }
}

TEST(PrimeFieldProperty, MulByInverseIsOne) {
  for (uint64_t q : {uint64_t{17}, uint64_t{127}, PrimeField::kMersenne61}) {
    const PrimeField field(q);
    SeededRandomSource rng(DeriveSeed(q, "inverse-property"));
    for (int i = 0; i < 500; ++i) {
      const FieldElement a = rng.UniformElement(field);
      if (a.value == 0) continue;
      EXPECT_EQ(field.Mul(a, field.Inverse(a)).value, 1u);
    }
  }
}

TEST(PrimeFieldProperty, AssociativeAndCommutative) {
  for (uint64_t q : {uint64_t{17}, uint64_t{1000003}, PrimeField::kMersenne61}) {
    const PrimeField field(q);
    SeededRandomSource rng(DeriveSeed(q, "assoc"));
    for (int i = 0; i < 1000; ++i) {
      const FieldElement a = rng.UniformElement(field);
      const FieldElement b = rng.UniformElement(field);
      const FieldElement c = rng.UniformElement(field);
      EXPECT_EQ(field.Add(a, b), field.Add(b, a));
      EXPECT_EQ(field.Mul(a, b), field.Mul(b, a));
      EXPECT_EQ(field.Add(field.Add(a, b), c), field.Add(a, field.Add(b, c)));
      EXPECT_EQ(field.Mul(field.Mul(a, b), c), field.Mul(a, field.Mul(b, c)));
      EXPECT_EQ(field.Mul(a, b).value, testing::MulMod(a.value, b.value, q));
      EXPECT_EQ(field.Sub(a, b).value, (a.value + q - b.value) % q);
    }
  }
}

TEST(PrimeFieldTest, TalliesCountOperations) {
  const PrimeField field(17);
  const FieldOpCounts before = ThreadFieldOpCounts();
  field.Add(field.FromUint(1), field.FromUint(2));
  field.Mul(field.FromUint(3), field.FromUint(4));
  field.Inverse(field.FromUint(5));
  const FieldOpCounts delta = ThreadFieldOpCounts() - before;
  EXPECT_EQ(delta.additions, 1u);
  EXPECT_EQ(delta.multiplications, 1u);
  EXPECT_EQ(delta.inversions, 1u);
}

TEST(FixedPointTest, EncodeExamples) {
  const PrimeField field;
  const FixedPointConfig cfg;
  EXPECT_EQ(EncodeFixedPoint(0.0, cfg, field).value, 0u);
  EXPECT_EQ(EncodeFixedPoint(1.5, cfg, field).value,
            static_cast<uint64_t>(std::llround(1.5 * 65536.0)));
  EXPECT_EQ(EncodeFixedPoint(-1.0, cfg, field).value, field.modulus() - 65536);
}

TEST(FixedPointTest, DecodeExamples) {
  const PrimeField field;
  const FixedPointConfig cfg;
  EXPECT_EQ(DecodeFixedPoint(EncodeFixedPoint(0.25, cfg, field), 1, cfg, field), 0.25);
  const FieldElement sum =
      field.Add(EncodeFixedPoint(1.5, cfg, field), EncodeFixedPoint(-2.0, cfg, field));
  EXPECT_NEAR(DecodeFixedPoint(sum, 2, cfg, field), 1.5 - 2.0, std::ldexp(1.0, -16));
}

TEST(FixedPointTest, SumOfHundredRandomValues) {
  const PrimeField field;
  const FixedPointConfig cfg;
  SeededRandomSource rng(DeriveSeed(3, "fp-sum"));
  FieldElement acc{0};
  double plain = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = 2.0 * rng.UniformDouble() - 1.0;
    plain += x;
    acc = field.Add(acc, EncodeFixedPoint(x, cfg, field));
  }
  EXPECT_NEAR(DecodeFixedPoint(acc, 100, cfg, field), plain, 100 * std::ldexp(1.0, -17));
}

TEST(FixedPointTest, ClipsOutOfRange) {
  const PrimeField field;
  const FixedPointConfig cfg;
  EXPECT_EQ(EncodeFixedPoint(1e9, cfg, field), EncodeFixedPoint(cfg.clip_magnitude, cfg, field));
  EXPECT_EQ(EncodeFixedPoint(-1e9, cfg, field),
            EncodeFixedPoint(-cfg.clip_magnitude, cfg, field));
}

TEST(FixedPointTest, MiddleBandRejected) {
  const PrimeField field;
  const FixedPointConfig cfg;
  try {
    DecodeFixedPoint(FieldElement{field.modulus() / 2}, 1, cfg, field);
    FAIL() << "expected DecodeRange";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDecodeRange);
  }
}

TEST(FixedPointTest, ValidateRejectsSmallField) {
  const FixedPointConfig cfg;
  EXPECT_THROW(cfg.Validate(PrimeField(1000003), 10), Error);
  EXPECT_NO_THROW(cfg.Validate(PrimeField(), 1000));
}

TEST(FixedPointProperty, RoundTripWithinHalfUlp) {
  const PrimeField field;
  const FixedPointConfig cfg;
  SeededRandomSource rng(DeriveSeed(4, "fp-roundtrip"));
  for (int i = 0; i < 2000; ++i) {
    const double x = (2.0 * rng.UniformDouble() - 1.0) * cfg.clip_magnitude;
    const double back = DecodeFixedPoint(EncodeFixedPoint(x, cfg, field), 1, cfg, field);
    EXPECT_LE(std::fabs(back - x), std::ldexp(1.0, -17));
  }
}

TEST(FixedPointProperty, Additivity) {
  const PrimeField field;
  const FixedPointConfig cfg;
  SeededRandomSource rng(DeriveSeed(5, "fp-add"));
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.UniformBelow(1000));
    FieldElement acc{0};
    long double plain = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = (2.0 * rng.UniformDouble() - 1.0) * 1000.0;
      plain += x;
      acc = field.Add(acc, EncodeFixedPoint(x, cfg, field));
    }
    EXPECT_LE(std::fabs(DecodeFixedPoint(acc, n, cfg, field) - static_cast<double>(plain)),
              n * std::ldexp(1.0, -17) + 1e-9);
  }
}

}  // namespace
}  // namespace dlagg
