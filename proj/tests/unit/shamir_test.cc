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

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "dlagg/common/error.h"
#include "dlagg/common/seeded_random.h"
#include "dlagg/common/sha256.h"
#include "dlagg/shamir/lagrange.h"
#include "dlagg/shamir/packed.h"
#include "dlagg/shamir/shamir.h"
#include "test_oracles.h"

namespace dlagg {
namespace {

using testing::EvalPoly;
using testing::Interpolate;

SeededRandomSource Rng(std::string_view label, uint32_t index = 0) {
  return SeededRandomSource(DeriveSeed(77, label, index));
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidConfig;
}

ShareSet Subset(const ShareSet& set, const std::vector<size_t>& idx) {
  ShareSet out{{}, set.threshold, set.pack_width};
  for (size_t i : idx) out.shares.push_back(set.shares[i]);
  return out;
}

// Every subset of {0..n-1} of size r, in lexicographic order.
std::vector<std::vector<size_t>> Subsets(size_t n, size_t r) {
  std::vector<std::vector<size_t>> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + r, true);
  do {
    std::vector<size_t> s;
    for (size_t i = 0; i < n; ++i) {
      if (pick[i]) s.push_back(i);
    }
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

TEST(ShamirShareTest, ThresholdOneIsConstant) {
  const PrimeField field(127);
  auto rng = Rng("t1");
  const ShareSet set = ShamirShare(field.FromUint(42), 1, 6, field, rng);
  ASSERT_EQ(set.shares.size(), 6u);
  for (const Share& s : set.shares) EXPECT_EQ(s.y.value, 42u);
}

TEST(ShamirShareTest, AnyThreeOfFiveReconstruct) {
  const PrimeField field(17);
  auto rng = Rng("3of5");
  const ShareSet set = ShamirShare(field.FromUint(5), 3, 5, field, rng);
  for (const auto& idx : Subsets(5, 3)) {
    std::vector<uint64_t> xs, ys;
    for (size_t i : idx) {
      xs.push_back(set.shares[i].x.value);
      ys.push_back(set.shares[i].y.value);
    }
    EXPECT_EQ(Interpolate(xs, ys, 0, 17), 5u);
    EXPECT_EQ(ShamirReconstruct(Subset(set, idx), field).value, 5u);
  }
}

TEST(ShamirShareTest, DefaultThreshold) {
  EXPECT_EQ(DefaultThreshold(10), 6u);
  EXPECT_EQ(DefaultThreshold(5), 3u);
  EXPECT_EQ(DefaultThreshold(4), 3u);
}

TEST(ShamirShareTest, BadThreshold) {
  const PrimeField field(17);
  auto rng = Rng("bad");
  EXPECT_EQ(CodeOf([&] { ShamirShare(field.FromUint(1), 0, 5, field, rng); }),
            ErrorCode::kBadThreshold);
  EXPECT_EQ(CodeOf([&] { ShamirShare(field.FromUint(1), 6, 5, field, rng); }),
            ErrorCode::kBadThreshold);
}

TEST(ShamirShareTest, SharesLieOnDegreeTMinusOnePolynomial) {
  const PrimeField field(127);
  auto rng = Rng("degree");
  const ShareSet set = ShamirShare(field.FromUint(9), 4, 8, field, rng);
  std::vector<uint64_t> xs, ys;
  for (size_t i = 0; i < 4; ++i) {
    xs.push_back(set.shares[i].x.value);
    ys.push_back(set.shares[i].y.value);
  }
  for (size_t i = 4; i < 8; ++i) {
    EXPECT_EQ(Interpolate(xs, ys, set.shares[i].x.value, 127), set.shares[i].y.value);
  }
}

TEST(ShamirReconstructTest, ZeroSecret) {
  const PrimeField field;
  auto rng = Rng("zero");
  EXPECT_EQ(ShamirReconstruct(ShamirShare(FieldElement{0}, 3, 5, field, rng), field).value, 0u);
}

TEST(ShamirReconstructTest, KnownPolynomial) {
  const std::vector<uint64_t> coeffs = {5, 2, 3};
  ShareSet set{{}, 3, 1};
  for (uint64_t x = 1; x <= 3; ++x) {
    set.shares.push_back({{x}, {EvalPoly(coeffs, x, 17)}});
  }
  EXPECT_EQ(ShamirReconstruct(set, PrimeField(17)).value, 5u);
}

TEST(ShamirReconstructTest, SubsetEqualsFullSet) {
  const PrimeField field;
  auto rng = Rng("subset");
  const FieldElement secret = rng.UniformElement(field);
  const ShareSet set = ShamirShare(secret, 4, 9, field, rng);
  EXPECT_EQ(ShamirReconstruct(set, field), secret);
  EXPECT_EQ(ShamirReconstruct(Subset(set, {8, 1, 5, 3}), field), secret);
}

TEST(ShamirReconstructTest, Errors) {
  const PrimeField field(17);
  auto rng = Rng("errors");
  const ShareSet set = ShamirShare(field.FromUint(3), 3, 5, field, rng);
  EXPECT_EQ(CodeOf([&] { ShamirReconstruct(Subset(set, {0, 1}), field); }),
            ErrorCode::kNotEnoughShares);
  EXPECT_EQ(CodeOf([&] { ShamirReconstruct(Subset(set, {0, 1, 1}), field); }),
            ErrorCode::kDuplicatePoint);
}

TEST(ShareAddTest, AddZeroSharesIsIdentity) {
  const PrimeField field;
  auto rng = Rng("add-zero");
  const ShareSet a = ShamirShare(field.FromUint(1234), 3, 5, field, rng);
  const ShareSet z = ShamirShare(FieldElement{0}, 3, 5, field, rng);
  EXPECT_EQ(ShamirReconstruct(AddShares(a, z, field), field).value, 1234u);
}

TEST(ShareAddTest, FiveAndNine) {
  const PrimeField field(17);
  auto rng = Rng("5+9");
  const ShareSet a = ShamirShare(field.FromUint(5), 3, 5, field, rng);
  const ShareSet b = ShamirShare(field.FromUint(9), 3, 5, field, rng);
  EXPECT_EQ(ShamirReconstruct(AddShares(a, b, field), field).value, (5u + 9u) % 17u);
}

TEST(ShareAddTest, FiveClients) {
  const PrimeField field;
  auto rng = Rng("five");
  ShareSet acc = ShamirShare(FieldElement{0}, 3, 5, field, rng);
  uint64_t plain = 0;
  for (uint64_t s = 1; s <= 5; ++s) {
    acc = AddShares(acc, ShamirShare(field.FromUint(s), 3, 5, field, rng), field);
    plain += s;
  }
  EXPECT_EQ(ShamirReconstruct(acc, field).value, plain);
}

TEST(ShareAddTest, PointMismatch) {
  const PrimeField field(17);
  auto rng = Rng("mismatch");
  const ShareSet a = ShamirShare(field.FromUint(1), 2, 4, field, rng);
  const ShareSet b = ShamirShare(field.FromUint(2), 2, 4, field, rng);
  EXPECT_EQ(CodeOf([&] { AddShares(Subset(a, {0, 1}), Subset(b, {0, 2}), field); }),
            ErrorCode::kPointMismatch);
  EXPECT_EQ(CodeOf([&] { AddShares(a, Subset(b, {0, 1}), field); }),
            ErrorCode::kPointMismatch);
}

TEST(ShamirProperty, DistinctSubsetsAgree) {
  for (uint64_t q : {uint64_t{17}, uint64_t{127}, PrimeField::kMersenne61}) {
    const PrimeField field(q);
    auto rng = Rng("agree", static_cast<uint32_t>(q % 1000));
    for (int trial = 0; trial < 20; ++trial) {
      const uint32_t n = 3 + static_cast<uint32_t>(rng.UniformBelow(5));
      const uint32_t t = 1 + static_cast<uint32_t>(rng.UniformBelow(n));
      const FieldElement secret = rng.UniformElement(field);
      const ShareSet set = ShamirShare(secret, t, n, field, rng);
      for (const auto& idx : Subsets(n, t)) {
        ASSERT_EQ(ShamirReconstruct(Subset(set, idx), field), secret);
      }
    }
  }
}

TEST(ShamirProperty, Homomorphism) {
  const PrimeField field;
  auto rng = Rng("homomorphism");
  for (int trial = 0; trial < 200; ++trial) {
    const FieldElement a = rng.UniformElement(field);
    const FieldElement b = rng.UniformElement(field);
    const ShareSet sum = AddShares(ShamirShare(a, 3, 6, field, rng),
                                   ShamirShare(b, 3, 6, field, rng), field);
    EXPECT_EQ(ShamirReconstruct(sum, field).value,
              static_cast<uint64_t>((static_cast<unsigned __int128>(a.value) + b.value) %
                                    field.modulus()));
  }
}

TEST(ShamirProperty, DeterministicGivenSeed) {
  const PrimeField field;
  auto r1 = Rng("det");
  auto r2 = Rng("det");
  const ShareSet a = ShamirShare(field.FromUint(7), 4, 7, field, r1);
  const ShareSet b = ShamirShare(field.FromUint(7), 4, 7, field, r2);
  EXPECT_EQ(a.shares, b.shares);
}

TEST(PackingLayoutTest, StandardPoints) {
  const PackingLayout layout = PackingLayout::Standard(2, 4);
  ASSERT_EQ(layout.pack_width(), 2u);
  ASSERT_EQ(layout.num_shares(), 4u);
  EXPECT_EQ(layout.secret_points[0].value, 1u);
  EXPECT_EQ(layout.secret_points[1].value, 2u);
  for (uint32_t j = 0; j < 4; ++j) EXPECT_EQ(layout.share_points[j].value, 3u + j);
  EXPECT_NO_THROW(layout.Validate(PrimeField(127)));
}

TEST(PackingLayoutTest, OverlapRejected) {
  PackingLayout layout = PackingLayout::Standard(2, 3);
  layout.share_points[0] = layout.secret_points[1];
  EXPECT_EQ(CodeOf([&] { layout.Validate(PrimeField(127)); }), ErrorCode::kBadPacking);
}

TEST(PackedShareTest, WidthOneMatchesPlainSecrecyThreshold) {
  const PrimeField field(127);
  auto rng = Rng("k1");
  const FieldElement secret{33};
  const PackingLayout layout = PackingLayout::Standard(1, 5);
  const ShareSet set = PackedShare(std::span(&secret, 1), 3, 5, layout, field, rng);
  EXPECT_EQ(set.reconstruction_size(), 3u);
  EXPECT_EQ(PackedReconstruct(Subset(set, {1, 2, 4}), layout, field)[0], secret);
  EXPECT_EQ(CodeOf([&] { PackedReconstruct(Subset(set, {1, 2}), layout, field); }),
            ErrorCode::kNotEnoughShares);
}

TEST(PackedShareTest, AnyThreeOfFourRecoverBoth) {
  const PrimeField field(127);
  auto rng = Rng("k2");
  const std::vector<FieldElement> secrets = {{11}, {99}};
  const PackingLayout layout = PackingLayout::Standard(2, 4);
  const ShareSet set = PackedShare(secrets, 2, 4, layout, field, rng);
  for (const auto& idx : Subsets(4, 3)) {
    std::vector<uint64_t> xs, ys;
    for (size_t i : idx) {
      xs.push_back(set.shares[i].x.value);
      ys.push_back(set.shares[i].y.value);
    }
    EXPECT_EQ(Interpolate(xs, ys, 1, 127), 11u);
    EXPECT_EQ(Interpolate(xs, ys, 2, 127), 99u);
    EXPECT_EQ(PackedReconstruct(Subset(set, idx), layout, field), secrets);
  }
}

TEST(PackedShareTest, BadPacking) {
  const PrimeField field(127);
  auto rng = Rng("badpack");
  const std::vector<FieldElement> secrets(4, FieldElement{1});
  const PackingLayout layout = PackingLayout::Standard(4, 4);
  EXPECT_EQ(CodeOf([&] { PackedShare(secrets, 2, 4, layout, field, rng); }),
            ErrorCode::kBadPacking);
}

TEST(PackedReconstructTest, ZeroSecrets) {
  const PrimeField field(127);
  auto rng = Rng("pzero");
  const std::vector<FieldElement> secrets(3, FieldElement{0});
  const PackingLayout layout = PackingLayout::Standard(3, 6);
  const ShareSet set = PackedShare(secrets, 3, 6, layout, field, rng);
  EXPECT_EQ(PackedReconstruct(set, layout, field), secrets);
}

TEST(PackedReconstructTest, RandomWidthFour) {
  const PrimeField field(127);
  auto rng = Rng("k4");
  const PackingLayout layout = PackingLayout::Standard(4, 8);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<FieldElement> secrets(4);
    for (auto& s : secrets) s = rng.UniformElement(field);
    const ShareSet set = PackedShare(secrets, 3, 8, layout, field, rng);
    EXPECT_EQ(PackedReconstruct(Subset(set, {7, 0, 2, 5, 6, 3}), layout, field), secrets);
  }
}

TEST(PackedReconstructTest, SumOfSharings) {
  const PrimeField field;
  auto rng = Rng("psum");
  const PackingLayout layout = PackingLayout::Standard(3, 7);
  std::vector<FieldElement> a(3), b(3), sum(3);
  for (int i = 0; i < 3; ++i) {
    a[i] = rng.UniformElement(field);
    b[i] = rng.UniformElement(field);
    sum[i] = field.Add(a[i], b[i]);
  }
  ShareSet sa = PackedShare(a, 3, 7, layout, field, rng);
  const ShareSet sb = PackedShare(b, 3, 7, layout, field, rng);
  for (size_t i = 0; i < sa.shares.size(); ++i) {
    sa.shares[i].y = field.Add(sa.shares[i].y, sb.shares[i].y);
  }
  EXPECT_EQ(PackedReconstruct(sa, layout, field), sum);
}

TEST(PackedProperty, RoundTripForAllWidths) {
  const PrimeField field;
  auto rng = Rng("widths");
  const uint32_t n = 10;
  for (uint32_t t = 1; t <= n; ++t) {
    for (uint32_t k = 1; k <= n - t + 1; ++k) {
      std::vector<FieldElement> secrets(k);
      for (auto& s : secrets) s = rng.UniformElement(field);
      const PackingLayout layout = PackingLayout::Standard(k, n);
      const ShareSet set = PackedShare(secrets, t, n, layout, field, rng);
      ASSERT_EQ(PackedReconstruct(set, layout, field), secrets) << "t=" << t << " k=" << k;
    }
  }
}

TEST(ShareVectorTest, ChunkCountPerRecipient) {
  const PrimeField field;
  auto rng = Rng("chunks");
  const std::vector<FieldElement> w = {{1}, {2}, {3}, {4}};
  const auto shares = ShareVectorPacked(w, 2, 3, 2, field, rng);
  ASSERT_EQ(shares.size(), 3u);
  for (uint32_t j = 0; j < 3; ++j) {
    EXPECT_EQ(shares[j].values.size(), ChunkCount(4, 2));
    EXPECT_EQ(shares[j].x, RecipientPoint(j, 2));
    EXPECT_EQ(shares[j].vector_length, 4u);
  }
}

TEST(ShareVectorTest, RoundTripRandomVectors) {
  const PrimeField field;
  auto rng = Rng("vec");
  for (uint32_t k : {1u, 3u, 4u}) {
    std::vector<FieldElement> w(10);
    for (auto& v : w) v = rng.UniformElement(field);
    const auto shares = ShareVectorPacked(w, 3, 7, k, field, rng);
    EXPECT_EQ(ReconstructVector(shares, field), w);
    const std::vector<ShareVector> some = {shares[6], shares[1], shares[4], shares[2],
                                           shares[0], shares[3]};
    EXPECT_EQ(ReconstructVector(std::span(some).first(3 + k - 1), field), w);
  }
}

TEST(ShareVectorTest, PayloadBytes) {
  const PrimeField field;
  auto rng = Rng("bytes");
  const std::vector<FieldElement> w(10, FieldElement{5});
  const auto shares = ShareVectorPacked(w, 2, 5, 4, field, rng);
  EXPECT_EQ(shares[0].values.size() * 8, ((10u + 4u - 1u) / 4u) * 8u);
}

TEST(ShareVectorTest, AdditionAndMismatch) {
  const PrimeField field;
  auto rng = Rng("vadd");
  const std::vector<FieldElement> a = {{1}, {2}, {3}};
  const std::vector<FieldElement> b = {{10}, {20}, {30}};
  auto sa = ShareVectorPacked(a, 2, 4, 2, field, rng);
  const auto sb = ShareVectorPacked(b, 2, 4, 2, field, rng);
  for (size_t j = 0; j < sa.size(); ++j) AddShareVectorInPlace(sa[j], sb[j], field);
  EXPECT_EQ(ReconstructVector(sa, field), (std::vector<FieldElement>{{11}, {22}, {33}}));
  EXPECT_EQ(CodeOf([&] { AddShareVectors(sa[0], sb[1], field); }), ErrorCode::kPointMismatch);
}

TEST(ShareVectorTest, TooFewShares) {
  const PrimeField field;
  auto rng = Rng("vfew");
  const std::vector<FieldElement> w(5, FieldElement{1});
  const auto shares = ShareVectorPacked(w, 3, 6, 2, field, rng);
  EXPECT_EQ(CodeOf([&] { ReconstructVector(std::span(shares).first(3), field); }),
            ErrorCode::kNotEnoughShares);
}

TEST(LagrangeCacheTest, ReusesBasis) {
  const PrimeField field(127);
  ClearLagrangeCache();
  const std::vector<FieldElement> src = {{3}, {4}, {5}};
  const FieldElement zero{0};
  auto a = CachedLagrangeBasis(field, src, std::span(&zero, 1));
  auto b = CachedLagrangeBasis(field, src, std::span(&zero, 1));
  EXPECT_EQ(a.get(), b.get());
  EXPECT_EQ(LagrangeCacheSize(), 1u);
}

}  // namespace
}  // namespace dlagg
