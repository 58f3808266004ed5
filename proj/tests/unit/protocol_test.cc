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
#include <functional>
#include <map>
#include <vector>

#include <gtest/gtest.h>

#include "dlagg/common/error.h"
#include "dlagg/common/sha256.h"
#include "dlagg/field/fixed_point.h"
#include "dlagg/oracle/oracle.h"
#include "dlagg/protocol/client.h"
#include "dlagg/protocol/config.h"
#include "dlagg/protocol/messages.h"
#include "dlagg/protocol/rounds.h"
#include "dlagg/simnet/bus.h"
#include "dlagg/simnet/dropout.h"

namespace dlagg {
namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidConfig;
}

RoundConfig Config(ProtocolKind protocol, uint32_t n, uint32_t m, uint32_t t = 0) {
  RoundConfig cfg;
  cfg.protocol = protocol;
  cfg.n = n;
  cfg.m = m;
  cfg.t = t;
  cfg.dh_group = "test-1019";
  cfg.sigma = 1e-6;
  cfg.pack_width = 1;
  return cfg;
}

std::vector<std::vector<double>> Ramp(uint32_t n, uint32_t m, double offset = 1.0) {
  std::vector<std::vector<double>> inputs(n);
  for (uint32_t i = 0; i < n; ++i) inputs[i].assign(m, offset + i);
  return inputs;
}

std::vector<std::vector<double>> RandomInputs(uint32_t n, uint32_t m, uint64_t seed) {
  SeededRandomSource rng(DeriveSeed(seed, "test-inputs"));
  std::vector<std::vector<double>> inputs(n, std::vector<double>(m));
  for (auto& v : inputs) {
    for (double& x : v) x = 2.0 * rng.UniformDouble() - 1.0;
  }
  return inputs;
}

AggregateResult RunWith(const std::vector<std::vector<double>>& inputs, const RoundConfig& cfg,
                    const std::map<uint32_t, Stage>& drops = {}, uint64_t seed = 11,
                    BusOptions options = {}) {
  options.schedule.drop_stage = drops;
  MessageBus bus(options);
  return RunRound(inputs, cfg, seed, 0, bus);
}

void ExpectExact(const AggregateResult& res, const std::vector<std::vector<double>>& inputs,
                 const RoundConfig& cfg) {
  const auto sum = EncodedSum(inputs, res.contributors, cfg.fp, cfg.q);
  ASSERT_EQ(sum.size(), res.field_sum.size());
  for (size_t j = 0; j < sum.size(); ++j) EXPECT_EQ(res.field_sum[j].value, sum[j]);
  const auto avg = PlaintextAggregate(inputs, res.contributors);
  for (size_t j = 0; j < avg.size(); ++j) {
    EXPECT_NEAR(res.average[j], avg[j], std::ldexp(1.0, -15));
  }
}

// ---- configuration -------------------------------------------------------

TEST(RoundConfigTest, DefaultThreshold) {
  EXPECT_EQ(Config(ProtocolKind::kNv, 10, 1).threshold(), 6u);
  EXPECT_EQ(Config(ProtocolKind::kNv, 5, 1).threshold(), 3u);
  EXPECT_EQ(Config(ProtocolKind::kNv, 5, 1, 2).threshold(), 2u);
}

TEST(RoundConfigTest, Validation) {
  EXPECT_NO_THROW(Config(ProtocolKind::kNv, 5, 4, 3).Validate());
  EXPECT_EQ(CodeOf([] { Config(ProtocolKind::kNv, 5, 4, 6).Validate(); }),
            ErrorCode::kBadThreshold);
  EXPECT_EQ(CodeOf([] { Config(ProtocolKind::kPw, 2, 4).Validate(); }),
            ErrorCode::kBadThreshold);
  RoundConfig unclamped = Config(ProtocolKind::kNv, 5, 4, 3);
  unclamped.pack_width = 64;
  EXPECT_EQ(CodeOf([&] { unclamped.Validate(); }), ErrorCode::kBadPacking);
  RoundConfig packed = Config(ProtocolKind::kNv, 5, 4, 3);
  packed.pack_width = 4;
  EXPECT_EQ(CodeOf([&] { packed.Validate(); }), ErrorCode::kBadPacking);
  RoundConfig lwe = Config(ProtocolKind::kLwe, 5, 4);
  lwe.n_lwe = 100;
  EXPECT_THROW(lwe.Validate(), Error);
  EXPECT_EQ(Config(ProtocolKind::kPw, 5, 4).effective_pack_width(), 1u);
  RoundConfig nv = Config(ProtocolKind::kNv, 10, 4, 3);
  nv.pack_width = 4;
  EXPECT_EQ(nv.required_shares(), 6u);
}

TEST(RoundConfigTest, Names) {
  EXPECT_EQ(ProtocolFromName("lwe"), ProtocolKind::kLwe);
  EXPECT_FALSE(ProtocolFromName("x").has_value());
  EXPECT_EQ(StageFromName(StageName(Stage::kUnmask)), Stage::kUnmask);
  EXPECT_EQ(ProtocolStages(ProtocolKind::kNv),
            (std::vector<Stage>{Stage::kShares, Stage::kAggregate}));
  EXPECT_EQ(ProtocolStages(ProtocolKind::kLwe),
            (std::vector<Stage>{Stage::kShares, Stage::kMasked, Stage::kAggregate}));
  EXPECT_EQ(ProtocolStages(ProtocolKind::kPw),
            (std::vector<Stage>{Stage::kKeys, Stage::kMasked, Stage::kUnmask}));
}

// ---- wire format ---------------------------------------------------------

ShareVector SampleShare(uint32_t x, uint32_t chunks) {
  ShareVector sv;
  sv.x = FieldElement{x};
  sv.vector_length = chunks * 2 - 1;
  sv.threshold = 3;
  sv.pack_width = 2;
  for (uint32_t i = 0; i < chunks; ++i) sv.values.push_back({1000 + i});
  return sv;
}

TEST(MessagesTest, HeaderLayout) {
  ProtocolMessage msg{MessageKind::kMaskedVector, 0x01020304, 7,
                      MaskedVectorBody{{{0x1122334455667788}}}};
  const Bytes wire = Serialize(msg);
  ASSERT_EQ(wire.size(), kHeaderBytes + 8);
  EXPECT_EQ(wire[0], 5);
  EXPECT_EQ((std::vector<uint8_t>(wire.begin() + 1, wire.begin() + 5)),
            (std::vector<uint8_t>{1, 2, 3, 4}));
  EXPECT_EQ((std::vector<uint8_t>(wire.begin() + 5, wire.begin() + 9)),
            (std::vector<uint8_t>{0, 0, 0, 7}));
  EXPECT_EQ((std::vector<uint8_t>(wire.begin() + 9, wire.begin() + 13)),
            (std::vector<uint8_t>{0, 0, 0, 8}));
  EXPECT_EQ(wire[13], 0x11);
  EXPECT_EQ(wire[20], 0x88);
  EXPECT_EQ(SerializedSize(msg), wire.size());
  EXPECT_EQ(PeekKind(wire), MessageKind::kMaskedVector);
}

TEST(MessagesTest, RoundTripEveryKind) {
  const PrimeField field;
  // Broadcast kinds derive the share point from the sender, direct kinds
  // from the recipient.
  const uint32_t sender = 2, recipient = 4, k = 2;
  std::vector<ProtocolMessage> msgs = {
      {MessageKind::kPubKey, sender, 1, PubKeyBody{Bytes(256, 0xAB)}},
      {MessageKind::kKeyShare, sender, 1,
       ShareVectorBody{SampleShare(RecipientPoint(recipient, k).value, 3)}},
      {MessageKind::kPersonalSeedShare, sender, 1,
       ShareVectorBody{SampleShare(RecipientPoint(recipient, k).value, 2)}},
      {MessageKind::kInputShareVector, sender, 1,
       ShareVectorBody{SampleShare(RecipientPoint(recipient, k).value, 4)}},
      {MessageKind::kMaskedVector, sender, 1, MaskedVectorBody{{{1}, {2}, {3}}}},
      {MessageKind::kAggregatedShareVector, sender, 1,
       ShareVectorBody{SampleShare(RecipientPoint(sender, k).value, 4)}},
      {MessageKind::kSecretSumShare, sender, 1,
       ShareVectorBody{SampleShare(RecipientPoint(sender, k).value, 5)}},
      {MessageKind::kContributorSet, kBusSender, 1,
       ContributorSetBody{Stage::kMasked, {0, 1, 3}}},
  };
  ShareVector unmask = SampleShare(RecipientPoint(sender, 1).value, 2);
  unmask.pack_width = 1;
  unmask.vector_length = 2;
  msgs.push_back({MessageKind::kUnmaskShare, sender, 1,
                  UnmaskShareBody{{{3, SecretKind::kDhKey, unmask},
                                   {0, SecretKind::kPersonalSeed, unmask}}}});
  for (const ProtocolMessage& msg : msgs) {
    const Bytes wire = Serialize(msg);
    EXPECT_EQ(wire.size(), SerializedSize(msg));
    EXPECT_EQ(Parse(wire, recipient, field), msg) << MessageKindName(msg.kind);
  }
}

TEST(MessagesTest, ShareVectorPayloadSize) {
  const ProtocolMessage msg{MessageKind::kInputShareVector, 0, 0,
                            ShareVectorBody{SampleShare(3, 2)}};
  EXPECT_EQ(SerializedSize(msg), kHeaderBytes + kShareVectorHeaderBytes + 2 * 8);
}

TEST(MessagesTest, MalformedRejected) {
  const PrimeField field;
  const ProtocolMessage msg{MessageKind::kMaskedVector, 1, 0, MaskedVectorBody{{{5}, {6}}}};
  Bytes wire = Serialize(msg);
  EXPECT_EQ(CodeOf([&] { Parse(std::span(wire).first(wire.size() - 1), 0, field); }),
            ErrorCode::kMalformedMessage);
  EXPECT_EQ(CodeOf([&] { Parse(std::span(wire).first(5), 0, field); }),
            ErrorCode::kMalformedMessage);
  Bytes bad_kind = wire;
  bad_kind[0] = 42;
  EXPECT_EQ(CodeOf([&] { Parse(bad_kind, 0, field); }), ErrorCode::kMalformedMessage);
  Bytes out_of_field = wire;
  for (size_t i = kHeaderBytes; i < kHeaderBytes + 8; ++i) out_of_field[i] = 0xFF;
  EXPECT_EQ(CodeOf([&] { Parse(out_of_field, 0, field); }), ErrorCode::kMalformedMessage);
}

TEST(MessagesTest, StagesAndCriticalKinds) {
  EXPECT_EQ(StageOf(ProtocolKind::kLwe, MessageKind::kKeyShare), Stage::kShares);
  EXPECT_EQ(StageOf(ProtocolKind::kPw, MessageKind::kKeyShare), Stage::kKeys);
  EXPECT_EQ(StageOf(ProtocolKind::kNv, MessageKind::kContributorSet), Stage::kControl);
  EXPECT_EQ(CriticalKind(ProtocolKind::kNv, Stage::kShares), MessageKind::kInputShareVector);
  EXPECT_EQ(CriticalKind(ProtocolKind::kLwe, Stage::kShares), MessageKind::kKeyShare);
  EXPECT_EQ(CriticalKind(ProtocolKind::kPw, Stage::kMasked), MessageKind::kMaskedVector);
  EXPECT_TRUE(IsBroadcastKind(MessageKind::kPubKey));
  EXPECT_FALSE(IsBroadcastKind(MessageKind::kKeyShare));
}

// ---- client state machines ----------------------------------------------

struct Cohort {
  RoundContext ctx;
  std::vector<std::unique_ptr<Client>> clients;
  std::vector<std::vector<Outbound>> started;

  Cohort(const RoundConfig& cfg, const std::vector<std::vector<double>>& inputs)
      : ctx(RoundContext::Make(cfg, 3, 0)) {
    for (uint32_t i = 0; i < cfg.n; ++i) {
      clients.push_back(MakeClient(i, ctx, inputs[i], ClientSeed(3, i)));
    }
    for (auto& c : clients) started.push_back(c->Start());
  }

  // Parses a message as seen by `recipient`.
  ProtocolMessage As(const Outbound& ob, uint32_t recipient) const {
    return Parse(Serialize(ob.message), recipient, ctx.field);
  }
};

TEST(ClientTest, NvEmitsAggregateAfterLastInputShare) {
  const RoundConfig cfg = Config(ProtocolKind::kNv, 3, 4, 2);
  Cohort cohort(cfg, Ramp(3, 4));
  auto& receiver = *cohort.clients[0];
  std::vector<Outbound> out;
  for (uint32_t sender : {1u, 2u}) {
    for (const Outbound& ob : cohort.started[sender]) {
      if (ob.recipient != 0) continue;
      EXPECT_TRUE(out.empty());
      out = receiver.OnMessage(cohort.As(ob, 0));
    }
  }
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].recipient, kBroadcast);
  EXPECT_EQ(out[0].message.kind, MessageKind::kAggregatedShareVector);
  EXPECT_EQ(receiver.AwaitedBoundary(), Stage::kAggregate);
}

TEST(ClientTest, RejectsDuplicateAndWrongRound) {
  const RoundConfig cfg = Config(ProtocolKind::kNv, 3, 4, 2);
  Cohort cohort(cfg, Ramp(3, 4));
  const Outbound* to0 = nullptr;
  for (const Outbound& ob : cohort.started[1]) {
    if (ob.recipient == 0) to0 = &ob;
  }
  ASSERT_NE(to0, nullptr);
  const ProtocolMessage msg = cohort.As(*to0, 0);
  cohort.clients[0]->OnMessage(msg);
  EXPECT_EQ(CodeOf([&] { cohort.clients[0]->OnMessage(msg); }), ErrorCode::kDuplicateSender);
  ProtocolMessage late = msg;
  late.round = 9;
  EXPECT_EQ(CodeOf([&] { cohort.clients[2]->OnMessage(late); }),
            ErrorCode::kUnexpectedMessage);
  ProtocolMessage wrong = msg;
  wrong.kind = MessageKind::kUnmaskShare;
  wrong.payload = UnmaskShareBody{};
  EXPECT_EQ(CodeOf([&] { cohort.clients[2]->OnMessage(wrong); }),
            ErrorCode::kUnexpectedMessage);
}

TEST(ClientTest, PwUnmaskCarriesDroppedKeyShare) {
  RoundConfig cfg = Config(ProtocolKind::kPw, 4, 3, 3);
  BusOptions options;
  options.record_transcript = true;
  options.schedule.drop_stage = {{3, Stage::kMasked}};
  MessageBus bus(options);
  const auto inputs = Ramp(4, 3);
  const AggregateResult res = RunRound(inputs, cfg, 5, 0, bus);
  EXPECT_EQ(res.contributors, (std::vector<uint32_t>{0, 1, 2}));
  const RoundContext ctx = RoundContext::Make(cfg, 5, 0);
  size_t unmask_messages = 0;
  for (const TranscriptEntry& e : bus.transcript()) {
    if (e.kind != MessageKind::kUnmaskShare || e.recipient != 0) continue;
    ++unmask_messages;
    const auto msg = Parse(*e.wire, e.recipient, ctx.field);
    const auto& body = std::get<UnmaskShareBody>(msg.payload);
    bool has_dropped_key = false;
    for (const UnmaskEntry& entry : body.entries) {
      if (entry.owner == 3) {
        EXPECT_EQ(entry.secret, SecretKind::kDhKey);
        has_dropped_key = true;
      } else {
        EXPECT_EQ(entry.secret, SecretKind::kPersonalSeed);
      }
    }
    EXPECT_TRUE(has_dropped_key);
  }
  EXPECT_EQ(unmask_messages, 2u);
  ExpectExact(res, inputs, cfg);
}

TEST(ClientTest, LweFinalizesAfterSecretSumShares) {
  const RoundConfig cfg = Config(ProtocolKind::kLwe, 5, 4, 3);
  const auto inputs = Ramp(5, 4);
  BusOptions options;
  MessageBus bus(options);
  const auto ctx = RoundContext::Make(cfg, 8, 0);
  std::vector<std::unique_ptr<Client>> clients;
  for (uint32_t i = 0; i < 5; ++i) {
    clients.push_back(MakeClient(i, ctx, inputs[i], ClientSeed(8, i)));
  }
  const AggregateResult res = bus.Drive(clients, ctx);
  for (const auto& c : clients) {
    ASSERT_TRUE(c->finished());
    EXPECT_EQ(*c->result(), res);
  }
  EXPECT_FALSE(res.exact);
  EXPECT_EQ(res.contributors.size(), 5u);
  EXPECT_EQ(bus.metrics().kind(MessageKind::kSecretSumShare).messages, 5u * 4u);
}

// ---- NV round ------------------------------------------------------------

TEST(NvRoundTest, RampAverage) {
  const RoundConfig cfg = Config(ProtocolKind::kNv, 5, 4, 3);
  const auto inputs = Ramp(5, 4);
  const AggregateResult res = RunWith(inputs, cfg);
  EXPECT_EQ(res.contributors, (std::vector<uint32_t>{0, 1, 2, 3, 4}));
  for (double v : res.average) EXPECT_NEAR(v, 3.0, std::ldexp(1.0, -16));
  EXPECT_TRUE(res.exact);
  ExpectExact(res, inputs, cfg);
}

TEST(NvRoundTest, ZeroInputs) {
  const RoundConfig cfg = Config(ProtocolKind::kNv, 5, 4, 3);
  const std::vector<std::vector<double>> inputs(5, std::vector<double>(4, 0.0));
  const AggregateResult res = RunWith(inputs, cfg);
  for (double v : res.average) EXPECT_EQ(v, 0.0);
}

TEST(NvRoundTest, DropBeforeSharing) {
  RoundConfig cfg = Config(ProtocolKind::kNv, 5, 4, 3);
  cfg.pack_width = 2;
  const auto inputs = Ramp(5, 4);
  const AggregateResult res = RunWith(inputs, cfg, {{4, Stage::kShares}});
  EXPECT_EQ(res.contributors, (std::vector<uint32_t>{0, 1, 2, 3}));
  for (double v : res.average) EXPECT_NEAR(v, 2.5, std::ldexp(1.0, -16));
  ExpectExact(res, inputs, cfg);
}

TEST(NvRoundTest, DropAfterSharingKeepsContribution) {
  RoundConfig cfg = Config(ProtocolKind::kNv, 5, 4, 3);
  cfg.pack_width = 2;
  const auto inputs = RandomInputs(5, 4, 1);
  const AggregateResult res = RunWith(inputs, cfg, {{1, Stage::kAggregate}});
  EXPECT_EQ(res.contributors.size(), 5u);
  ExpectExact(res, inputs, cfg);
}

TEST(NvRoundTest, TooFewAggregatedShares) {
  RoundConfig cfg = Config(ProtocolKind::kNv, 5, 4, 3);
  cfg.pack_width = 2;
  EXPECT_EQ(CodeOf([&] {
              RunWith(Ramp(5, 4), cfg, {{1, Stage::kAggregate}, {2, Stage::kAggregate}});
            }),
            ErrorCode::kInsufficientSurvivors);
}

TEST(NvRoundTest, LiteralSinglePacking) {
  RoundConfig cfg = Config(ProtocolKind::kNv, 6, 7, 4);
  cfg.pack_width = 1;
  const auto inputs = RandomInputs(6, 7, 2);
  ExpectExact(RunWith(inputs, cfg, {{0, Stage::kShares}, {5, Stage::kAggregate}}), inputs, cfg);
}

// ---- LWE round -----------------------------------------------------------

TEST(LweRoundTest, TinyNoiseMatchesPlaintext) {
  RoundConfig cfg = Config(ProtocolKind::kLwe, 5, 4, 3);
  cfg.pack_width = 3;
  const auto inputs = Ramp(5, 4);
  const AggregateResult res = RunWith(inputs, cfg);
  for (double v : res.average) EXPECT_NEAR(v, 3.0, std::ldexp(1.0, -16));
  EXPECT_FALSE(res.exact);
  EXPECT_NEAR(res.noise_sigma_effective, 1e-6 * std::sqrt(5.0), 1e-12);
}

TEST(LweRoundTest, IdentityInField) {
  // With sigma = 1e-6 the error vectors are zero, so W is exactly the sum.
  RoundConfig cfg = Config(ProtocolKind::kLwe, 5, 9, 3);
  cfg.pack_width = 2;
  const auto inputs = RandomInputs(5, 9, 3);
  ExpectExact(RunWith(inputs, cfg), inputs, cfg);
}

TEST(LweRoundTest, DropBeforeMaskedBroadcast) {
  RoundConfig cfg = Config(ProtocolKind::kLwe, 5, 4, 3);
  cfg.pack_width = 2;
  const auto inputs = Ramp(5, 4);
  const AggregateResult res = RunWith(inputs, cfg, {{2, Stage::kMasked}});
  EXPECT_EQ(res.contributors, (std::vector<uint32_t>{0, 1, 3, 4}));
  const auto avg = PlaintextAggregate(inputs, res.contributors);
  for (size_t j = 0; j < 4; ++j) EXPECT_NEAR(res.average[j], avg[j], std::ldexp(1.0, -16));
}

TEST(LweRoundTest, NoiseAppearsWithLargerSigma) {
  RoundConfig cfg = Config(ProtocolKind::kLwe, 5, 2000, 3);
  cfg.sigma = 3.0;
  cfg.pack_width = 3;
  const std::vector<std::vector<double>> inputs(5, std::vector<double>(2000, 0.0));
  const AggregateResult res = RunWith(inputs, cfg);
  double sq = 0.0;
  for (const FieldElement& e : res.field_sum) {
    const double x = static_cast<double>(PrimeField().ToSigned(e));
    sq += x * x;
  }
  EXPECT_NEAR(std::sqrt(sq / 2000.0), 3.0 * std::sqrt(5.0), 0.1 * 3.0 * std::sqrt(5.0));
}

// ---- PW round ------------------------------------------------------------

TEST(PwRoundTest, NoDropoutExact) {
  const RoundConfig cfg = Config(ProtocolKind::kPw, 4, 6, 3);
  const auto inputs = RandomInputs(4, 6, 4);
  const AggregateResult res = RunWith(inputs, cfg);
  EXPECT_EQ(res.contributors.size(), 4u);
  ExpectExact(res, inputs, cfg);
}

TEST(PwRoundTest, DropBeforeMaskedVector) {
  const RoundConfig cfg = Config(ProtocolKind::kPw, 4, 6, 3);
  const auto inputs = RandomInputs(4, 6, 5);
  const AggregateResult res = RunWith(inputs, cfg, {{3, Stage::kMasked}});
  EXPECT_EQ(res.contributors, (std::vector<uint32_t>{0, 1, 2}));
  ExpectExact(res, inputs, cfg);
}

TEST(PwRoundTest, DropAfterMaskedVectorCounts) {
  const RoundConfig cfg = Config(ProtocolKind::kPw, 5, 6, 3);
  const auto inputs = RandomInputs(5, 6, 6);
  const AggregateResult res = RunWith(inputs, cfg, {{1, Stage::kUnmask}});
  EXPECT_EQ(res.contributors, (std::vector<uint32_t>{0, 1, 2, 3, 4}));
  ExpectExact(res, inputs, cfg);
}

TEST(PwRoundTest, MasksCancelWithoutPersonalMask) {
  RoundConfig cfg = Config(ProtocolKind::kPw, 3, 5, 2);
  cfg.personal_mask = false;
  const auto inputs = RandomInputs(3, 5, 7);
  BusOptions options;
  options.record_transcript = true;
  const AggregateResult res = RunWith(inputs, cfg, {}, 11, options);
  ExpectExact(res, inputs, cfg);

  MessageBus bus(options);
  RunRound(inputs, cfg, 11, 0, bus);
  const PrimeField field;
  std::vector<FieldElement> sum(5, FieldElement{0});
  uint32_t seen = 0;
  for (const TranscriptEntry& e : bus.transcript()) {
    if (e.kind != MessageKind::kMaskedVector || e.recipient != (e.sender + 1) % 3) continue;
    const auto msg = Parse(*e.wire, e.recipient, field);
    field.AddInPlace(sum, std::get<MaskedVectorBody>(msg.payload).values);
    ++seen;
  }
  ASSERT_EQ(seen, 3u);
  const std::vector<uint32_t> all = {0, 1, 2};
  const auto expected = EncodedSum(inputs, all, cfg.fp, cfg.q);
  for (size_t j = 0; j < 5; ++j) EXPECT_EQ(sum[j].value, expected[j]);
  EXPECT_EQ(bus.metrics().kind(MessageKind::kPersonalSeedShare).messages, 0u);
}

TEST(PwRoundTest, LiteralModeWithDropout) {
  RoundConfig cfg = Config(ProtocolKind::kPw, 5, 4, 3);
  cfg.personal_mask = false;
  const auto inputs = RandomInputs(5, 4, 8);
  ExpectExact(RunWith(inputs, cfg, {{2, Stage::kMasked}}), inputs, cfg);
}

TEST(PwRoundTest, ProductionGroup) {
  RoundConfig cfg = Config(ProtocolKind::kPw, 4, 3, 3);
  cfg.dh_group = "rfc3526-2048";
  const auto inputs = RandomInputs(4, 3, 9);
  ExpectExact(RunWith(inputs, cfg, {{0, Stage::kMasked}}), inputs, cfg);
}

TEST(PwRoundTest, KeysStageDropout) {
  const RoundConfig cfg = Config(ProtocolKind::kPw, 6, 3, 3);
  const auto inputs = RandomInputs(6, 3, 10);
  const AggregateResult res = RunWith(inputs, cfg, {{5, Stage::kKeys}, {0, Stage::kMasked}});
  EXPECT_EQ(res.contributors, (std::vector<uint32_t>{1, 2, 3, 4}));
  ExpectExact(res, inputs, cfg);
}

TEST(PwRoundTest, TooFewUnmaskers) {
  const RoundConfig cfg = Config(ProtocolKind::kPw, 5, 3, 3);
  EXPECT_EQ(CodeOf([&] {
              RunWith(RandomInputs(5, 3, 11), cfg,
                  {{0, Stage::kUnmask}, {1, Stage::kUnmask}, {2, Stage::kUnmask}});
            }),
            ErrorCode::kInsufficientSurvivors);
}

// ---- contributor set -----------------------------------------------------

TEST(ContributorSetTest, Examples) {
  EXPECT_EQ(ComputeContributorSet({true, true, true}), (std::vector<uint32_t>{0, 1, 2}));
  EXPECT_EQ(ComputeContributorSet({true, false, true, true}),
            (std::vector<uint32_t>{0, 2, 3}));
  EXPECT_TRUE(ComputeContributorSet({false, false}).empty());
}

TEST(ContributorSetTest, NvStageOneDropoutExcluded) {
  RoundConfig cfg = Config(ProtocolKind::kNv, 6, 2, 3);
  cfg.pack_width = 1;
  EXPECT_EQ(RunWith(Ramp(6, 2), cfg, {{2, Stage::kShares}}).contributors,
            (std::vector<uint32_t>{0, 1, 3, 4, 5}));
}

// ---- properties ----------------------------------------------------------

TEST(ProtocolProperty, ExactUnderRandomDropout) {
  SeededRandomSource rng(DeriveSeed(12, "property"));
  for (auto protocol : {ProtocolKind::kNv, ProtocolKind::kPw, ProtocolKind::kLwe}) {
    for (int trial = 0; trial < 25; ++trial) {
      const uint32_t n = 3 + static_cast<uint32_t>(rng.UniformBelow(6));
      const uint32_t t = (protocol == ProtocolKind::kPw ? 2 : 1) +
                         static_cast<uint32_t>(rng.UniformBelow(n / 2));
      RoundConfig cfg = Config(protocol, n, 1 + static_cast<uint32_t>(rng.UniformBelow(9)), t);
      const uint32_t max_drops = n - t;
      const uint32_t drops = static_cast<uint32_t>(rng.UniformBelow(max_drops + 1));
      cfg.pack_width = 1 + static_cast<uint32_t>(rng.UniformBelow(n - t + 1 - drops));
      std::map<uint32_t, Stage> schedule;
      const auto& stages = ProtocolStages(protocol);
      while (schedule.size() < drops) {
        schedule[static_cast<uint32_t>(rng.UniformBelow(n))] =
            stages[rng.UniformBelow(stages.size())];
      }
      const auto inputs = RandomInputs(n, cfg.m, 100 + trial);
      SCOPED_TRACE(std::string(ProtocolName(protocol)) + " n=" + std::to_string(n) +
                   " t=" + std::to_string(t) + " drops=" + std::to_string(drops));
      ExpectExact(RunWith(inputs, cfg, schedule, trial), inputs, cfg);
    }
  }
}

TEST(ProtocolProperty, DeterministicAndThreadIndependent) {
  for (auto protocol : {ProtocolKind::kNv, ProtocolKind::kPw, ProtocolKind::kLwe}) {
    RoundConfig cfg = Config(protocol, 6, 5, 3);
    cfg.sigma = 3.0;
    cfg.pack_width = 2;
    const auto inputs = RandomInputs(6, 5, 13);
    BusOptions threaded;
    threaded.threads = 4;
    const std::map<uint32_t, Stage> drops = {{4, ProtocolStages(protocol)[1]}};
    const AggregateResult a = RunWith(inputs, cfg, drops);
    EXPECT_EQ(a, RunWith(inputs, cfg, drops));
    EXPECT_EQ(a, RunWith(inputs, cfg, drops, 11, threaded));
  }
}

}  // namespace
}  // namespace dlagg
