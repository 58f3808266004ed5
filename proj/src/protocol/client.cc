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

#include "dlagg/protocol/client.h"

#include <cmath>
#include <string>

#include "dlagg/common/error.h"
#include "dlagg/field/fixed_point.h"
#include "dlagg/protocol/lwe_client.h"
#include "dlagg/protocol/nv_client.h"
#include "dlagg/protocol/pw_client.h"

namespace dlagg {

RoundContext RoundContext::Make(const RoundConfig& config, uint64_t master_seed,
                                uint32_t round) {
  config.Validate();
  RoundContext ctx{config, PrimeField(config.q), round, {}, nullptr};
  if (config.protocol == ProtocolKind::kPw) {
    ctx.dh = DhParams::ByName(config.dh_group);
  }
  if (config.protocol == ProtocolKind::kLwe) {
    LweParams params;
    params.m = config.m;
    params.n_lwe = config.n_lwe;
    params.sigma = config.sigma;
    params.matrix_seed = MaskSeed{DeriveSeed(master_seed, "matrix")};
    ctx.matrix = LweMatrix::Shared(params, ctx.field);
  }
  return ctx;
}

Client::Client(uint32_t id, const RoundContext& ctx,
               std::span<const double> input, const Digest& seed)
    : ctx_(ctx),
      field_(ctx.field),
      id_(id),
      rng_(seed, ctx.round),
      input_(EncodeFixedPoint(input, ctx.config.fp, ctx.field)) {
  if (id >= ctx.n()) Fail(ErrorCode::kInvalidConfig, "client id out of range");
  if (input.size() != ctx.config.m) {
    Fail(ErrorCode::kDimensionMismatch, "input length differs from model size");
  }
}

std::vector<Outbound> Client::OnMessage(const ProtocolMessage& msg) {
  if (finished() || msg.round != ctx_.round) Unexpected(msg);
  uint32_t key_sender = msg.sender;
  if (msg.kind == MessageKind::kContributorSet) {
    const auto* body = std::get_if<ContributorSetBody>(&msg.payload);
    if (msg.sender != kBusSender || body == nullptr) Unexpected(msg);
    key_sender = static_cast<uint32_t>(body->boundary);
  } else if (msg.sender >= ctx_.n() || msg.sender == id_) {
    Unexpected(msg);
  }
  if (!seen_.emplace(static_cast<uint8_t>(msg.kind), key_sender).second) {
    Fail(ErrorCode::kDuplicateSender,
         std::string(MessageKindName(msg.kind)) + " repeated by sender " +
             std::to_string(msg.sender));
  }
  return Handle(msg);
}

ProtocolMessage Client::MakeMessage(MessageKind kind,
                                    MessagePayload payload) const {
  return ProtocolMessage{kind, id_, ctx_.round, std::move(payload)};
}

void Client::Finish(std::vector<FieldElement> field_sum,
                    std::vector<uint32_t> contributors, uint64_t noise_margin,
                    double noise_sigma) {
  if (contributors.empty()) {
    Fail(ErrorCode::kInsufficientContributors, "no contributors");
  }
  AggregateResult r;
  const double count = static_cast<double>(contributors.size());
  r.average = DecodeFixedPoint(field_sum, contributors.size(), ctx_.config.fp,
                               field_, noise_margin);
  for (double& v : r.average) v /= count;
  r.field_sum = std::move(field_sum);
  r.contributors = std::move(contributors);
  r.exact = ctx_.config.protocol != ProtocolKind::kLwe;
  r.noise_sigma_effective = noise_sigma;
  result_ = std::move(r);
}

void Client::CheckShape(const ShareVector& sv, uint32_t length,
                        uint32_t k) const {
  if (sv.vector_length != length || sv.pack_width != k ||
      sv.threshold != ctx_.t()) {
    Fail(ErrorCode::kMalformedMessage, "share vector shape differs from round");
  }
}

void Client::Unexpected(const ProtocolMessage& msg) const {
  Fail(ErrorCode::kUnexpectedMessage,
       "client " + std::to_string(id_) + " cannot accept " +
           std::string(MessageKindName(msg.kind)) + " from " +
           std::to_string(msg.sender) + " in round " + std::to_string(msg.round));
}

std::unique_ptr<Client> MakeClient(uint32_t id, const RoundContext& ctx,
                                   std::span<const double> input,
                                   const Digest& seed) {
  switch (ctx.config.protocol) {
    case ProtocolKind::kNv:
      return std::make_unique<NvClient>(id, ctx, input, seed);
    case ProtocolKind::kLwe:
      return std::make_unique<LweClient>(id, ctx, input, seed);
    case ProtocolKind::kPw:
      return std::make_unique<PwClient>(id, ctx, input, seed);
  }
  Fail(ErrorCode::kInvalidConfig, "unknown protocol");
}

}  // namespace dlagg
