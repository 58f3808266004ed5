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

#include "dlagg/protocol/lwe_client.h"

#include <algorithm>
#include <cmath>

#include "dlagg/common/error.h"
#include "dlagg/masking/lwe.h"

namespace dlagg {

std::vector<Outbound> LweClient::Start() {
  const uint32_t n_lwe = ctx_.config.n_lwe;
  std::vector<FieldElement> s = LweSecret(n_lwe, field_, rng_);
  std::vector<ShareVector> shares =
      ShareVectorPacked(s, ctx_.t(), ctx_.n(), ctx_.k(), field_, rng_);
  std::vector<FieldElement> e =
      GaussianError(ctx_.config.sigma, ctx_.config.m, field_, rng_);
  std::vector<FieldElement> h = LweMask(input_, s, e, *ctx_.matrix, field_);

  std::vector<Outbound> out;
  out.reserve(ctx_.n());
  for (uint32_t j = 0; j < ctx_.n(); ++j) {
    if (j == id_) continue;
    out.push_back({j, MakeMessage(MessageKind::kKeyShare,
                                  ShareVectorBody{std::move(shares[j])})});
  }
  secret_shares_.emplace(id_, std::move(shares[id_]));
  out.push_back({kBroadcast,
                 MakeMessage(MessageKind::kMaskedVector, MaskedVectorBody{h})});
  masked_.emplace(id_, std::move(h));
  return out;
}

std::optional<Stage> LweClient::AwaitedBoundary() const {
  if (finished()) return std::nullopt;
  return stage_;
}

std::vector<Outbound> LweClient::Handle(const ProtocolMessage& msg) {
  switch (msg.kind) {
    case MessageKind::kKeyShare: {
      if (stage_ != Stage::kMasked) Unexpected(msg);
      const ShareVector& sv = ShareOf(msg);
      CheckShape(sv, ctx_.config.n_lwe, ctx_.k());
      secret_shares_.emplace(msg.sender, sv);
      break;
    }
    case MessageKind::kMaskedVector: {
      if (stage_ != Stage::kMasked) Unexpected(msg);
      const auto& body = std::get<MaskedVectorBody>(msg.payload);
      if (body.values.size() != ctx_.config.m) {
        Fail(ErrorCode::kMalformedMessage, "masked vector length differs from m");
      }
      masked_.emplace(msg.sender, body.values);
      break;
    }
    case MessageKind::kSecretSumShare: {
      const ShareVector& sv = ShareOf(msg);
      CheckShape(sv, ctx_.config.n_lwe, ctx_.k());
      sum_shares_.emplace(msg.sender, sv);
      if (stage_ == Stage::kAggregate && HeardFromAllContributors()) Reconstruct();
      return {};
    }
    case MessageKind::kContributorSet: {
      const auto& body = std::get<ContributorSetBody>(msg.payload);
      if (body.boundary != stage_) Unexpected(msg);
      if (stage_ == Stage::kMasked) return CloseMasked(body.ids);
      Reconstruct();
      return {};
    }
    default:
      Unexpected(msg);
  }
  if (masked_.size() == ctx_.n() && secret_shares_.size() == ctx_.n()) {
    return CloseMasked(KeysOf(masked_));
  }
  return {};
}

std::vector<Outbound> LweClient::CloseMasked(
    const std::vector<uint32_t>& contributors) {
  if (contributors.empty()) {
    Fail(ErrorCode::kInsufficientContributors, "no masked vectors delivered");
  }
  ShareVector sum;
  masked_sum_.assign(ctx_.config.m, FieldElement{0});
  bool first = true;
  for (uint32_t c : contributors) {
    auto s_it = secret_shares_.find(c);
    if (s_it == secret_shares_.end()) {
      Fail(ErrorCode::kMissingKeyShares,
           "no s-share from contributor " + std::to_string(c));
    }
    auto h_it = masked_.find(c);
    if (h_it == masked_.end()) {
      Fail(ErrorCode::kUnexpectedMessage,
           "contributor " + std::to_string(c) + " has no masked vector");
    }
    if (first) {
      sum = s_it->second;
      first = false;
    } else {
      AddShareVectorInPlace(sum, s_it->second, field_);
    }
    field_.AddInPlace(masked_sum_, h_it->second);
  }
  contributors_ = contributors;
  stage_ = Stage::kAggregate;
  secret_shares_.clear();
  masked_.clear();
  sum_shares_.emplace(id_, sum);
  std::vector<Outbound> out;
  out.push_back({kBroadcast, MakeMessage(MessageKind::kSecretSumShare,
                                         ShareVectorBody{std::move(sum)})});
  if (HeardFromAllContributors()) Reconstruct();
  return out;
}

bool LweClient::HeardFromAllContributors() const {
  return std::all_of(contributors_.begin(), contributors_.end(),
                     [this](uint32_t c) { return sum_shares_.count(c) != 0; });
}

void LweClient::Reconstruct() {
  if (sum_shares_.size() < ctx_.config.required_shares()) {
    Fail(ErrorCode::kInsufficientSurvivors,
         std::to_string(sum_shares_.size()) + " summed s-shares, " +
             std::to_string(ctx_.config.required_shares()) + " required");
  }
  std::vector<ShareVector> shares;
  shares.reserve(sum_shares_.size());
  for (auto& [sender, sv] : sum_shares_) shares.push_back(std::move(sv));
  sum_shares_.clear();
  const std::vector<FieldElement> s_sum = ReconstructVector(shares, field_);
  std::vector<FieldElement> w = std::move(masked_sum_);
  ctx_.matrix->MultiplyAccumulate(s_sum, w, /*subtract=*/true, field_);

  const double count = static_cast<double>(contributors_.size());
  const double sigma = ctx_.config.sigma;
  // Per-coordinate noise stays below 16 sigma + 1 per summand.
  const auto margin = static_cast<uint64_t>(std::ceil(count * (16.0 * sigma + 1.0)));
  Finish(std::move(w), contributors_, margin, sigma * std::sqrt(count));
}

}  // namespace dlagg
