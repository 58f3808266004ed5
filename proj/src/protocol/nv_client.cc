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

#include "dlagg/protocol/nv_client.h"

#include "dlagg/common/error.h"

namespace dlagg {

std::vector<Outbound> NvClient::Start() {
  std::vector<ShareVector> shares =
      ShareVectorPacked(input_, ctx_.t(), ctx_.n(), ctx_.k(), field_, rng_);
  std::vector<Outbound> out;
  out.reserve(ctx_.n() - 1);
  for (uint32_t j = 0; j < ctx_.n(); ++j) {
    if (j == id_) continue;
    out.push_back({j, MakeMessage(MessageKind::kInputShareVector,
                                  ShareVectorBody{std::move(shares[j])})});
  }
  input_shares_.emplace(id_, std::move(shares[id_]));
  return out;
}

std::optional<Stage> NvClient::AwaitedBoundary() const {
  if (finished()) return std::nullopt;
  return stage_;
}

std::vector<Outbound> NvClient::Handle(const ProtocolMessage& msg) {
  switch (msg.kind) {
    case MessageKind::kInputShareVector: {
      if (stage_ != Stage::kShares) Unexpected(msg);
      const ShareVector& sv = ShareOf(msg);
      CheckShape(sv, ctx_.config.m, ctx_.k());
      input_shares_.emplace(msg.sender, sv);
      if (input_shares_.size() == ctx_.n()) return CloseShares(KeysOf(input_shares_));
      return {};
    }
    case MessageKind::kAggregatedShareVector: {
      const ShareVector& sv = ShareOf(msg);
      CheckShape(sv, ctx_.config.m, ctx_.k());
      aggregated_.emplace(msg.sender, sv);
      if (stage_ == Stage::kAggregate && aggregated_.size() == ctx_.n()) {
        Reconstruct();
      }
      return {};
    }
    case MessageKind::kContributorSet: {
      const auto& body = std::get<ContributorSetBody>(msg.payload);
      if (body.boundary != stage_) Unexpected(msg);
      if (stage_ == Stage::kShares) return CloseShares(body.ids);
      Reconstruct();
      return {};
    }
    default:
      Unexpected(msg);
  }
}

std::vector<Outbound> NvClient::CloseShares(
    const std::vector<uint32_t>& contributors) {
  if (contributors.empty()) {
    Fail(ErrorCode::kInsufficientContributors, "no input shares delivered");
  }
  ShareVector sum;
  bool first = true;
  for (uint32_t c : contributors) {
    auto it = input_shares_.find(c);
    if (it == input_shares_.end()) {
      Fail(ErrorCode::kMissingKeyShares,
           "no input share from contributor " + std::to_string(c));
    }
    if (first) {
      sum = it->second;
      first = false;
    } else {
      AddShareVectorInPlace(sum, it->second, field_);
    }
  }
  contributors_ = contributors;
  stage_ = Stage::kAggregate;
  input_shares_.clear();
  aggregated_.emplace(id_, sum);
  std::vector<Outbound> out;
  out.push_back({kBroadcast, MakeMessage(MessageKind::kAggregatedShareVector,
                                         ShareVectorBody{std::move(sum)})});
  if (aggregated_.size() == ctx_.n()) Reconstruct();
  return out;
}

void NvClient::Reconstruct() {
  if (aggregated_.size() < ctx_.config.required_shares()) {
    Fail(ErrorCode::kInsufficientSurvivors,
         std::to_string(aggregated_.size()) + " aggregated shares, " +
             std::to_string(ctx_.config.required_shares()) + " required");
  }
  std::vector<ShareVector> shares;
  shares.reserve(aggregated_.size());
  for (auto& [sender, sv] : aggregated_) shares.push_back(std::move(sv));
  aggregated_.clear();
  Finish(ReconstructVector(shares, field_), contributors_);
}

}  // namespace dlagg
