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

#include "dlagg/protocol/pw_client.h"

#include <algorithm>
#include <string>

#include "dlagg/common/error.h"

namespace dlagg {
namespace {

constexpr size_t kSeedBits = 8 * sizeof(Digest);

std::vector<FieldElement> AsElements(const std::vector<uint64_t>& limbs) {
  std::vector<FieldElement> out(limbs.size());
  for (size_t i = 0; i < limbs.size(); ++i) out[i].value = limbs[i];
  return out;
}

std::vector<uint64_t> AsLimbs(const std::vector<FieldElement>& elements) {
  std::vector<uint64_t> out(elements.size());
  for (size_t i = 0; i < elements.size(); ++i) out[i] = elements[i].value;
  return out;
}

void CheckIsSubset(const std::vector<uint32_t>& sub,
                   const std::vector<uint32_t>& super) {
  if (!std::includes(super.begin(), super.end(), sub.begin(), sub.end())) {
    Fail(ErrorCode::kUnexpectedMessage, "contributor set leaves the roster");
  }
}

}  // namespace

PwClient::PwClient(uint32_t id, const RoundContext& ctx,
                   std::span<const double> input, const Digest& seed)
    : Client(id, ctx, input, seed),
      personal_(ctx.config.personal_mask),
      limb_bits_(ctx.field.bit_width() - 1) {}

std::vector<Outbound> PwClient::Start() {
  keys_ = DhKeyGen(ctx_.dh, rng_);
  const uint32_t n = ctx_.n();
  const uint32_t t = ctx_.t();
  std::vector<ShareVector> sk_shares = ShareVectorPacked(
      AsElements(SplitIntoLimbs(keys_.secret_key, ctx_.dh.secret_key_bits(),
                                limb_bits_)),
      t, n, 1, field_, rng_);
  std::vector<ShareVector> seed_shares;
  if (personal_) {
    rng_.FillBytes(personal_seed_);
    seed_shares = ShareVectorPacked(
        AsElements(SplitIntoLimbs(DecodeResidue(personal_seed_), kSeedBits,
                                  limb_bits_)),
        t, n, 1, field_, rng_);
  }

  std::vector<Outbound> out;
  out.reserve(2 * n + 1);
  Bytes pk = EncodeResidue(keys_.public_key, ctx_.dh.residue_width());
  public_keys_.emplace(id_, pk);
  out.push_back(
      {kBroadcast, MakeMessage(MessageKind::kPubKey, PubKeyBody{std::move(pk)})});
  for (uint32_t j = 0; j < n; ++j) {
    if (j == id_) continue;
    out.push_back({j, MakeMessage(MessageKind::kKeyShare,
                                  ShareVectorBody{std::move(sk_shares[j])})});
    if (personal_) {
      out.push_back({j, MakeMessage(MessageKind::kPersonalSeedShare,
                                    ShareVectorBody{std::move(seed_shares[j])})});
    }
  }
  key_shares_.emplace(id_, std::move(sk_shares[id_]));
  if (personal_) seed_shares_.emplace(id_, std::move(seed_shares[id_]));
  return out;
}

std::optional<Stage> PwClient::AwaitedBoundary() const {
  if (finished()) return std::nullopt;
  return stage_;
}

bool PwClient::KeysCompleteFor(uint32_t c) const {
  return public_keys_.count(c) != 0 && key_shares_.count(c) != 0 &&
         (!personal_ || seed_shares_.count(c) != 0);
}

std::vector<Outbound> PwClient::Handle(const ProtocolMessage& msg) {
  const uint32_t n = ctx_.n();
  switch (msg.kind) {
    case MessageKind::kPubKey: {
      if (stage_ != Stage::kKeys) Unexpected(msg);
      const auto& body = std::get<PubKeyBody>(msg.payload);
      if (body.residue.size() != ctx_.dh.residue_width()) {
        Fail(ErrorCode::kMalformedMessage, "public key width differs from group");
      }
      public_keys_.emplace(msg.sender, body.residue);
      break;
    }
    case MessageKind::kKeyShare:
    case MessageKind::kPersonalSeedShare: {
      if (stage_ != Stage::kKeys) Unexpected(msg);
      const bool is_key = msg.kind == MessageKind::kKeyShare;
      if (!is_key && !personal_) Unexpected(msg);
      const ShareVector& sv = ShareOf(msg);
      const size_t bits = is_key ? ctx_.dh.secret_key_bits() : kSeedBits;
      CheckShape(sv, static_cast<uint32_t>(LimbCount(bits, limb_bits_)), 1);
      (is_key ? key_shares_ : seed_shares_).emplace(msg.sender, sv);
      break;
    }
    case MessageKind::kMaskedVector: {
      if (stage_ == Stage::kUnmask) Unexpected(msg);
      const auto& body = std::get<MaskedVectorBody>(msg.payload);
      if (body.values.size() != ctx_.config.m) {
        Fail(ErrorCode::kMalformedMessage, "masked vector length differs from m");
      }
      masked_.emplace(msg.sender, body.values);
      if (stage_ == Stage::kMasked && HeardFromRoster()) return CloseMasked(roster_);
      return {};
    }
    case MessageKind::kUnmaskShare: {
      auto& entries = std::get<UnmaskShareBody>(msg.payload).entries;
      for (const UnmaskEntry& e : entries) {
        const size_t bits = e.secret == SecretKind::kDhKey
                                ? ctx_.dh.secret_key_bits()
                                : kSeedBits;
        CheckShape(e.share, static_cast<uint32_t>(LimbCount(bits, limb_bits_)), 1);
      }
      unmask_.emplace(msg.sender, entries);
      if (stage_ == Stage::kUnmask && HeardFromAllContributors()) Reconstruct();
      return {};
    }
    case MessageKind::kContributorSet: {
      const auto& body = std::get<ContributorSetBody>(msg.payload);
      if (body.boundary != stage_) Unexpected(msg);
      switch (stage_) {
        case Stage::kKeys:
          return CloseKeys(body.ids);
        case Stage::kMasked:
          return CloseMasked(body.ids);
        default:
          Reconstruct();
          return {};
      }
    }
    default:
      Unexpected(msg);
  }
  if (stage_ == Stage::kKeys && public_keys_.size() == n) {
    bool complete = true;
    for (uint32_t c = 0; c < n && complete; ++c) complete = KeysCompleteFor(c);
    if (complete) return CloseKeys(KeysOf(public_keys_));
  }
  return {};
}

mpz_class PwClient::PublicKeyOf(uint32_t c) const {
  return DecodeResidue(public_keys_.at(c));
}

std::vector<Outbound> PwClient::CloseKeys(const std::vector<uint32_t>& roster) {
  if (roster.size() < ctx_.t()) {
    Fail(ErrorCode::kInsufficientSurvivors,
         "key roster of " + std::to_string(roster.size()) + " below threshold " +
             std::to_string(ctx_.t()));
  }
  for (uint32_t c : roster) {
    if (!KeysCompleteFor(c)) {
      Fail(ErrorCode::kMissingKeyShares,
           "key material of roster member " + std::to_string(c) + " missing");
    }
  }
  roster_ = roster;
  stage_ = Stage::kMasked;

  std::vector<FieldElement> y = input_;
  if (personal_) {
    MaskStream(MaskSeed{personal_seed_}, kPersonalTag, field_).Accumulate(y, false);
  }
  for (uint32_t j : roster_) {
    if (j == id_) continue;
    const MaskSeed s = DhAgree(keys_.secret_key, PublicKeyOf(j), ctx_.dh);
    MaskStream(s, kPairwiseTag, field_).Accumulate(y, /*subtract=*/j < id_);
  }
  masked_.emplace(id_, y);
  std::vector<Outbound> out;
  out.push_back({kBroadcast, MakeMessage(MessageKind::kMaskedVector,
                                         MaskedVectorBody{std::move(y)})});
  // y from every roster member may already be buffered.
  if (HeardFromRoster()) {
    std::vector<Outbound> more = CloseMasked(roster_);
    out.insert(out.end(), std::make_move_iterator(more.begin()),
               std::make_move_iterator(more.end()));
  }
  return out;
}

std::vector<Outbound> PwClient::CloseMasked(
    const std::vector<uint32_t>& contributors) {
  CheckIsSubset(contributors, roster_);
  if (contributors.size() < ctx_.t()) {
    Fail(ErrorCode::kInsufficientSurvivors,
         std::to_string(contributors.size()) + " masked inputs, threshold " +
             std::to_string(ctx_.t()));
  }
  contributors_ = contributors;
  dropped_.clear();
  std::set_difference(roster_.begin(), roster_.end(), contributors_.begin(),
                      contributors_.end(), std::back_inserter(dropped_));
  stage_ = Stage::kUnmask;

  UnmaskShareBody body;
  for (uint32_t k : dropped_) {
    body.entries.push_back({k, SecretKind::kDhKey, key_shares_.at(k)});
  }
  if (personal_) {
    for (uint32_t c : contributors_) {
      if (std::binary_search(dropped_.begin(), dropped_.end(), c)) {
        Fail(ErrorCode::kSafetyViolation,
             "client " + std::to_string(c) + " would reveal both secrets");
      }
      body.entries.push_back({c, SecretKind::kPersonalSeed, seed_shares_.at(c)});
    }
  }
  unmask_.emplace(id_, body.entries);
  std::vector<Outbound> out;
  out.push_back(
      {kBroadcast, MakeMessage(MessageKind::kUnmaskShare, std::move(body))});
  if (HeardFromAllContributors()) Reconstruct();
  return out;
}

bool PwClient::HeardFromRoster() const {
  return std::all_of(roster_.begin(), roster_.end(),
                     [this](uint32_t c) { return masked_.count(c) != 0; });
}

bool PwClient::HeardFromAllContributors() const {
  return std::all_of(contributors_.begin(), contributors_.end(),
                     [this](uint32_t c) { return unmask_.count(c) != 0; });
}

void PwClient::Reconstruct() {
  // Shares per (owner, secret) across every delivered UnmaskShare.
  std::map<std::pair<uint32_t, SecretKind>, std::vector<ShareVector>> revealed;
  for (const auto& [holder, entries] : unmask_) {
    for (const UnmaskEntry& e : entries) {
      revealed[{e.owner, e.secret}].push_back(e.share);
    }
  }
  for (const auto& [key, shares] : revealed) {
    if (revealed.count({key.first, key.second == SecretKind::kDhKey
                                       ? SecretKind::kPersonalSeed
                                       : SecretKind::kDhKey}) != 0) {
      Fail(ErrorCode::kSafetyViolation,
           "both secrets of client " + std::to_string(key.first) + " revealed");
    }
  }
  auto open = [&](uint32_t owner, SecretKind secret) {
    auto it = revealed.find({owner, secret});
    const size_t have = it == revealed.end() ? 0 : it->second.size();
    if (have < ctx_.t()) {
      Fail(ErrorCode::kInsufficientSurvivors,
           std::to_string(have) + " shares to unmask client " +
               std::to_string(owner) + ", threshold " + std::to_string(ctx_.t()));
    }
    return JoinLimbs(AsLimbs(ReconstructVector(it->second, field_)), limb_bits_);
  };

  std::vector<FieldElement> sum(ctx_.config.m, FieldElement{0});
  for (uint32_t c : contributors_) field_.AddInPlace(sum, masked_.at(c));
  if (personal_) {
    for (uint32_t c : contributors_) {
      const Bytes seed = EncodeResidue(open(c, SecretKind::kPersonalSeed),
                                       sizeof(Digest));
      MaskSeed b;
      std::copy(seed.begin(), seed.end(), b.bytes.begin());
      MaskStream(b, kPersonalTag, field_).Accumulate(sum, /*subtract=*/true);
    }
  }
  for (uint32_t k : dropped_) {
    const mpz_class sk = open(k, SecretKind::kDhKey);
    for (uint32_t j : contributors_) {
      const MaskSeed s = DhAgree(sk, PublicKeyOf(j), ctx_.dh);
      // y_j carries +PRG(s_jk) when j < k and -PRG(s_jk) when j > k.
      MaskStream(s, kPairwiseTag, field_).Accumulate(sum, /*subtract=*/j < k);
    }
  }
  unmask_.clear();
  masked_.clear();
  Finish(std::move(sum), contributors_);
}

}  // namespace dlagg
