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

#ifndef DLAGG_PROTOCOL_PW_CLIENT_H_
#define DLAGG_PROTOCOL_PW_CLIENT_H_

#include <map>
#include <vector>

#include "dlagg/masking/dh.h"
#include "dlagg/masking/stream.h"
#include "dlagg/protocol/client.h"
#include "dlagg/shamir/packed.h"

namespace dlagg {

// Pairwise DH masking with double masking.
//   keys:   broadcast g^a_i; Shamir-share a_i and the personal seed b_i.
//   masked: y_i = w_i + PRG(b_i) + sum_{j>i} PRG(s_ij) - sum_{j<i} PRG(s_ij)
//           over the key-stage roster.
//   unmask: reveal shares of a_k for roster members whose y never arrived and
//           of b_i for every contributor; never both for one client.
// With personal_mask off, b_i is neither added nor shared.
class PwClient : public Client {
 public:
  PwClient(uint32_t id, const RoundContext& ctx, std::span<const double> input,
           const Digest& seed);

  std::vector<Outbound> Start() override;
  std::optional<Stage> AwaitedBoundary() const override;

 protected:
  std::vector<Outbound> Handle(const ProtocolMessage& msg) override;

 private:
  bool KeysCompleteFor(uint32_t c) const;
  std::vector<Outbound> CloseKeys(const std::vector<uint32_t>& roster);
  std::vector<Outbound> CloseMasked(const std::vector<uint32_t>& contributors);
  bool HeardFromRoster() const;
  bool HeardFromAllContributors() const;
  void Reconstruct();
  mpz_class PublicKeyOf(uint32_t c) const;

  const bool personal_;
  const unsigned limb_bits_;
  Stage stage_ = Stage::kKeys;
  KeyPair keys_;
  Digest personal_seed_{};

  std::map<uint32_t, Bytes> public_keys_;
  std::map<uint32_t, ShareVector> key_shares_;
  std::map<uint32_t, ShareVector> seed_shares_;
  std::map<uint32_t, std::vector<FieldElement>> masked_;
  std::map<uint32_t, std::vector<UnmaskEntry>> unmask_;

  std::vector<uint32_t> roster_;
  std::vector<uint32_t> contributors_;
  std::vector<uint32_t> dropped_;
};

}  // namespace dlagg

#endif  // DLAGG_PROTOCOL_PW_CLIENT_H_
