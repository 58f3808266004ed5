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

#ifndef DLAGG_PROTOCOL_LWE_CLIENT_H_
#define DLAGG_PROTOCOL_LWE_CLIENT_H_

#include <map>

#include "dlagg/protocol/client.h"
#include "dlagg/shamir/packed.h"

namespace dlagg {

// LWE masking. Each client packed-shares a uniform secret s_i, then
// broadcasts h_i = w_i + A s_i + e_i. Holders sum the s-shares of the clients
// whose h arrived, broadcast the sum, and every client recovers
// sum(h) - A sum(s) = sum(w) + sum(e).
class LweClient : public Client {
 public:
  using Client::Client;

  std::vector<Outbound> Start() override;
  std::optional<Stage> AwaitedBoundary() const override;

 protected:
  std::vector<Outbound> Handle(const ProtocolMessage& msg) override;

 private:
  std::vector<Outbound> CloseMasked(const std::vector<uint32_t>& contributors);
  bool HeardFromAllContributors() const;
  void Reconstruct();

  Stage stage_ = Stage::kMasked;
  std::map<uint32_t, ShareVector> secret_shares_;
  std::map<uint32_t, std::vector<FieldElement>> masked_;
  std::map<uint32_t, ShareVector> sum_shares_;
  std::vector<uint32_t> contributors_;
  std::vector<FieldElement> masked_sum_;
};

}  // namespace dlagg

#endif  // DLAGG_PROTOCOL_LWE_CLIENT_H_
