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

#ifndef DLAGG_PROTOCOL_NV_CLIENT_H_
#define DLAGG_PROTOCOL_NV_CLIENT_H_

#include <map>

#include "dlagg/protocol/client.h"
#include "dlagg/shamir/packed.h"

namespace dlagg {

// Packed Shamir aggregation. Each client shares its encoded input with every
// peer, sums the shares of the contributor set, broadcasts the summed share
// and reconstructs the aggregate from at least t + k - 1 summed shares.
class NvClient : public Client {
 public:
  using Client::Client;

  std::vector<Outbound> Start() override;
  std::optional<Stage> AwaitedBoundary() const override;

 protected:
  std::vector<Outbound> Handle(const ProtocolMessage& msg) override;

 private:
  std::vector<Outbound> CloseShares(const std::vector<uint32_t>& contributors);
  void Reconstruct();

  Stage stage_ = Stage::kShares;
  std::map<uint32_t, ShareVector> input_shares_;
  std::map<uint32_t, ShareVector> aggregated_;
  std::vector<uint32_t> contributors_;
};

}  // namespace dlagg

#endif  // DLAGG_PROTOCOL_NV_CLIENT_H_
