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

#ifndef DLAGG_TOOLS_CLI_H_
#define DLAGG_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace dlagg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

// Entry point shared by the binary and the tests. args excludes argv[0].
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// Property suite behind "verify".
struct VerifyOptions {
  bool quick = false;
  bool fault_inject = false;
  unsigned threads = 1;
};
int RunVerify(const VerifyOptions& options, std::ostream& out);

}  // namespace dlagg::cli

#endif  // DLAGG_TOOLS_CLI_H_
