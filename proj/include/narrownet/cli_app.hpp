// Copyright 2026 The narrownet Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NARROWNET_CLI_APP_HPP_
#define NARROWNET_CLI_APP_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace narrownet {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertionFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

/// Runs the CLI with the given arguments (excluding argv[0]). All regular
/// output goes to `out`, diagnostics to `err`; the return value is the
/// process exit code. In-process so tests can drive it directly.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace narrownet

#endif  // NARROWNET_CLI_APP_HPP_
