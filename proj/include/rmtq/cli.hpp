// Copyright 2026 The rmtq authors
//
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

#ifndef RMTQ_CLI_HPP
#define RMTQ_CLI_HPP

#include <string>
#include <utility>
#include <vector>

namespace rmtq {

/// Names and one-line descriptions of every CLI command, in display order.
/// The CLI app is built from this table, so each entry is guaranteed to have
/// a registered handler.
std::vector<std::pair<std::string, std::string>> command_catalog();

/// Entry point of the `rmtq` binary. Exit codes: 0 success, 2 usage error,
/// 1 guard or runtime failure.
int rmtq_main(int argc, char** argv);

}  // namespace rmtq

#endif  // RMTQ_CLI_HPP
