// Copyright 2026 The xmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XMC_SERVICE_CLI_H_
#define XMC_SERVICE_CLI_H_

#include <iosfwd>

namespace xmc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsageError = 2;

// Entry point of the xmc tool. Subcommands: ingest, stats, score, tamper,
// evaluate, rank, serve, synth. Returns kExitUsageError for bad flags and
// kExitDataError when the inputs fail validation or an operation fails.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace xmc

#endif  // XMC_SERVICE_CLI_H_
