// Copyright 2026 The Hyperflow Authors
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

#ifndef HYPERFLOW_TOOLS_CLI_H_
#define HYPERFLOW_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"

namespace hyperflow::cli {

enum ExitCode {
  kOk = 0,
  kNotRefines = 1,
  kUsage = 2,
  kMismatch = 3,
};

// Runs the command line `args` (args[0] is the program name) and returns the
// process exit code.
int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err);

// kFailedPrecondition (space and shape mismatches) maps to kMismatch,
// everything else to kUsage.
int ExitCodeFor(const absl::Status& status);

}  // namespace hyperflow::cli

#endif  // HYPERFLOW_TOOLS_CLI_H_
