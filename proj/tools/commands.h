// tools/commands.h

// Copyright 2026  The arsg Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef ARSG_TOOLS_COMMANDS_H_
#define ARSG_TOOLS_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace arsg {

enum ExitCode { kExitOk = 0, kExitUserError = 1, kExitInternal = 2 };

/// Runs the command line (args[0] is the program name). Diagnostics go to
/// `err`, reports to `out`.
int RunCommandLine(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err);

}  // namespace arsg

#endif  // ARSG_TOOLS_COMMANDS_H_
