#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace antitai {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitCap = 3;

// Runs one CLI invocation. args[0] is the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace antitai
