#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace topicweave::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitDegenerate = 3;
inline constexpr int kExitInfeasible = 4;

// Runs one command line (args exclude the program name). Reports go to
// `out`, diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace topicweave::cli
