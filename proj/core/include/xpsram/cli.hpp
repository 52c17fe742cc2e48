#pragma once

#include <string>
#include <vector>

namespace xpsram::cli {

// Exit codes: 0 success, 1 config/usage error, 2 completed with diagnostics.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitDiagnostic = 2;

// Entry point behind the `xpsram` binary; args exclude the program name.
// Subcommands: bitcell | array | sweep-dl | energy.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace xpsram::cli
