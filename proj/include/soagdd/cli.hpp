#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace soagdd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;

/// Entry point of the `soagdd` command line tool. `args` excludes the
/// program name. Subcommands: detect, baseline, kernels, synth, eval,
/// match, compare. Returns 0 on success, 1 on usage or parameter errors and
/// 2 on I/O errors; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace soagdd
