#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace meridian::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs the `meridian` command line; args excludes the program name.
/// Returns 0 when everything passed, 1 on any failed check, 2 on usage or
/// domain errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace meridian::cli
