#pragma once

#include <ostream>
#include <span>
#include <string>

namespace negamm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one CLI invocation. `args` excludes the program name. Returns 0 on
/// success, 1 on domain/convergence/data errors and 2 on usage errors.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace negamm::cli
