#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace biphoton::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRegime = 3;

/// Runs one command. `args` excludes the program name. Artifacts go under
/// --out; a one-line JSON error is written to `err` on failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace biphoton::cli
