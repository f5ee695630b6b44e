#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace specdiff::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNonConvergence = 2;

/// Runs the command line given without the program name. Data goes to out
/// (or --out), diagnostics and usage to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "3", "-0.25", "1/4" or "-7/2".
[[nodiscard]] double parse_number(const std::string& text);

}  // namespace specdiff::cli
