#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ustatboot/sample.hpp"

namespace ustatboot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// Parses comma-separated numeric rows. A first line with any non-numeric
/// field is taken as a header. Throws DataError naming the line on ragged or
/// non-numeric input.
Sample read_csv(std::istream& in, std::vector<std::string>* header = nullptr);

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ustatboot::cli
