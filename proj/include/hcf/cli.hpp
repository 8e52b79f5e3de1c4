#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hcf::cli {

/// Exit codes of the batch front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

/// Runs one command. `args` excludes the program name, e.g.
/// {"simulate", "--config", "ce25.json", "--t-end", "1"}.
/// Reports go to the --output file (relative paths resolve against
/// $HCF_OUTPUT_DIR when set) or to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hcf::cli
