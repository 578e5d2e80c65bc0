#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tradeopt {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;

// Entry point of the `tradeopt` command; `args` excludes the program name.
//
//   tradeopt optimize --snapshot league.json [--preset NAME] [overrides] [--out trades.csv]
//   tradeopt evaluate --snapshot league.json --opponent T2 --give a,b --receive c [--format json]
//   tradeopt baseline --snapshot league.json [--samples N | --exhaustive]
//
// Returns 0 on success, 2 for invalid input or configuration, 3 for I/O
// failures.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tradeopt
