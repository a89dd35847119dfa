#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace seqrec::cli {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

// Runs one subcommand. `args` excludes the program name. JSON goes to `out`
// (or the --out file), summaries and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace seqrec::cli
