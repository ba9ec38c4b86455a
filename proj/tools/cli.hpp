#ifndef BALFACT_TOOLS_CLI_HPP
#define BALFACT_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace balfact::cli {

enum Exit { kOk = 0, kAbsent = 1, kUsage = 2, kBudget = 3 };

/// Runs one command.  args excludes the program name.  JSON lines go to out, tables and
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace balfact::cli

#endif
