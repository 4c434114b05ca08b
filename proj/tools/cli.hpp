#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace alloyfa::cli {

enum Exit { Ok = 0, UserError = 1, OracleFailure = 2, BudgetExhausted = 3 };

// Runs the command line tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace alloyfa::cli
