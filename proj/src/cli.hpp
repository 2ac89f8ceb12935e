#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rectree::cli {

enum ExitCode { ok = 0, check_failed = 1, usage_error = 2, guard_violation = 3 };

// args excludes the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Formula ids listed in --help
std::string formula_list();

}  // namespace rectree::cli
