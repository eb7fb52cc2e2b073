#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace widecount::cli {

/// `args` excludes the program name. Exit codes: 0 pass, 1 usage error, 2 a cross-check failed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace widecount::cli
