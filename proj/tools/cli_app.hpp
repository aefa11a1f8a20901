#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kkbounds::cli {

/// Runs one command line (without the program name). Exit status 0 on success,
/// 2 on precondition violations, 1 on usage, parse and I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kkbounds::cli
