#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conerad {

/// Command-line front end. Exit status 0 on success, 1 on usage errors,
/// 2 on numerical failure; failures also emit one machine-readable JSON
/// line on the error stream.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace conerad
