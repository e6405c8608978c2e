#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace blackbench {

/// Entry point behind the `blackbench` executable. `args` includes the
/// program name. Returns 0 on success, 1 on runtime errors and 2 on usage
/// errors (unknown flags, missing or conflicting options).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blackbench
