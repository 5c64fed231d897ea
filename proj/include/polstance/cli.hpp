#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polstance {

/// Entry point of the `polstance` tool. Returns the process exit code; on
/// failure a one-line JSON error object goes to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polstance
