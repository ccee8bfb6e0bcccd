#pragma once

#include <string>
#include <vector>

namespace causalmt {

// Runs one subcommand; args exclude the program name. Returns 0 on
// success, 1 on usage errors, 2 on data errors.
int cli_dispatch(std::vector<std::string> args);

}  // namespace causalmt
