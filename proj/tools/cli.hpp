#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace realset {

/// Exit code 0 on success, 1 on a domain failure, 2 on usage or parse errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace realset
