#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "tracelab/common.hpp"

namespace tracelab {

// "1.5", "-2i", "0.5+0.3i", "3-i"; throws std::invalid_argument.
cplx parse_complex(const std::string& text);

// Exit status: 0 every check within budget, 1 some check failed, 2 usage or
// input error. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tracelab
