#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ddc::cli {

/// Runs one `lab` invocation. args excludes the program name. Reports go to
/// out (or --output), diagnostics to err. Returns 0 on success or a passing
/// verdict, 1 when a counterexample or violation was found, 2 on invalid input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const char* version();

}  // namespace ddc::cli
