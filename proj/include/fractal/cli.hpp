#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fractal::cli {

// Runs the `fractal` command line. args excludes the program name.
// Returns 0 on success, 1 on usage errors and 2 on domain errors (parse,
// bound, budget) or failed checks.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fractal::cli
