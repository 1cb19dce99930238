#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace monarel::cli {

/// Runs the monarel command line. args excludes the program name.
/// Returns 0 on pass/true, 1 on fail/false, 2 on usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The text printed by `monarel --help`.
std::string help_text();

}  // namespace monarel::cli
