#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kolab {

// Entry point of the kolab tool. args[0] is the program name.
// Returns 0 on success, 1 on precondition or infeasibility errors and 2 on
// usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kolab
