#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flipforge::cli {

// args excludes the program name.  Returns 0 on success, 1 when the
// command's claim fails (stuck, non-regular, indecomposable, cyclic), 2 on
// bad input or usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flipforge::cli
