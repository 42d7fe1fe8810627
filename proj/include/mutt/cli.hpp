#pragma once

#include <iosfwd>

namespace mutt {

// Entry point of the `mutt` executable. Returns 0 on success, 1 when any
// error diagnostic was reported, 2 on usage errors.
int run_cli(int argc, const char* const* argv);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mutt
