#pragma once

#include <ostream>

namespace growup::cli {

// Subcommands: exponents, eigen, profile, shoot-beta, simulate, verdict, sweep.
// Exit codes: 0 ok, 1 invalid input, 2 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace growup::cli
