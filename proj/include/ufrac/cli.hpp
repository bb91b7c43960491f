#pragma once

// Command-line front end. Exit codes: 0 success, 1 invalid input, 2 a failed
// invariant (for example a non-integral z or a witness that does not replay).

#include <iosfwd>

namespace ufrac {

/// Environment variable holding the default worker count.
inline constexpr const char* kThreadsEnv = "UFRAC_THREADS";

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ufrac
