#pragma once

#include <iosfwd>

namespace banach {

/// Entry point of the banach-geom tool. Writes results to out and diagnostics
/// to err. Exit codes: 0 success, 2 input error, 3 a verification suite
/// reported a failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace banach
