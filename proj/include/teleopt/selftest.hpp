#pragma once

#include <ostream>

namespace teleopt {

/// Condensed invariant suite over all modules; prints one line per check.
/// Returns true iff every check passes.
bool run_selftest(std::ostream& out);

}  // namespace teleopt
