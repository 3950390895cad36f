#pragma once

#include <iosfwd>

namespace divdiv::cli {

/// Exit codes: 0 when every selected check passes, 1 when one fails, 2 on usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace divdiv::cli
