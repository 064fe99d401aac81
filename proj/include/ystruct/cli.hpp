#pragma once

#include <iosfwd>

namespace ystruct {

// Command-line entry point. Exit codes: 0 success, 1 usage error, 2 data or
// format error.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ystruct
