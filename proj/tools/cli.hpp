#pragma once

#include <iosfwd>

namespace agc {

/// Entry point shared by the executable and the tests.
/// Exit codes: 0 success, 1 invalid scenario or runtime failure,
/// 2 usage error or unreadable scenario file.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace agc
