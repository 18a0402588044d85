#pragma once
#include <ostream>

namespace bcs {

/// Exit codes: 0 success, 1 failure, 2 bound too small, 3 ingestion error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bcs
