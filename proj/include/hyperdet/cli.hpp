#pragma once

#include <ostream>

namespace hyperdet {

/// Entry point behind the `hyperdet` executable. Exit codes: 0 success,
/// 1 failed assertion or internal mismatch, 2 usage or input error,
/// 3 sweep finished with a mismatch against the product on an open shape.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hyperdet
