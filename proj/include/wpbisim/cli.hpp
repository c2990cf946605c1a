#pragma once

#include <ostream>

namespace wpb {

/// Exit codes: 0 positive answer or success, 1 negative answer, 2 usage or
/// input error, 3 internal soundness error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wpb
