#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bdk {

// Exit codes: 0 success, 1 failed verification or internal error, 2 bad input, 3 guard violation.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace bdk
