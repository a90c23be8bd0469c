#pragma once

#include <ostream>

namespace recon {

// Entry point of the `recon` command. Exit codes: 0 success or clean
// verification, 1 violations or a failed geometric check, 2 malformed input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace recon
