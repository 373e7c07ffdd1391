// Command-line front end; tools/ncgcurv.cpp is a thin wrapper around run().
#pragma once

#include <ostream>

namespace ncgcurv::cli {

// 0 all checks pass, 1 some check failed (report still written), 2 bad input
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ncgcurv::cli
