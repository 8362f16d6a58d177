#pragma once

#include <ostream>

namespace ramsey::cli {

/// Exit statuses of the command-line tool.
enum Status : int {
    ok = 0,
    usage_error = 2,
    format_error = 3,
    precondition_error = 4,
};

/// Runs one command line. The report goes to `out`, diagnostics to `err`.
int run(int argc, const char * const * argv, std::ostream & out, std::ostream & err);

} // namespace ramsey::cli
