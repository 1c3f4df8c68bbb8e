#ifndef COXSMOOTH_CLI_HPP
#define COXSMOOTH_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace coxsmooth::cli {

// Runs the command-line interface on the given argument list (without the
// program name), writing regular output to `out` and diagnostics to `err`.
//
// Exit status: 0 on success, 1 on user errors (bad arguments, unreadable or
// invalid group files, unknown generators, precondition violations, caps),
// 2 on internal errors and theorem violations.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace coxsmooth::cli

#endif  // COXSMOOTH_CLI_HPP
