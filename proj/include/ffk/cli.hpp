#ifndef FFK_CLI_HPP
#define FFK_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ffk {

// Command-line front end, callable in-process for tests. Exit codes:
//   0 success, 1 usage/parse errors, 2 precondition failures
//   (FieldTooSmall, InconsistentSystem, ...), 3 retry exhaustion.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ffk

#endif
