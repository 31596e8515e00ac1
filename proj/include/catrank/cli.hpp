#ifndef CATRANK_CLI_HPP
#define CATRANK_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace catrank {

// Dispatches one command invocation. JSON report on `out`, human summary on
// `err`. Exit codes: 0 success (and, for check, all assertions pass),
// 1 evaluation error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace catrank

#endif  // CATRANK_CLI_HPP
