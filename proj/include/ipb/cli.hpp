#ifndef IPB_CLI_HPP
#define IPB_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ipb::cli {

/// Exit codes: 0 success, 1 failing verdict, 2 usage or parse error,
/// 3 infeasibility (empty credal set).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ipb::cli

#endif
