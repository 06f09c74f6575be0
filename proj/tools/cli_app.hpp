#ifndef SUBMATROID_TOOLS_CLI_APP_HPP_
#define SUBMATROID_TOOLS_CLI_APP_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace submatroid::cli {

/// Exit codes: 0 success / all bounds hold, 1 a verified bound was violated
/// or validation found axiom violations, 2 usage or parse error, 3 a
/// resource cap was exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace submatroid::cli

#endif
