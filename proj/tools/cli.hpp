#ifndef WIDTHLAB_TOOLS_CLI_HPP_
#define WIDTHLAB_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace widthlab::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kResourceError = 3;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace widthlab::cli

#endif  // WIDTHLAB_TOOLS_CLI_HPP_
