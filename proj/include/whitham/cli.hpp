#ifndef WHITHAM_CLI_HPP
#define WHITHAM_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace whitham {

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns 0 on success, 1 on domain or I/O errors, 2 on
/// usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace whitham

#endif  // WHITHAM_CLI_HPP
