#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace quandle::cli {

// Exit codes: 0 success, 1 domain failure, 2 usage or parse error.
inline constexpr int kOk = 0;
inline constexpr int kDomainFailure = 1;
inline constexpr int kUsageError = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quandle::cli
