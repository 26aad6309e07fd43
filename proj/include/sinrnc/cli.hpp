#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sinrnc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;

// Entry point behind the `sinrnc` binary. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sinrnc::cli
