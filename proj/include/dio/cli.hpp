#pragma once

#include <ostream>

namespace dio::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kResourceLimit = 3;

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dio::cli
