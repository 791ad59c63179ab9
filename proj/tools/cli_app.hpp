#pragma once

#include <iosfwd>

#include "edmyield/error.hpp"

namespace edmyield::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNotEdm = 3;
inline constexpr int kExitPrecondition = 4;

int exit_code_for(ErrorCode code);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace edmyield::cli
