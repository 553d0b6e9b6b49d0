#pragma once

#include <ostream>

namespace rotlaw {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes: 0 success, 1 internal failure, 2 validation error,
/// 3 undecided or not-found outcome (a report is still emitted).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rotlaw
