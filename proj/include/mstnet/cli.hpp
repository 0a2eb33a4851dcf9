#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mstnet/error.hpp"

namespace mstnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitUnderdeterminedFit = 4;

int exit_code(ErrorKind kind) noexcept;

/// Runs one command line (without the program name). Diagnostics go to `err`;
/// `out` receives help text and any output directed to stdout.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mstnet::cli
