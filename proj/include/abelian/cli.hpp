#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

namespace abelian::cli {

inline constexpr std::string_view kToolName = "abelian";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum ExitCode : int {
    kSuccess = 0,
    kCheckFailed = 1,
    kArgumentError = 2,
    kDataError = 3,
};

/// Runs one command line (arguments after the program name). Payloads go to
/// `out`, diagnostics to `err`; returns the process exit status.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace abelian::cli
