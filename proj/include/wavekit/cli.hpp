#pragma once

#include <string>
#include <vector>

namespace wavekit::cli {

/// Exit statuses shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIoOrParse = 2;
inline constexpr int kExitUnsupportedWavelet = 3;

/// Entry point of the `wavekit` tool. argv[0] is the program name.
int run(int argc, const char* const* argv);

/// Convenience for tests: args excludes the program name.
int run(const std::vector<std::string>& args);

} // namespace wavekit::cli
