#pragma once

#include <iosfwd>

namespace chronoplot::cli {

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_input = 1;    // unreadable data, CSV or schema problems, bad usage
inline constexpr int exit_spec = 2;     // plot spec errors, incompatible granularity
inline constexpr int exit_validity = 3; // validity violations (validate, or plot --strict)

// Runs `chronoplot <plot|validate|convert> ...`. Results go to --out or
// `out`; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace chronoplot::cli
