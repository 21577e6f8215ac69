#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "awflow/cli/config.hpp"

namespace awflow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitVerification = 4;

enum class Region { G, P, W };

char region_letter(Region r);

/// G: x < s and 3 < 4x^3 s^4 - x^4 s^3.  P: 3 >= 4x^3 s^4 - x^4 s^3.
/// W: everything else. Ties on the level set go to P.
Region classify_region(double x, double s);

/// Each command writes its files under config.out_dir and prints one JSON
/// object to out. The return value is the process exit status.
int run_flow(const RunConfig& config, std::ostream& out);
int run_cone_exit(const RunConfig& config, std::ostream& out);
int run_portrait(const RunConfig& config, std::ostream& out);
int run_verify(const RunConfig& config, std::ostream& out);
int run_roots(const RunConfig& config, std::ostream& out);

/// Dispatches on config.command, turning exceptions into an error JSON on
/// err and exit status 2 (configuration) or 3 (numerical failure).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with the flags of the awflow tool and runs the command.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace awflow::cli
