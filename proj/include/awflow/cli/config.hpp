#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "awflow/flow.hpp"

namespace awflow::cli {

/// Bad flags or values; maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { Flow, Portrait, Verify, Roots, ConeExit };

std::string_view to_string(Command c);

struct GridSpec {
  double x0 = 0.3;
  double x1 = 2.0;
  int nx = 60;
  double s0 = 0.3;
  double s1 = 2.0;
  int ns = 60;

  void validate() const;
  double x_at(int i) const { return x0 + (x1 - x0) * i / (nx - 1); }
  double s_at(int j) const { return s0 + (s1 - s0) * j / (ns - 1); }
};

using Seed = std::array<double, 2>;

struct RunConfig {
  Command command = Command::Verify;
  SystemKind system = SystemKind::AW4;
  State init;
  double xi = 1.0;
  std::optional<std::pair<std::int64_t, std::int64_t>> k;
  std::optional<double> horizon;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  bool cone_event = false;
  std::filesystem::path out_dir = ".";
  GridSpec grid;
  std::vector<Seed> seeds;

  /// Resolved xi: from --k when present, else --xi.
  XiParam xi_param() const;
  IntegratorConfig integrator(double default_horizon) const;
  /// Throws ConfigError on an inconsistent configuration.
  void validate() const;
};

SystemKind parse_system(std::string_view name);
std::string_view system_flag(SystemKind kind);
std::vector<double> parse_float_list(std::string_view text);
std::pair<std::int64_t, std::int64_t> parse_k(std::string_view text);
/// "x0:x1:nx,s0:s1:ns".
GridSpec parse_grid(std::string_view text);
/// One "x,s" pair per line; blank lines and lines starting with '#' are skipped.
std::vector<Seed> read_seeds(const std::filesystem::path& path);
/// p1 = ((10/11)^{4/3}, 1.1) on the curve x^3 s^4 = 1, and p2 = (0.87, 1.1).
std::vector<Seed> default_seeds();

}  // namespace awflow::cli
