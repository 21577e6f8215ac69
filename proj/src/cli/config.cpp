#include "awflow/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace awflow::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view s) {
  s = trim(s);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw ConfigError("not a finite number: '" + std::string(s) + "'");
  }
  return value;
}

template <class Int>
Int parse_int(std::string_view s) {
  s = trim(s);
  Int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("not an integer: '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Flow: return "flow";
    case Command::Portrait: return "portrait";
    case Command::Verify: return "verify";
    case Command::Roots: return "roots";
    case Command::ConeExit: return "cone-exit";
  }
  return "unknown";
}

void GridSpec::validate() const {
  if (nx < 2 || ns < 2) throw ConfigError("grid counts must be at least 2");
  if (!(x0 > 0.0 && x1 > x0 && s0 > 0.0 && s1 > s0)) {
    throw ConfigError("grid ranges must be positive and increasing");
  }
}

XiParam RunConfig::xi_param() const {
  try {
    if (k) return XiParam::from_pair(k->first, k->second);
    return XiParam(xi);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

IntegratorConfig RunConfig::integrator(double default_horizon) const {
  IntegratorConfig c;
  c.rel_tol = rel_tol;
  c.abs_tol = abs_tol;
  c.max_time = horizon.value_or(default_horizon);
  try {
    c.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return c;
}

void RunConfig::validate() const {
  (void)xi_param();
  if (horizon && !(*horizon > 0.0)) throw ConfigError("--horizon must be positive");
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ConfigError("tolerances must be positive");
  grid.validate();

  if (command == Command::Flow || command == Command::ConeExit) {
    if (init.empty()) throw ConfigError("--init is required");
    const XiParam x = xi_param();
    if ((system == SystemKind::AW2 || system == SystemKind::AW3) && x.value() != 1.0) {
      throw ConfigError("aw2 and aw3 exist only at xi = 1");
    }
    const FlowSystem sys = system == SystemKind::AW4   ? FlowSystem::aw4(x)
                           : system == SystemKind::AW3 ? FlowSystem::aw3()
                           : system == SystemKind::AW2 ? FlowSystem::aw2()
                           : system == SystemKind::Berger2 ? FlowSystem::berger()
                                                           : FlowSystem::normalized();
    try {
      sys.check_state(init);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  if (command == Command::ConeExit && system == SystemKind::NormalizedAW2D) {
    throw ConfigError("cone-exit needs one of aw2, aw3, aw4, berger");
  }
  if (command == Command::Flow && cone_event && system == SystemKind::NormalizedAW2D) {
    throw ConfigError("--event cone is not defined for the normalized system");
  }
  for (const auto& seed : seeds) {
    if (!(seed[0] > 0.0 && seed[1] > 0.0)) throw ConfigError("seeds must be positive");
  }
}

SystemKind parse_system(std::string_view name) {
  if (name == "aw4") return SystemKind::AW4;
  if (name == "aw3") return SystemKind::AW3;
  if (name == "aw2") return SystemKind::AW2;
  if (name == "berger") return SystemKind::Berger2;
  if (name == "normalized") return SystemKind::NormalizedAW2D;
  throw ConfigError("unknown system '" + std::string(name) + "'");
}

std::string_view system_flag(SystemKind kind) {
  switch (kind) {
    case SystemKind::AW4: return "aw4";
    case SystemKind::AW3: return "aw3";
    case SystemKind::AW2: return "aw2";
    case SystemKind::Berger2: return "berger";
    case SystemKind::NormalizedAW2D: return "normalized";
  }
  return "unknown";
}

std::vector<double> parse_float_list(std::string_view text) {
  if (trim(text).empty()) throw ConfigError("empty number list");
  std::vector<double> out;
  for (auto part : split(text, ',')) out.push_back(parse_double(part));
  return out;
}

std::pair<std::int64_t, std::int64_t> parse_k(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw ConfigError("--k expects two integers k1,k2");
  return {parse_int<std::int64_t>(parts[0]), parse_int<std::int64_t>(parts[1])};
}

GridSpec parse_grid(std::string_view text) {
  const auto axes = split(text, ',');
  if (axes.size() != 2) throw ConfigError("--grid expects x0:x1:nx,s0:s1:ns");
  const auto xs = split(axes[0], ':');
  const auto ss = split(axes[1], ':');
  if (xs.size() != 3 || ss.size() != 3) throw ConfigError("--grid expects x0:x1:nx,s0:s1:ns");
  GridSpec g{parse_double(xs[0]), parse_double(xs[1]), parse_int<int>(xs[2]),
             parse_double(ss[0]), parse_double(ss[1]), parse_int<int>(ss[2])};
  g.validate();
  return g;
}

std::vector<Seed> read_seeds(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read seed file " + path.string());
  std::vector<Seed> seeds;
  std::string line;
  while (std::getline(in, line)) {
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto values = parse_float_list(body);
    if (values.size() != 2) throw ConfigError("seed lines must be 'x,s'");
    seeds.push_back({values[0], values[1]});
  }
  if (seeds.empty()) throw ConfigError("seed file has no seeds");
  return seeds;
}

std::vector<Seed> default_seeds() {
  return {{std::pow(10.0 / 11.0, 4.0 / 3.0), 1.1}, {0.87, 1.1}};
}

}  // namespace awflow::cli
