#include "awflow/cli/output.hpp"

#include <cstdio>
#include <fstream>

#include "awflow/cli/config.hpp"

namespace awflow::cli {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "ell";
  const std::size_t width = traj.states.empty() ? 0 : traj.states.front().size();
  for (std::size_t i = 0; i < width; ++i) out += ",comp" + std::to_string(i);
  out += '\n';
  for (std::size_t row = 0; row < traj.size(); ++row) {
    out += format_number(traj.times[row]);
    for (double c : traj.states[row]) {
      out += ',';
      out += format_number(c);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json state_json(const State& state) {
  nlohmann::json arr = nlohmann::json::array();
  for (double c : state) arr.push_back(c);
  return arr;
}

nlohmann::json events_json(const Trajectory& traj) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : traj.events) {
    events.push_back({{"time", e.time}, {"name", e.name}, {"state", state_json(e.state)}});
  }
  return {{"events", events}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("failed writing " + path.string());
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace awflow::cli
