#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "awflow/flow.hpp"

namespace awflow::cli {

/// printf "%.17g": enough digits to round-trip any double.
std::string format_number(double value);

/// Header "ell,comp0,comp1,..." then one row per stored state, LF endings.
std::string trajectory_csv(const Trajectory& traj);

/// {"events":[{"time":..., "name":..., "state":[...]}]}
nlohmann::json events_json(const Trajectory& traj);

nlohmann::json state_json(const State& state);

/// Writes text, creating the parent directory. Throws ConfigError when the
/// file cannot be opened.
void write_text(const std::filesystem::path& path, const std::string& text);

/// Two-space indented JSON followed by a newline.
std::string dump(const nlohmann::json& j);

}  // namespace awflow::cli
