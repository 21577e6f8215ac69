#include "awflow/cli/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <json.hpp>

#include "awflow/cli/output.hpp"
#include "awflow/cli/verify.hpp"
#include "awflow/derivatives.hpp"

namespace awflow::cli {

namespace {

using nlohmann::json;

constexpr double kDefaultFlowHorizon = 1.0;
constexpr double kDefaultPortraitHorizon = 2.0;

FlowSystem make_system(const RunConfig& config) {
  const XiParam xi = config.xi_param();
  switch (config.system) {
    case SystemKind::AW4: return FlowSystem::aw4(xi);
    case SystemKind::AW3: return FlowSystem::aw3(xi);
    case SystemKind::AW2: return FlowSystem::aw2(xi);
    case SystemKind::Berger2: return FlowSystem::berger();
    case SystemKind::NormalizedAW2D: return FlowSystem::normalized();
  }
  throw ConfigError("unknown system");
}

ConeFamily cone_family(SystemKind kind) {
  switch (kind) {
    case SystemKind::AW4: return ConeFamily::AW4;
    case SystemKind::AW3: return ConeFamily::AW3;
    case SystemKind::AW2: return ConeFamily::AW2;
    case SystemKind::Berger2: return ConeFamily::Berger;
    case SystemKind::NormalizedAW2D: break;
  }
  throw ConfigError("no cone boundary for the normalized system");
}

void write_trajectory(const RunConfig& config, const Trajectory& traj, const std::string& stem) {
  write_text(config.out_dir / (stem + ".csv"), trajectory_csv(traj));
  write_text(config.out_dir / (stem + "_events.json"), dump(events_json(traj)));
}

json trajectory_summary(const Trajectory& traj) {
  return {{"stop", std::string(to_string(traj.stop))},
          {"final_time", traj.final_time()},
          {"final_state", state_json(traj.final_state())},
          {"rows", traj.size()}};
}

json error_json(std::string_view kind, std::string_view message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

// 4x^3 s^4 - x^4 s^3.
double region_level(double x, double s) {
  const double x3 = x * x * x, s3 = s * s * s;
  return 4.0 * x3 * s3 * s - x3 * x * s3;
}

}  // namespace

char region_letter(Region r) {
  switch (r) {
    case Region::G: return 'G';
    case Region::P: return 'P';
    case Region::W: return 'W';
  }
  return '?';
}

Region classify_region(double x, double s) {
  const double level = region_level(x, s);
  if (3.0 >= level) return Region::P;
  if (x < s) return Region::G;
  return Region::W;
}

int run_flow(const RunConfig& config, std::ostream& out) {
  const FlowSystem system = make_system(config);
  std::vector<EventFunction> events;
  if (config.cone_event) {
    const ConeFamily family = cone_family(config.system);
    events.push_back(cone_event(family, config.xi_param()));
    if (family == ConeFamily::AW3) {
      events.push_back({"unknown_region",
                        [](double, std::span<const double> g) { return 1.0 - g[1] / g[2]; },
                        false});
    }
  }
  const Trajectory traj = integrate(system, config.init, config.integrator(kDefaultFlowHorizon), events);
  write_trajectory(config, traj, "trajectory");

  json summary = {{"command", "flow"}, {"system", system.name()}};
  summary.update(trajectory_summary(traj));
  const EventRecord* exit = traj.find_event("cone_exit");
  summary["cone_exit_time"] = exit ? json(exit->time) : json(nullptr);
  out << summary.dump() << '\n';
  return kExitOk;
}

int run_cone_exit(const RunConfig& config, std::ostream& out) {
  const ConeFamily family = cone_family(config.system);
  const ConeExit result =
      cone_exit(family, config.init, config.integrator(kDefaultFlowHorizon), config.xi_param());
  write_trajectory(config, result.trajectory, "trajectory");
  const json summary = {{"command", "cone-exit"},
                        {"system", system_flag(config.system)},
                        {"exit_time", result.time},
                        {"state", state_json(result.state)},
                        {"verdict", std::string(to_string(result.verdict.cls))},
                        {"margin", result.verdict.margin}};
  out << summary.dump() << '\n';
  return kExitOk;
}

int run_portrait(const RunConfig& config, std::ostream& out) {
  const GridSpec& g = config.grid;
  std::string regions = "x,s,region\n";
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ns; ++j) {
      const double x = g.x_at(i), s = g.s_at(j);
      regions += format_number(x) + ',' + format_number(s) + ',' +
                 region_letter(classify_region(x, s)) + '\n';
    }
  }
  write_text(config.out_dir / "regions.csv", regions);

  const FlowSystem system = FlowSystem::normalized();
  const IntegratorConfig integ = config.integrator(kDefaultPortraitHorizon);
  const auto seeds = config.seeds.empty() ? default_seeds() : config.seeds;
  json seed_summaries = json::array();
  for (std::size_t n = 0; n < seeds.size(); ++n) {
    const Trajectory traj = integrate(system, {seeds[n][0], seeds[n][1]}, integ);
    write_text(config.out_dir / ("seed_" + std::to_string(n) + ".csv"), trajectory_csv(traj));
    json regions_visited = json::array();
    char last = 0;
    for (const auto& q : traj.states) {
      const char r = region_letter(classify_region(q[0], q[1]));
      if (r != last) regions_visited.push_back(std::string(1, r));
      last = r;
    }
    json entry = {{"seed", n}, {"init", state_json({seeds[n][0], seeds[n][1]})}};
    entry.update(trajectory_summary(traj));
    entry["regions"] = regions_visited;
    seed_summaries.push_back(entry);
  }

  const EinsteinPoints e = einstein_points();
  const auto point = [](const std::array<double, 2>& p) {
    const ConeVerdict v = classify_2param(p[0], p[1]);
    return json{{"x", p[0]}, {"s", p[1]}, {"verdict", std::string(to_string(v.cls))}};
  };
  write_text(config.out_dir / "einstein.json",
             dump({{"E_plus", point(e.plus)}, {"E_minus", point(e.minus)}}));

  const json summary = {{"command", "portrait"},
                        {"grid_points", g.nx * g.ns},
                        {"seeds", seed_summaries}};
  out << summary.dump() << '\n';
  return kExitOk;
}

int run_verify(const RunConfig& config, std::ostream& out) {
  const auto results = run_checks();
  write_text(config.out_dir / "verify_report.json", dump(report_json(results)));
  json failed = json::array();
  for (const auto& r : results) {
    if (!r.passed) failed.push_back(r.check);
  }
  const json summary = {{"command", "verify"},
                        {"checks", results.size()},
                        {"failed", failed}};
  out << summary.dump() << '\n';
  return failed.empty() ? kExitOk : kExitVerification;
}

int run_roots(const RunConfig& config, std::ostream& out) {
  const auto roots = d_roots();
  json chart = json::array();
  const auto sign_at = [](double x) {
    const double d = d_polynomial(x);
    return d > 0.0 ? "+" : (d < 0.0 ? "-" : "0");
  };
  chart.push_back({{"from", nullptr}, {"to", roots.front()}, {"sign", sign_at(roots.front() - 1.0)}});
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    chart.push_back({{"from", roots[i]},
                     {"to", roots[i + 1]},
                     {"sign", sign_at(0.5 * (roots[i] + roots[i + 1]))}});
  }
  chart.push_back({{"from", roots.back()}, {"to", nullptr}, {"sign", sign_at(roots.back() + 1.0)}});
  const json result = {{"command", "roots"},
                       {"roots", json(std::vector<double>(roots.begin(), roots.end()))},
                       {"sign_chart", chart}};
  write_text(config.out_dir / "roots.json", dump(result));
  out << result.dump() << '\n';
  return kExitOk;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    switch (config.command) {
      case Command::Flow: return run_flow(config, out);
      case Command::ConeExit: return run_cone_exit(config, out);
      case Command::Portrait: return run_portrait(config, out);
      case Command::Verify: return run_verify(config, out);
      case Command::Roots: return run_roots(config, out);
    }
  } catch (const ConfigError& e) {
    err << error_json("config", e.what()).dump() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    const bool bad_input = e.code() == ErrorCode::InvalidArgument ||
                           e.code() == ErrorCode::DomainError ||
                           e.code() == ErrorCode::NonPositiveState;
    err << error_json(to_string(e.code()), e.what()).dump() << '\n';
    return bad_input ? kExitConfig : kExitNumerical;
  } catch (const std::exception& e) {
    err << error_json("internal", e.what()).dump() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ricci flow and positive curvature on Aloff-Wallach and Berger spaces"};
  app.require_subcommand(1);

  std::string system = "aw4", init, k, grid, seeds, event = "none", out_dir = ".";
  double xi = 1.0, horizon = 0.0, rel_tol = 1e-10, abs_tol = 1e-12;

  std::vector<CLI::Option*> horizon_opts;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "Output directory");
  };
  const auto add_flow = [&](CLI::App* sub) {
    add_common(sub);
    sub->add_option("--system", system, "aw2, aw3, aw4, berger or normalized");
    sub->add_option("--init", init, "Initial state, comma separated");
    auto* xi_opt = sub->add_option("--xi", xi, "k1/k2 in (0, 1]");
    sub->add_option("--k", k, "k1,k2 (alternative to --xi)")->excludes(xi_opt);
    horizon_opts.push_back(sub->add_option("--horizon", horizon, "Length of the time window"));
    sub->add_option("--rel-tol", rel_tol);
    sub->add_option("--abs-tol", abs_tol);
  };

  auto* flow = app.add_subcommand("flow", "Integrate one trajectory");
  add_flow(flow);
  flow->add_option("--event", event, "cone or none")->check(CLI::IsMember({"cone", "none"}));
  auto* exit_cmd = app.add_subcommand("cone-exit", "Integrate until the cone boundary is crossed");
  add_flow(exit_cmd);
  auto* portrait = app.add_subcommand("portrait", "Region grid and normalized-flow trajectories");
  add_common(portrait);
  portrait->add_option("--grid", grid, "x0:x1:nx,s0:s1:ns");
  portrait->add_option("--seeds", seeds, "File of x,s lines");
  horizon_opts.push_back(portrait->add_option("--horizon", horizon, "Length of the time window"));
  portrait->add_option("--rel-tol", rel_tol);
  portrait->add_option("--abs-tol", abs_tol);
  auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
  add_common(verify);
  auto* roots = app.add_subcommand("roots", "Roots and sign chart of D");
  add_common(roots);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << error_json("config", e.what()).dump() << '\n';
    return kExitConfig;
  }

  RunConfig config;
  try {
    config.out_dir = out_dir;
    config.rel_tol = rel_tol;
    config.abs_tol = abs_tol;
    for (const auto* opt : horizon_opts) {
      if (opt->count() > 0) config.horizon = horizon;
    }
    if (flow->parsed() || exit_cmd->parsed()) {
      config.command = flow->parsed() ? Command::Flow : Command::ConeExit;
      config.system = parse_system(system);
      if (!init.empty()) config.init = parse_float_list(init);
      config.xi = xi;
      if (!k.empty()) config.k = parse_k(k);
      config.cone_event = event == "cone";
    } else if (portrait->parsed()) {
      config.command = Command::Portrait;
      if (!grid.empty()) config.grid = parse_grid(grid);
      if (!seeds.empty()) config.seeds = read_seeds(seeds);
    } else if (verify->parsed()) {
      config.command = Command::Verify;
    } else {
      config.command = Command::Roots;
    }
  } catch (const ConfigError& e) {
    err << error_json("config", e.what()).dump() << '\n';
    return kExitConfig;
  }
  return run(config, out, err);
}

}  // namespace awflow::cli
