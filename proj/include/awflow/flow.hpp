#pragma once

// Ricci flow ODEs for the invariant metric families and an adaptive
// Dormand-Prince 5(4) integrator with dense output and event location.

#include <array>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "awflow/cone.hpp"
#include "awflow/errors.hpp"
#include "awflow/geometry.hpp"

namespace awflow {

using State = std::vector<double>;

/// (t', s0', s1', s2') = -2 (r0 t, r1 s0, r2 s1, r3 s2).
std::array<double, 4> aw_rhs(const AWMetric& m, XiParam xi);

/// (x1', x2') = -2 (r1 x1, r2 x2).
std::array<double, 2> berger_rhs(const BergerMetric& m);

/// Volume-normalized flow of (x^-2 s^-4, x, s, s) on W_{1,1}, written in the
/// plane (x, s).
std::array<double, 2> normalized_rhs(double x, double s);

enum class SystemKind { AW4, AW3, AW2, Berger2, NormalizedAW2D };

/// One of the flow systems. States are
///   AW4: (t, s0, s1, s2)   AW3: (t, x, s)   AW2: (t, s)
///   Berger2: (x1, x2)      NormalizedAW2D: (x, s)
class FlowSystem {
 public:
  static FlowSystem aw4(XiParam xi);
  /// The reduced systems exist only on W_{1,1}; xi != 1 throws InvalidArgument.
  static FlowSystem aw3(XiParam xi = XiParam(1.0));
  static FlowSystem aw2(XiParam xi = XiParam(1.0));
  static FlowSystem berger();
  static FlowSystem normalized();

  SystemKind kind() const { return kind_; }
  XiParam xi() const { return xi_; }
  int dimension() const;
  std::string_view name() const;

  void rhs(std::span<const double> state, std::span<double> out) const;
  State rhs(std::span<const double> state) const;

  /// Throws Error{NonPositiveState} unless state has the right size and is
  /// strictly positive.
  void check_state(std::span<const double> state) const;

 private:
  FlowSystem(SystemKind kind, XiParam xi) : kind_(kind), xi_(xi) {}

  SystemKind kind_;
  XiParam xi_;
};

enum class Direction { Forward, Backward };

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 1e-2;
  double max_time = 1.0;  // length of the window in the chosen direction
  Direction direction = Direction::Forward;
  long max_steps = 1'000'000;

  void validate() const;
};

/// Scalar function whose sign change along the trajectory is an event.
struct EventFunction {
  std::string name;
  std::function<double(double ell, std::span<const double> state)> fn;
  /// Terminal events stop the integration at their first crossing; others
  /// are recorded at every crossing.
  bool terminal = true;
};

struct EventRecord {
  double time;
  std::string name;
  State state;
};

enum class StopReason { Horizon, Event, Singularity };

std::string_view to_string(StopReason r);

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  std::vector<EventRecord> events;
  StopReason stop = StopReason::Horizon;

  std::size_t size() const { return times.size(); }
  const State& final_state() const { return states.back(); }
  double final_time() const { return times.back(); }
  /// First recorded event with this name, or nullptr.
  const EventRecord* find_event(std::string_view name) const;
};

/// Error raised mid-integration; carries what was computed before failing.
class IntegrationFailure : public Error {
 public:
  IntegrationFailure(ErrorCode code, const std::string& what, Trajectory partial)
      : Error(code, what), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

/// Event times are located by bisection on the dense output to this width.
inline constexpr double kEventTimeTolerance = 1e-10;

/// Integrates until |ell| reaches max_time, every terminal event has fired,
/// or a component falls below abs_tol (StopReason::Singularity; the flow
/// ceases to exist there). Throws IntegrationFailure{StepSizeUnderflow} if
/// the step collapses away from a singularity, Error{NonPositiveState} for a
/// bad initial state.
Trajectory integrate(const FlowSystem& system, const State& init,
                     const IntegratorConfig& config,
                     const std::vector<EventFunction>& events = {});

enum class ConeFamily { AW2, AW3, AW4, Berger };

std::string_view to_string(ConeFamily f);

/// The flow system a cone family integrates under.
FlowSystem cone_system(ConeFamily family, XiParam xi);

/// Boundary function that is positive inside the cone:
///   AW2: s - t, AW3: t_A(x/s, 1, 1) - t/s, AW4: t_A(s, xi) - t,
///   Berger: 2 x2 - x1.
EventFunction cone_event(ConeFamily family, XiParam xi);

/// Verdict of the family's classifier on a state of that family.
ConeVerdict classify_state(ConeFamily family, std::span<const double> state, XiParam xi);

struct ConeExit {
  double time;
  State state;          // first dense-output state past the boundary
  ConeVerdict verdict;  // classifier verdict at that state
  Trajectory trajectory;
};

/// Integrates forward from a positively curved initial metric until it
/// crosses the cone boundary. Throws Error{InvalidArgument} if init is not
/// classified PositivelyCurved and IntegrationFailure{NoExitWithinHorizon}
/// if no crossing happens in the window.
ConeExit cone_exit(ConeFamily family, const State& init, const IntegratorConfig& config,
                   XiParam xi = XiParam(1.0));

}  // namespace awflow
