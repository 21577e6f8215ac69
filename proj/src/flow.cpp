#include "awflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace awflow {

std::array<double, 4> aw_rhs(const AWMetric& m, XiParam xi) {
  const AWRicci r = ricci_eigenvalues_aw(m, xi);
  return {-2.0 * r.r0 * m.t, -2.0 * r.r1 * m.s0, -2.0 * r.r2 * m.s1, -2.0 * r.r3 * m.s2};
}

std::array<double, 2> berger_rhs(const BergerMetric& m) {
  const BergerRicci r = ricci_eigenvalues_berger(m);
  return {-2.0 * r.r1 * m.x1, -2.0 * r.r2 * m.x2};
}

std::array<double, 2> normalized_rhs(double x, double s) {
  const double x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x;
  const double s2 = s * s, s4 = s2 * s2, s5 = s4 * s, s6 = s5 * s;
  const double dx =
      (-40.0 * x3 * s6 + 24.0 * s2 - 18.0 * x5 * s4 - 2.0 * x2 + 48.0 * x4 * s5) /
      (7.0 * x3 * s6);
  const double ds =
      (-36.0 * x4 * s5 + 16.0 * x3 * s6 + 10.0 * x5 * s4 + 5.0 * x2 - 4.0 * s2) /
      (7.0 * x4 * s5);
  return {dx, ds};
}

FlowSystem FlowSystem::aw4(XiParam xi) { return {SystemKind::AW4, xi}; }

FlowSystem FlowSystem::aw3(XiParam xi) {
  if (xi.value() != 1.0)
    throw Error(ErrorCode::InvalidArgument, "the 3-parameter family is only invariant at xi = 1");
  return {SystemKind::AW3, xi};
}

FlowSystem FlowSystem::aw2(XiParam xi) {
  if (xi.value() != 1.0)
    throw Error(ErrorCode::InvalidArgument, "the 2-parameter family is only invariant at xi = 1");
  return {SystemKind::AW2, xi};
}

FlowSystem FlowSystem::berger() { return {SystemKind::Berger2, XiParam(1.0)}; }

FlowSystem FlowSystem::normalized() { return {SystemKind::NormalizedAW2D, XiParam(1.0)}; }

int FlowSystem::dimension() const {
  switch (kind_) {
    case SystemKind::AW4: return 4;
    case SystemKind::AW3: return 3;
    default: return 2;
  }
}

std::string_view FlowSystem::name() const {
  switch (kind_) {
    case SystemKind::AW4: return "aw4";
    case SystemKind::AW3: return "aw3";
    case SystemKind::AW2: return "aw2";
    case SystemKind::Berger2: return "berger";
    case SystemKind::NormalizedAW2D: return "normalized";
  }
  return "unknown";
}

void FlowSystem::check_state(std::span<const double> state) const {
  if (static_cast<int>(state.size()) != dimension()) {
    std::ostringstream msg;
    msg << name() << " expects a state of dimension " << dimension() << ", got "
        << state.size();
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  for (double v : state) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw Error(ErrorCode::NonPositiveState,
                  std::string(name()) + ": state components must be positive");
    }
  }
}

void FlowSystem::rhs(std::span<const double> y, std::span<double> out) const {
  switch (kind_) {
    case SystemKind::AW4: {
      const auto d = aw_rhs({y[0], y[1], y[2], y[3]}, xi_);
      std::copy(d.begin(), d.end(), out.begin());
      return;
    }
    case SystemKind::AW3: {
      // (t, x, s) embedded as (t, x, s, s); r2 = r3 on this slice.
      const auto d = aw_rhs({y[0], y[1], y[2], y[2]}, xi_);
      out[0] = d[0];
      out[1] = d[1];
      out[2] = d[2];
      return;
    }
    case SystemKind::AW2: {
      const auto d = aw_rhs({y[0], y[0], y[1], y[1]}, xi_);
      out[0] = d[0];
      out[1] = d[2];
      return;
    }
    case SystemKind::Berger2: {
      const auto d = berger_rhs({y[0], y[1]});
      out[0] = d[0];
      out[1] = d[1];
      return;
    }
    case SystemKind::NormalizedAW2D: {
      const auto d = normalized_rhs(y[0], y[1]);
      out[0] = d[0];
      out[1] = d[1];
      return;
    }
  }
}

State FlowSystem::rhs(std::span<const double> state) const {
  State out(static_cast<std::size_t>(dimension()));
  rhs(state, out);
  return out;
}

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0 && abs_tol > 0.0 && max_step > 0.0 && max_time > 0.0 &&
        max_steps > 0)) {
    throw Error(ErrorCode::InvalidArgument,
                "integrator tolerances, max_step and max_time must be positive");
  }
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::Horizon: return "horizon";
    case StopReason::Event: return "event";
    case StopReason::Singularity: return "singularity";
  }
  return "unknown";
}

const EventRecord* Trajectory::find_event(std::string_view name) const {
  for (const auto& e : events)
    if (e.name == name) return &e;
  return nullptr;
}

namespace {

// Dormand-Prince 5(4) tableau with Hairer's 4th-order continuous extension.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

// Interpolant over one accepted step [t0, t0 + h].
struct DenseStep {
  double t0 = 0.0;
  double h = 0.0;
  std::array<State, 5> r;

  State at(double t) const {
    const double theta = (t - t0) / h;
    const double theta1 = 1.0 - theta;
    State y(r[0].size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] = r[0][i] +
             theta * (r[1][i] + theta1 * (r[2][i] + theta * (r[3][i] + theta1 * r[4][i])));
    }
    return y;
  }
};

class DormandPrince {
 public:
  DormandPrince(const FlowSystem& system, std::size_t n)
      : system_(system), k_{}, ytmp_(n), ynew_(n), err_(n) {
    for (auto& k : k_) k.assign(n, 0.0);
  }

  // k_[0] must hold f(t, y). On return k_[6] holds f(t+h, ynew) (FSAL).
  // Returns false if a stage left the positive orthant or went non-finite.
  bool attempt(const State& y, double h) {
    const std::size_t n = y.size();
    auto stage = [&](State& out, std::initializer_list<std::pair<int, double>> terms) {
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (const auto& [idx, coef] : terms) acc += coef * k_[idx][i];
        ytmp_[i] = y[i] + h * acc;
      }
      for (double v : ytmp_)
        if (!(std::isfinite(v) && v > 0.0)) return false;
      system_.rhs(ytmp_, out);
      return true;
    };
    if (!stage(k_[1], {{0, a21}})) return false;
    if (!stage(k_[2], {{0, a31}, {1, a32}})) return false;
    if (!stage(k_[3], {{0, a41}, {1, a42}, {2, a43}})) return false;
    if (!stage(k_[4], {{0, a51}, {1, a52}, {2, a53}, {3, a54}})) return false;
    if (!stage(k_[5], {{0, a61}, {1, a62}, {2, a63}, {3, a64}, {4, a65}})) return false;
    for (std::size_t i = 0; i < n; ++i) {
      ynew_[i] = y[i] + h * (a71 * k_[0][i] + a73 * k_[2][i] + a74 * k_[3][i] +
                             a75 * k_[4][i] + a76 * k_[5][i]);
      if (!(std::isfinite(ynew_[i]) && ynew_[i] > 0.0)) return false;
    }
    system_.rhs(ynew_, k_[6]);
    for (std::size_t i = 0; i < n; ++i) {
      err_[i] = h * (e1 * k_[0][i] + e3 * k_[2][i] + e4 * k_[3][i] + e5 * k_[4][i] +
                     e6 * k_[5][i] + e7 * k_[6][i]);
    }
    return true;
  }

  double error_norm(const State& y, double rel_tol, double abs_tol) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double scale = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(ynew_[i]));
      const double r = err_[i] / scale;
      acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(y.size()));
  }

  DenseStep dense(const State& y, double t0, double h) const {
    const std::size_t n = y.size();
    DenseStep d;
    d.t0 = t0;
    d.h = h;
    for (auto& r : d.r) r.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double ydiff = ynew_[i] - y[i];
      const double bspl = h * k_[0][i] - ydiff;
      d.r[0][i] = y[i];
      d.r[1][i] = ydiff;
      d.r[2][i] = bspl;
      d.r[3][i] = ydiff - h * k_[6][i] - bspl;
      d.r[4][i] = h * (d1 * k_[0][i] + d3 * k_[2][i] + d4 * k_[3][i] + d5 * k_[4][i] +
                       d6 * k_[5][i] + d7 * k_[6][i]);
    }
    return d;
  }

  State& k0() { return k_[0]; }
  const State& ynew() const { return ynew_; }
  void accept() { std::swap(k_[0], k_[6]); }

 private:
  const FlowSystem& system_;
  std::array<State, 7> k_;
  State ytmp_;
  State ynew_;
  State err_;
};

double rms(const State& v, const State& y, double rel_tol, double abs_tol) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = v[i] / (abs_tol + rel_tol * std::abs(y[i]));
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(v.size()));
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

Trajectory integrate(const FlowSystem& system, const State& init,
                     const IntegratorConfig& config,
                     const std::vector<EventFunction>& events) {
  config.validate();
  system.check_state(init);

  const double dir = config.direction == Direction::Forward ? 1.0 : -1.0;
  const double t_end = dir * config.max_time;
  const std::size_t n = init.size();

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(init);

  double t = 0.0;
  State y = init;
  DormandPrince rk(system, n);
  system.rhs(y, rk.k0());

  // Last nonzero sign of every event function; 0 until one is seen.
  std::vector<int> last_sign(events.size(), 0);
  std::vector<bool> fired(events.size(), false);
  for (std::size_t e = 0; e < events.size(); ++e) last_sign[e] = sign_of(events[e].fn(t, y));
  std::size_t terminal_total = 0;
  for (const auto& ev : events) terminal_total += ev.terminal ? 1 : 0;
  std::size_t terminal_found = 0;

  double init_scale = 0.0;
  for (double v : init) init_scale = std::max(init_scale, std::abs(v));

  // Initial step from the scale of y and y'.
  double h = 0.0;
  {
    const double d0 = rms(y, y, config.rel_tol, config.abs_tol);
    const double d1n = rms(rk.k0(), y, config.rel_tol, config.abs_tol);
    h = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h = std::min({h, config.max_step, config.max_time});
  }

  constexpr double kSafety = 0.9;
  constexpr double kMinFactor = 0.2;
  constexpr double kMaxFactor = 5.0;
  long steps = 0;

  while (dir * (t_end - t) > 0.0) {
    if (++steps > config.max_steps) {
      throw IntegrationFailure(ErrorCode::StepSizeUnderflow,
                               "integrate: step budget exhausted", traj);
    }
    h = std::min(h, config.max_step);
    const bool last = h >= dir * (t_end - t);
    const double h_signed = last ? (t_end - t) : dir * h;

    const double h_floor = 16.0 * std::numeric_limits<double>::epsilon() *
                           std::max(std::abs(t), 1e-3);
    if (std::abs(h_signed) < h_floor) {
      double min_component = std::numeric_limits<double>::infinity();
      for (double v : y) min_component = std::min(min_component, v);
      if (min_component < 1e-6 * init_scale) {
        traj.stop = StopReason::Singularity;
        return traj;
      }
      std::ostringstream msg;
      msg << "integrate: step size underflow at ell=" << t;
      throw IntegrationFailure(ErrorCode::StepSizeUnderflow, msg.str(), traj);
    }

    if (!rk.attempt(y, h_signed)) {
      h = std::abs(h_signed) * 0.25;
      continue;
    }
    const double err = rk.error_norm(y, config.rel_tol, config.abs_tol);
    if (!(err <= 1.0)) {
      const double fac = std::isfinite(err) ? std::max(kMinFactor, kSafety * std::pow(err, -0.2))
                                            : kMinFactor;
      h = std::abs(h_signed) * std::min(1.0, fac);
      continue;
    }

    const double t_new = last ? t_end : t + h_signed;
    const DenseStep dense = rk.dense(y, t, h_signed);
    const State& y_new = rk.ynew();

    // Event detection on the accepted step.
    bool stop_here = false;
    double stop_time = t_new;
    State stop_state;
    for (std::size_t e = 0; e < events.size(); ++e) {
      if (fired[e] && events[e].terminal) continue;
      const double g_new = events[e].fn(t_new, y_new);
      const int s_new = sign_of(g_new);
      const int s_old = last_sign[e];
      const bool crossed = s_old != 0 && s_new != s_old;
      if (s_new != 0) last_sign[e] = s_new;
      if (!crossed) continue;

      // Bisection keeps lo on the old side and hi on the crossed side.
      double lo = t, hi = t_new;
      while (std::abs(hi - lo) > kEventTimeTolerance) {
        const double mid = 0.5 * (lo + hi);
        const State ym = dense.at(mid);
        if (sign_of(events[e].fn(mid, ym)) == s_old) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      State y_event = hi == t_new ? y_new : dense.at(hi);
      traj.events.push_back({hi, events[e].name, y_event});
      if (events[e].terminal) {
        fired[e] = true;
        ++terminal_found;
        if (terminal_found == terminal_total && (!stop_here || dir * (hi - stop_time) < 0.0)) {
          stop_here = true;
          stop_time = hi;
          stop_state = y_event;
        }
      }
    }

    if (stop_here) {
      // Record the step truncated at the event.
      traj.times.push_back(stop_time);
      traj.states.push_back(stop_state);
      traj.stop = StopReason::Event;
      std::stable_sort(traj.events.begin(), traj.events.end(),
                       [dir](const EventRecord& a, const EventRecord& b) {
                         return dir * a.time < dir * b.time;
                       });
      // Drop non-terminal events recorded past the stopping point.
      std::erase_if(traj.events, [&](const EventRecord& ev) {
        return dir * (ev.time - stop_time) > 0.0;
      });
      return traj;
    }

    t = t_new;
    y = y_new;
    rk.accept();
    traj.times.push_back(t);
    traj.states.push_back(y);

    for (double v : y) {
      if (v < config.abs_tol) {
        traj.times.pop_back();
        traj.states.pop_back();
        traj.stop = StopReason::Singularity;
        return traj;
      }
    }

    const double fac = err == 0.0 ? kMaxFactor
                                  : std::min(kMaxFactor, kSafety * std::pow(err, -0.2));
    h = std::abs(h_signed) * fac;
  }
  traj.stop = StopReason::Horizon;
  return traj;
}

std::string_view to_string(ConeFamily f) {
  switch (f) {
    case ConeFamily::AW2: return "aw2";
    case ConeFamily::AW3: return "aw3";
    case ConeFamily::AW4: return "aw4";
    case ConeFamily::Berger: return "berger";
  }
  return "unknown";
}

FlowSystem cone_system(ConeFamily family, XiParam xi) {
  switch (family) {
    case ConeFamily::AW2: return FlowSystem::aw2(xi);
    case ConeFamily::AW3: return FlowSystem::aw3(xi);
    case ConeFamily::AW4: return FlowSystem::aw4(xi);
    case ConeFamily::Berger: return FlowSystem::berger();
  }
  throw Error(ErrorCode::InvalidArgument, "unknown cone family");
}

EventFunction cone_event(ConeFamily family, XiParam xi) {
  switch (family) {
    case ConeFamily::AW2:
      return {"cone_exit", [](double, std::span<const double> y) { return y[1] - y[0]; }, true};
    case ConeFamily::AW3:
      return {"cone_exit",
              [](double, std::span<const double> y) {
                const double xr = y[1] / y[2];
                // Past x = 4s the closed form is undefined; sigma <= 0 there.
                if (xr >= 4.0) return -y[0] / y[2];
                return t_a_closed(xr, 1.0) - y[0] / y[2];
              },
              true};
    case ConeFamily::AW4:
      return {"cone_exit",
              [xi](double, std::span<const double> y) {
                const STriple s{y[1], y[2], y[3]};
                if (!(sigma(s) > 0.0)) return -y[0];
                return t_a(s, xi) - y[0];
              },
              true};
    case ConeFamily::Berger:
      return {"cone_exit", [](double, std::span<const double> y) { return 2.0 * y[1] - y[0]; },
              true};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown cone family");
}

ConeVerdict classify_state(ConeFamily family, std::span<const double> y, XiParam xi) {
  switch (family) {
    case ConeFamily::AW2: return classify_2param(y[0], y[1]);
    case ConeFamily::AW3: return classify_3param(y[0], y[1], y[2]);
    case ConeFamily::AW4: return classify_aw({y[0], y[1], y[2], y[3]}, xi);
    case ConeFamily::Berger: return classify_berger({y[0], y[1]});
  }
  throw Error(ErrorCode::InvalidArgument, "unknown cone family");
}

ConeExit cone_exit(ConeFamily family, const State& init, const IntegratorConfig& config,
                   XiParam xi) {
  const FlowSystem system = cone_system(family, xi);
  system.check_state(init);
  const ConeVerdict start = classify_state(family, init, xi);
  if (start.cls != CurvatureClass::PositivelyCurved) {
    throw Error(ErrorCode::InvalidArgument,
                "cone_exit: initial metric is not classified PositivelyCurved");
  }

  IntegratorConfig forward = config;
  forward.direction = Direction::Forward;
  std::vector<EventFunction> events{cone_event(family, xi)};
  if (family == ConeFamily::AW3) {
    // The boundary test is certified only while x/s stays in (0, 1).
    events.push_back({"unknown_region",
                      [](double, std::span<const double> y) { return 1.0 - y[1] / y[2]; },
                      false});
  }
  Trajectory traj = integrate(system, init, forward, events);
  const EventRecord* hit = traj.find_event("cone_exit");
  if (hit == nullptr) {
    std::ostringstream msg;
    msg << "cone_exit: no boundary crossing before ell=" << traj.final_time() << " ("
        << to_string(traj.stop) << ")";
    throw IntegrationFailure(ErrorCode::NoExitWithinHorizon, msg.str(), std::move(traj));
  }
  ConeExit out{hit->time, hit->state, classify_state(family, hit->state, xi), {}};
  out.trajectory = std::move(traj);
  return out;
}

}  // namespace awflow
