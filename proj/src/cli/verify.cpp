#include "awflow/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "awflow/cone.hpp"
#include "awflow/derivatives.hpp"
#include "awflow/flow.hpp"
#include "awflow/geometry.hpp"
#include "awflow/numdiff.hpp"

namespace awflow::cli {

namespace {

using Results = std::vector<CheckResult>;

CheckResult near(std::string name, int criterion, double measured, double expected, double tol,
                 std::string detail = {}) {
  const bool ok = std::isfinite(measured) && std::fabs(measured - expected) <= tol;
  return {std::move(name), criterion, ok, measured, tol, std::move(detail), expected};
}

CheckResult within(std::string name, int criterion, double measured, double tol,
                   std::string detail = {}) {
  const bool ok = std::isfinite(measured) && measured <= tol;
  return {std::move(name), criterion, ok, measured, tol, std::move(detail)};
}

// Grid k*step for k in [lo, hi], with lo and hi given as integer multiples.
template <class F>
void for_grid(int lo, int hi, double step, F&& f) {
  for (int k = lo; k <= hi; ++k) f(k * step);
}

std::string join(const std::vector<double>& values) {
  std::ostringstream out;
  out.precision(12);
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? ", " : "") << values[i];
  return out.str();
}

double rel_err(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

Results criterion1() {
  const double d = two_param_ratio_derivative(1.0, 1.0);
  return {near("two_param_derivative_at_round", 1, d, 3.0, 1e-12, "d/dl(t/s) at (t, s) = (1, 1)")};
}

Results criterion2() {
  const double d = berger_ratio_derivative(2.0, 1.0);
  const BergerRicci r = ricci_eigenvalues_berger({2.0, 1.0});
  const double err = std::max(std::fabs(r.r1 - 6.0), std::fabs(r.r2 - 7.5));
  return {near("berger_derivative_at_round", 2, d, 3.0, 1e-12, "d/dl(x1/2x2) at (2, 1)"),
          within("berger_eigenvalues", 2, err, 1e-12, "(r1, r2) = " + join({r.r1, r.r2}))};
}

Results criterion3() {
  const auto roots = d_roots();
  const auto outside = [](double v, double lo, double hi) {
    return std::max({0.0, lo - v, v - hi});
  };
  const double bracket = std::max({outside(roots[0], -7.485, -7.475),
                                   outside(roots[3], 0.785, 0.795),
                                   outside(roots[4], 2.685, 2.695)});
  const double exact = std::max(std::fabs(roots[1] + 2.0), std::fabs(roots[2]));
  double worst_d = -std::numeric_limits<double>::infinity();
  const int lo = static_cast<int>(std::ceil((roots[3] + 1e-3) * 1000.0 + 1e-9));
  const int hi = static_cast<int>(std::floor((roots[4] - 1e-3) * 1000.0 - 1e-9));
  for_grid(lo, hi, 1e-3, [&](double x) { worst_d = std::max(worst_d, d_polynomial(x)); });
  CheckResult negative{"d_negative_interval", 3, worst_d < 0.0, worst_d, 0.0,
                       "max D on the grid over (l4 + 1e-3, l5 - 1e-3)"};
  return {within("d_roots", 3, bracket, 0.0,
                 "roots = " + join({roots.begin(), roots.end()}) +
                     "; measured is the distance outside [-7.485,-7.475], [0.785,0.795], "
                     "[2.685,2.695]"),
          within("d_exact_roots", 3, exact, 1e-12), negative};
}

Results criterion4() {
  double worst = 0.0;
  double worst_inv = 0.0;
  const auto visit = [&](double x) {
    const double ta = t_a(STriple{x, 1.0, 1.0}, XiParam(1.0));
    worst = std::max(worst, std::fabs(ta - x * (4.0 - x) / 3.0) / ta);
    const Mat3 prod = a_tilde(STriple{x, 1.0, 1.0}) * a_tilde_inverse_slice(x, 1.0);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        worst_inv = std::max(worst_inv, std::fabs(prod[i][j] - (i == j ? 1.0 : 0.0)));
      }
    }
  };
  for_grid(1, 99, 1e-2, visit);
  for_grid(101, 399, 1e-2, visit);
  return {within("t_a_closed_form", 4, worst, 1e-12, "max relative |t_A - x(4-x)/3| / t_A"),
          within("a_tilde_inverse_slice", 4, worst_inv, 1e-10, "max entry of |A~ A~^-1 - I|")};
}

Results criterion5() {
  double worst_grad = 0.0;
  double worst_assembly = 0.0;
  for (double x : {0.85, 0.9, 0.95}) {
    for (double xi_v : {0.4, 0.7, 1.0}) {
      const XiParam xi(xi_v);
      const AWMetric p = reference_metric(x);
      const auto f = [&](const std::array<double, 4>& g) {
        return t_a(STriple{g[1], g[2], g[3]}, xi) / g[0];
      };
      const auto fd = central_gradient(f, std::array<double, 4>{p.t, p.s0, p.s1, p.s2});
      const auto closed = grad_F(x, xi).as_array();
      for (int i = 0; i < 4; ++i) worst_grad = std::max(worst_grad, rel_err(closed[i], fd[i]));

      const auto vel = initial_velocity(x, xi);
      double pairing = 0.0;
      for (int i = 0; i < 4; ++i) pairing += closed[i] * vel[i];
      worst_assembly = std::max(worst_assembly, rel_err(pairing, f_xi_prime0(xi_v, x)));
    }
  }
  return {within("grad_F_finite_difference", 5, worst_grad, 1e-6,
                 "max relative error over {0.85,0.9,0.95} x {0.4,0.7,1}"),
          within("gradient_assembly", 5, worst_assembly, 1e-9,
                 "<grad F, g'(0)> against f'_xi(0)")};
}

Results criterion6() {
  double worst = 0.0;
  for_grid(1, 9, 0.1, [&](double xi) {
    const double limit = 432.0 * (xi * xi - 1.0) * (xi * xi - 1.0);
    worst = std::max(worst, std::fabs(k_polynomial(xi, 1.0) + limit) / (1.0 + limit));
  });
  double min_den = std::numeric_limits<double>::infinity();
  for_grid(1, 99, 1e-2, [&](double x) {
    for_grid(1, 100, 1e-2, [&](double xi) { min_den = std::min(min_den, k_denominator(xi, x)); });
  });
  return {within("k_limit_x1", 6, worst, 1e-9, "xi in {0.1, ..., 0.9}"),
          CheckResult{"k_denominator_positive", 6, min_den > 0.0, min_den, 0.0,
                      "min of the f'_xi(0) denominator on (0,1) x (0,1]"}};
}

Results criterion7() {
  double worst = -std::numeric_limits<double>::infinity();
  for_grid(801, 999, 1e-3, [&](double x) { worst = std::max(worst, f1_prime0(x)); });
  double worst_min = -std::numeric_limits<double>::infinity();
  for_grid(1, 9, 0.1, [&](double xi) {
    double best = std::numeric_limits<double>::infinity();
    for_grid(900, 999, 1e-3, [&](double x) { best = std::min(best, f_xi_prime0(xi, x)); });
    worst_min = std::max(worst_min, best);
  });
  return {CheckResult{"f1_prime0_negative", 7, worst < 0.0, worst, 0.0,
                      "max f1'(0) over [0.801, 0.999]"},
          CheckResult{"f_xi_prime0_negative_near_1", 7, worst_min < 0.0, worst_min, 0.0,
                      "max over xi of min_x f'_xi(0), x in [0.9, 0.999]"}};
}

Results criterion8() {
  const XiParam xi(1.0);
  const AWMetric p = BoundaryPoint(0.9, xi).metric();
  const double fd = flow_derivative(
      FlowSystem::aw4(xi), {p.t, p.s0, p.s1, p.s2},
      [&](const State& g) { return t_a(STriple{g[1], g[2], g[3]}, xi) / g[0]; });
  const double exact = f1_prime0(0.9);
  return {within("flow_oracle_sign", 8, rel_err(fd, exact), 1e-4,
                 "finite difference " + join({fd}) + " vs f1'(0) " + join({exact}))};
}

CheckResult exit_check(std::string name, ConeFamily family, const State& init, double xi) {
  IntegratorConfig config;
  config.max_time = 2.0;
  try {
    const ConeExit e = cone_exit(family, init, config, XiParam(xi));
    const bool ok = e.time > 0.0 && std::isfinite(e.time) &&
                    e.verdict.cls == CurvatureClass::HasNonpositivePlane;
    return {std::move(name), 9, ok, e.time, 0.0,
            "exit time; post-exit verdict " + std::string(to_string(e.verdict.cls))};
  } catch (const std::exception& ex) {
    return {std::move(name), 9, false, std::numeric_limits<double>::quiet_NaN(), 0.0, ex.what()};
  }
}

Results criterion9() {
  const double ta = t_a_closed(0.9, 1.0);
  const auto aw4_init = [](double xi) {
    return State{t_a(STriple{0.9, 1.0, 1.0}, XiParam(xi)) - 1e-3, 0.9, 1.0, 1.0};
  };
  return {exit_check("cone_exit_aw2", ConeFamily::AW2, {0.99, 1.0}, 1.0),
          exit_check("cone_exit_aw3", ConeFamily::AW3, {ta - 1e-3, 0.9, 1.0}, 1.0),
          exit_check("cone_exit_aw4_xi_0.9", ConeFamily::AW4, aw4_init(0.9), 0.9),
          exit_check("cone_exit_aw4_xi_0.95", ConeFamily::AW4, aw4_init(0.95), 0.95),
          exit_check("cone_exit_berger", ConeFamily::Berger, {1.99, 1.0}, 1.0)};
}

Results criterion10() {
  IntegratorConfig config;
  config.max_time = 0.5;
  const FlowSystem sys = FlowSystem::aw4(XiParam(1.0));
  double worst = 0.0;
  bool reached = true;
  for (const State& init : {State{6.0, 8.0, 12.0, 12.0}, State{10.0, 10.0, 13.0, 13.0}}) {
    const Trajectory tr = integrate(sys, init, config);
    reached = reached && tr.stop == StopReason::Horizon;
    const bool both = init[0] == init[1];
    for (const auto& g : tr.states) {
      worst = std::max(worst, std::fabs(g[2] - g[3]) / g[2]);
      if (both) worst = std::max(worst, std::fabs(g[0] - g[1]) / g[1]);
    }
  }
  CheckResult r = within("subfamily_invariance", 10, worst, 1e-9,
                         "max relative |s1 - s2| and |t - s0| over l in [0, 0.5]");
  r.passed = r.passed && reached;
  return {r};
}

Results criterion11() {
  const EinsteinPoints e = einstein_points();
  const auto a = normalized_rhs(e.plus[0], e.plus[1]);
  const auto b = normalized_rhs(e.minus[0], e.minus[1]);
  const double rhs = std::max({std::hypot(a[0], a[1]), std::hypot(b[0], b[1])});

  IntegratorConfig config;
  config.max_time = 3.0;
  const FlowSystem sys = FlowSystem::normalized();
  const auto seeds = std::array<State, 2>{State{std::pow(10.0 / 11.0, 4.0 / 3.0), 1.1},
                                          State{0.87, 1.1}};
  const Trajectory p1 = integrate(sys, seeds[0], config);
  double curve = 0.0;
  for (const auto& q : p1.states) {
    curve = std::max(curve, std::fabs(q[0] * q[0] * q[0] * std::pow(q[1], 4) - 1.0));
  }
  const auto& end = p1.final_state();
  const double dist = std::hypot(end[0] - e.minus[0], end[1] - e.minus[1]);

  const EventFunction enter_p{"enter_P",
                              [](double, std::span<const double> q) {
                                const double x = q[0], s = q[1];
                                return 3.0 - (4.0 * x * x * x * std::pow(s, 4) -
                                              std::pow(x, 4) * s * s * s);
                              }};
  const Trajectory p2 = integrate(sys, seeds[1], config, {enter_p});
  const EventRecord* hit = p2.find_event("enter_P");
  return {within("einstein_equilibria", 11, rhs, 1e-9, "|normalized flow| at E+ and E-"),
          within("p1_stays_on_curve", 11, curve, 1e-6, "max |x^3 s^4 - 1| over l in [0, 3]"),
          within("p1_converges_to_e_minus", 11, dist, 1e-3, "distance to E- at l = 3"),
          CheckResult{"p2_enters_region_p", 11, hit != nullptr,
                      hit ? hit->time : std::numeric_limits<double>::quiet_NaN(), 0.0,
                      "first time with 4x^3 s^4 - x^4 s^3 <= 3"}};
}

Results criterion12() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> log_scale(std::log(0.05), std::log(20.0));
  double worst = 0.0;
  for (const auto& [k1, k2] : {std::pair<int, int>{1, 1}, {1, 2}, {2, 3}, {1, 10}}) {
    const XiParam xi = XiParam::from_pair(k1, k2);
    for (int n = 0; n < 100; ++n) {
      const AWMetric m{std::exp(log_scale(rng)), std::exp(log_scale(rng)),
                       std::exp(log_scale(rng)), std::exp(log_scale(rng))};
      const auto closed = ricci_eigenvalues_aw(m, xi).as_array();
      const auto general = ricci_from_structure(k1, k2, m).as_array();
      for (int i = 0; i < 4; ++i) {
        worst = std::max(worst, std::fabs(closed[i] - general[i]) /
                                    std::max(std::fabs(closed[i]), 1e-300));
      }
    }
  }
  return {within("ricci_structure_oracle", 12, worst, 1e-12,
                 "max relative error, 100 metrics for each of (1,1), (1,2), (2,3), (1,10)")};
}

}  // namespace

std::vector<CheckResult> run_criterion(int criterion) {
  switch (criterion) {
    case 1: return criterion1();
    case 2: return criterion2();
    case 3: return criterion3();
    case 4: return criterion4();
    case 5: return criterion5();
    case 6: return criterion6();
    case 7: return criterion7();
    case 8: return criterion8();
    case 9: return criterion9();
    case 10: return criterion10();
    case 11: return criterion11();
    case 12: return criterion12();
    default: return {};
  }
}

std::vector<CheckResult> run_checks() {
  Results all;
  for (int c = 1; c <= kCriterionCount; ++c) {
    Results part;
    try {
      part = run_criterion(c);
    } catch (const std::exception& ex) {
      part = {{"criterion_" + std::to_string(c), c, false,
               std::numeric_limits<double>::quiet_NaN(), 0.0, ex.what()}};
    }
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

nlohmann::json report_json(const std::vector<CheckResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json measured = std::isfinite(r.measured) ? nlohmann::json(r.measured) : nullptr;
    arr.push_back({{"check", r.check},
                   {"criterion", r.criterion},
                   {"status", r.passed ? "pass" : "fail"},
                   {"measured", measured},
                   {"tolerance", r.tolerance},
                   {"detail", r.detail}});
    if (r.expected) arr.back()["expected"] = *r.expected;
  }
  return arr;
}

}  // namespace awflow::cli
