#include <gtest/gtest.h>

#include <cmath>

#include "awflow/derivatives.hpp"
#include "awflow/flow.hpp"
#include "awflow/numdiff.hpp"

using namespace awflow;

namespace {

IntegratorConfig window(double horizon) {
  IntegratorConfig c;
  c.max_time = horizon;
  return c;
}

}  // namespace

TEST(AwRhs, RoundMetric) {
  const auto r = aw_rhs({1, 1, 1, 1}, XiParam(1.0));
  EXPECT_NEAR(r[0], -6, 1e-14);
  EXPECT_NEAR(r[1], -6, 1e-14);
  EXPECT_NEAR(r[2], -9, 1e-14);
  EXPECT_NEAR(r[3], -9, 1e-14);
}

TEST(AwRhs, SliceSymmetry) {
  const AWMetric m{0.8, 0.6, 1.3, 1.3};
  const auto r = aw_rhs(m, XiParam(1.0));
  EXPECT_DOUBLE_EQ(r[2] / m.s1, r[3] / m.s2);
}

TEST(AwRhs, MatchesDisplayedVelocities) {
  for (double x : {0.81, 0.9, 0.99}) {
    for (double xi : {1.0, 0.5}) {
      const auto r = aw_rhs(reference_metric(x), XiParam(xi));
      const auto v = initial_velocity(x, XiParam(xi));
      for (int i = 0; i < 4; ++i) EXPECT_NEAR(r[i], v[i], 1e-12 * (1 + std::fabs(v[i])));
    }
  }
}

TEST(BergerRhs, Examples) {
  const auto a = berger_rhs({2, 1});
  EXPECT_DOUBLE_EQ(a[0], -24.0);
  EXPECT_DOUBLE_EQ(a[1], -15.0);
  const auto b = berger_rhs({1, 1});
  EXPECT_DOUBLE_EQ(b[0], -18.0);
  EXPECT_DOUBLE_EQ(b[1], -17.5);
  const auto c = berger_rhs({6, 3});
  EXPECT_NEAR(c[0], a[0], 1e-13);
  EXPECT_NEAR(c[1], a[1], 1e-13);
}

TEST(NormalizedRhs, EinsteinPointsAreEquilibria) {
  const EinsteinPoints e = einstein_points();
  for (const auto& p : {e.plus, e.minus}) {
    const auto r = normalized_rhs(p[0], p[1]);
    EXPECT_LE(std::hypot(r[0], r[1]), 1e-9);
  }
}

TEST(NormalizedRhs, TangentToRescaledUnnormalizedFlow) {
  // Unit-volume representative of (t, x, s, s) on the curve t x^2 s^4 = 1 is
  // (x, s) / (t x^2 s^4)^{1/7}; its velocity must be parallel to normalized_rhs.
  const FlowSystem sys = FlowSystem::aw3();
  for (auto [x, s] : {std::pair{0.8, 1.1}, std::pair{0.6, 1.2}, std::pair{1.5, 0.9}}) {
    const double t = 1.0 / (x * x * s * s * s * s);
    const auto rescale = [](const State& g) {
      const double vol = std::pow(g[0] * g[1] * g[1] * std::pow(g[2], 4), 1.0 / 7.0);
      return std::array<double, 2>{g[1] / vol, g[2] / vol};
    };
    IntegratorConfig c = window(1e-5);
    c.rel_tol = 1e-13;
    c.abs_tol = 1e-15;
    const State g0{t, x, s};
    const auto ahead = rescale(integrate(sys, g0, c).final_state());
    c.direction = Direction::Backward;
    const auto behind = rescale(integrate(sys, g0, c).final_state());
    const double dx = ahead[0] - behind[0], ds = ahead[1] - behind[1];
    const auto r = normalized_rhs(x, s);
    const double cosine = (dx * r[0] + ds * r[1]) / (std::hypot(dx, ds) * std::hypot(r[0], r[1]));
    EXPECT_GE(cosine, 1 - 1e-6);
  }
}

TEST(FlowSystem, ReducedSystemsNeedXiOne) {
  EXPECT_THROW(FlowSystem::aw3(XiParam(0.5)), Error);
  EXPECT_THROW(FlowSystem::aw2(XiParam(0.5)), Error);
  EXPECT_EQ(FlowSystem::aw4(XiParam(0.5)).dimension(), 4);
  EXPECT_EQ(FlowSystem::aw3().dimension(), 3);
  EXPECT_EQ(FlowSystem::berger().name(), "berger");
}

TEST(FlowSystem, ReducedSystemsMatchFullSystem) {
  const FlowSystem full = FlowSystem::aw4(XiParam(1.0));
  const State r3 = FlowSystem::aw3().rhs(State{0.7, 0.6, 1.2});
  const State r4 = full.rhs(State{0.7, 0.6, 1.2, 1.2});
  EXPECT_DOUBLE_EQ(r3[0], r4[0]);
  EXPECT_DOUBLE_EQ(r3[1], r4[1]);
  EXPECT_DOUBLE_EQ(r3[2], r4[2]);
  const State r2 = FlowSystem::aw2().rhs(State{0.7, 1.2});
  const State r4b = full.rhs(State{0.7, 0.7, 1.2, 1.2});
  EXPECT_DOUBLE_EQ(r2[0], r4b[0]);
  EXPECT_DOUBLE_EQ(r2[1], r4b[2]);
}

TEST(FlowSystem, CheckStateErrors) {
  const FlowSystem sys = FlowSystem::aw4(XiParam(1.0));
  try {
    sys.check_state(State{1, 1, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveState);
  }
  EXPECT_THROW(sys.check_state(State{1, 1, 1}), Error);
  EXPECT_THROW(integrate(sys, State{1, -1, 1, 1}, window(0.1)), Error);
}

TEST(IntegratorConfig, RejectsBadSettings) {
  IntegratorConfig c;
  c.rel_tol = 0;
  EXPECT_THROW(c.validate(), Error);
  c = IntegratorConfig{};
  c.max_time = -1;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Integrate, HomotheticBergerSolution) {
  // r1 = r2 when 9u^2 - 40u + 32 = 0; from (u, 1) the flow is then a pure
  // rescaling with x2(l) = 1 - 2 r l, since r is degree -1.
  const double u = (40.0 - std::sqrt(448.0)) / 18.0;
  const BergerRicci r = ricci_eigenvalues_berger({u, 1.0});
  ASSERT_NEAR(r.r1, r.r2, 1e-12);
  const Trajectory tr = integrate(FlowSystem::berger(), State{u, 1.0}, window(0.05));
  const double l = tr.final_time();
  EXPECT_NEAR(tr.final_state()[1], 1 - 2 * r.r2 * l, 1e-10);
  EXPECT_NEAR(tr.final_state()[0], u * (1 - 2 * r.r2 * l), 1e-10);
}

TEST(Integrate, TimesMonotoneAndStatesPositive) {
  const Trajectory tr = integrate(FlowSystem::aw4(XiParam(0.5)), State{1, 0.8, 1.1, 1.3}, window(0.05));
  ASSERT_GE(tr.size(), 2u);
  for (std::size_t i = 1; i < tr.size(); ++i) EXPECT_GT(tr.times[i], tr.times[i - 1]);
  for (const auto& g : tr.states) {
    for (double c : g) EXPECT_GT(c, 0.0);
  }
  EXPECT_EQ(tr.stop, StopReason::Horizon);
  EXPECT_NEAR(tr.final_time(), 0.05, 1e-15);
}

TEST(Integrate, BackwardTimesDecrease) {
  IntegratorConfig c = window(0.1);
  c.direction = Direction::Backward;
  const Trajectory tr = integrate(FlowSystem::berger(), State{2, 1}, c);
  for (std::size_t i = 1; i < tr.size(); ++i) EXPECT_LT(tr.times[i], tr.times[i - 1]);
  EXPECT_NEAR(tr.final_time(), -0.1, 1e-15);
}

TEST(Integrate, ForwardThenBackwardReturns) {
  const FlowSystem sys = FlowSystem::aw4(XiParam(0.7));
  const State g0{0.9, 0.8, 1.0, 1.2};
  const State g1 = integrate(sys, g0, window(0.02)).final_state();
  IntegratorConfig back = window(0.02);
  back.direction = Direction::Backward;
  const State g2 = integrate(sys, g1, back).final_state();
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(g2[i], g0[i], 1e-8 * g0[i]);
}

TEST(Integrate, StopsAtSingularity) {
  // From (1, 1) the two-parameter flow collapses at finite time.
  const Trajectory tr = integrate(FlowSystem::aw2(), State{1, 1}, window(0.5));
  EXPECT_EQ(tr.stop, StopReason::Singularity);
  EXPECT_LT(tr.final_time(), 0.5);
  EXPECT_GT(tr.final_time(), 0.05);
}

TEST(Integrate, TwoParameterRatioGrows) {
  const Trajectory tr = integrate(FlowSystem::aw2(), State{1, 1}, window(0.1));
  for (std::size_t i = 1; i < tr.size(); ++i) {
    EXPECT_GT(tr.states[i][0], tr.states[i][1]);
  }
  const double d = flow_derivative(FlowSystem::aw2(), State{1, 1},
                                   [](const State& g) { return g[0] / g[1]; });
  EXPECT_NEAR(d, 3.0, 1e-6);
}

TEST(Events, LocatedToTolerance) {
  // Berger from (1.999, 1): event 2 x2 - x1.
  const EventFunction ev = cone_event(ConeFamily::Berger, XiParam(1.0));
  const Trajectory tr = integrate(FlowSystem::berger(), State{1.999, 1}, window(1.0), {ev});
  const EventRecord* hit = tr.find_event("cone_exit");
  ASSERT_NE(hit, nullptr);
  EXPECT_GT(hit->time, 0.0);
  EXPECT_EQ(tr.stop, StopReason::Event);
  // the crossing lies within the bisection width of the recorded time
  IntegratorConfig before = window(hit->time - 2e-10);
  before.rel_tol = 1e-12;
  const State g = integrate(FlowSystem::berger(), State{1.999, 1}, before).final_state();
  EXPECT_GT(2 * g[1] - g[0], 0.0);
  EXPECT_LE(2 * hit->state[1] - hit->state[0], 0.0);
  EXPECT_DOUBLE_EQ(tr.final_time(), hit->time);
}

TEST(Events, NonTerminalRecordsAndContinues) {
  EventFunction ev{"half", [](double ell, std::span<const double>) { return 0.01 - ell; }, false};
  const Trajectory tr = integrate(FlowSystem::berger(), State{1, 1}, window(0.02), {ev});
  ASSERT_NE(tr.find_event("half"), nullptr);
  EXPECT_NEAR(tr.find_event("half")->time, 0.01, 1e-10);
  EXPECT_EQ(tr.stop, StopReason::Horizon);
}

TEST(ConeExit, TwoParameter) {
  const ConeExit e = cone_exit(ConeFamily::AW2, State{0.99, 1}, window(1.0));
  EXPECT_GT(e.time, 0.0);
  EXPECT_EQ(e.verdict.cls, CurvatureClass::HasNonpositivePlane);
}

TEST(ConeExit, ThreeParameter) {
  const double ta = t_a_closed(0.9, 1);
  for (double eps : {1e-3, 1e-4}) {
    const ConeExit e = cone_exit(ConeFamily::AW3, State{ta - eps, 0.9, 1}, window(1.0));
    EXPECT_GT(e.time, 0.0);
    EXPECT_EQ(e.verdict.cls, CurvatureClass::HasNonpositivePlane);
    EXPECT_EQ(classify_3param(e.state[0], e.state[1], e.state[2]).cls,
              CurvatureClass::HasNonpositivePlane);
  }
}

TEST(ConeExit, NearbySpaces) {
  for (double xi : {0.9, 0.95}) {
    const double ta = t_a({0.9, 1, 1}, XiParam(xi));
    const ConeExit e = cone_exit(ConeFamily::AW4, State{ta - 1e-3, 0.9, 1, 1}, window(1.0),
                                 XiParam(xi));
    EXPECT_GT(e.time, 0.0);
    EXPECT_EQ(e.verdict.cls, CurvatureClass::HasNonpositivePlane);
  }
}

TEST(ConeExit, Berger) {
  const ConeExit e = cone_exit(ConeFamily::Berger, State{1.99, 1}, window(1.0));
  EXPECT_GT(e.time, 0.0);
  EXPECT_EQ(e.verdict.cls, CurvatureClass::HasNonpositivePlane);
}

TEST(ConeExit, RejectsInitOutsideCone) {
  try {
    cone_exit(ConeFamily::Berger, State{2.5, 1}, window(1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(ConeExit, NoExitWithinHorizon) {
  try {
    cone_exit(ConeFamily::Berger, State{1.0, 1}, window(1e-3));
    FAIL();
  } catch (const IntegrationFailure& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoExitWithinHorizon);
    EXPECT_GT(e.partial().size(), 1u);
  }
}

TEST(ConeExit, BackwardStaysPositivelyCurved) {
  // From a point on the boundary the backward flow re-enters the cone.
  const double ta = t_a_closed(0.9, 1);
  IntegratorConfig c = window(1e-3);
  c.direction = Direction::Backward;
  const Trajectory tr = integrate(FlowSystem::aw3(), State{ta, 0.9, 1}, c);
  for (std::size_t i = 1; i < tr.size(); ++i) {
    const auto& g = tr.states[i];
    EXPECT_EQ(classify_3param(g[0], g[1], g[2]).cls, CurvatureClass::PositivelyCurved);
  }
}

TEST(Invariance, SliceAndTwoParameterPersist) {
  const FlowSystem sys = FlowSystem::aw4(XiParam(1.0));
  const Trajectory a = integrate(sys, State{6, 8, 12, 12}, window(0.5));
  for (const auto& g : a.states) EXPECT_LE(std::fabs(g[2] - g[3]), 1e-9 * std::max(g[2], g[3]));
  const Trajectory b = integrate(sys, State{10, 10, 13, 13}, window(0.5));
  for (const auto& g : b.states) {
    EXPECT_LE(std::fabs(g[0] - g[1]), 1e-9 * std::max(g[0], g[1]));
    EXPECT_LE(std::fabs(g[2] - g[3]), 1e-9 * std::max(g[2], g[3]));
  }
}
