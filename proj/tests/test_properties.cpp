// Randomized invariants. Every test draws from a fixed seed.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "awflow/cone.hpp"
#include "awflow/flow.hpp"
#include "awflow/geometry.hpp"

using namespace awflow;

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  AWMetric metric() {
    return {log_uniform(0.05, 20), log_uniform(0.05, 20), log_uniform(0.05, 20),
            log_uniform(0.05, 20)};
  }
  // A triple in D_sigma: sigma > 0 and off the round diagonal.
  STriple d_sigma_triple() {
    while (true) {
      const STriple s{log_uniform(0.2, 5), log_uniform(0.2, 5), log_uniform(0.2, 5)};
      if (sigma(s) > 0.05 * (s.s0 * s.s0 + s.s1 * s.s1 + s.s2 * s.s2) && !on_round_diagonal(s)) {
        const double mean = (s.s0 + s.s1 + s.s2) / 3;
        const double spread = std::max({std::fabs(s.s0 - mean), std::fabs(s.s1 - mean),
                                         std::fabs(s.s2 - mean)});
        if (spread > 0.05 * mean) return s;
      }
    }
  }

 private:
  std::mt19937_64 rng_;
};

constexpr int kSamples = 300;

}  // namespace

TEST(Property, RicciDegreeMinusOne) {
  Sampler g(11);
  for (int n = 0; n < kSamples; ++n) {
    const AWMetric m = g.metric();
    const XiParam xi(g.uniform(0.01, 1.0));
    const double lambda = g.log_uniform(0.1, 10);
    const auto a = ricci_eigenvalues_aw(m, xi).as_array();
    const auto b = ricci_eigenvalues_aw(m.scaled(lambda), xi).as_array();
    for (int i = 0; i < 4; ++i) {
      EXPECT_NEAR(b[i], a[i] / lambda, 1e-12 * std::fabs(a[i] / lambda) + 1e-300);
    }
  }
}

TEST(Property, RicciSliceSymmetries) {
  Sampler g(12);
  for (int n = 0; n < kSamples; ++n) {
    const AWMetric m = g.metric();
    const AWRicci r = ricci_eigenvalues_aw({m.t, m.s0, m.s1, m.s1}, XiParam(1.0));
    EXPECT_EQ(r.r2, r.r3);
    const AWRicci q = ricci_from_structure(1, 1, {m.t, m.s0, m.s1, m.s1});
    EXPECT_NEAR(q.r2, q.r3, 1e-14 * std::fabs(q.r2));
    const AWRicci u = ricci_eigenvalues_aw({m.t, m.t, m.s1, m.s1}, XiParam(1.0));
    EXPECT_NEAR(u.r0, u.r1, 1e-14 * std::fabs(u.r0));
  }
}

TEST(Property, TAScaleEquivariance) {
  Sampler g(13);
  for (int n = 0; n < kSamples; ++n) {
    const STriple s = g.d_sigma_triple();
    const XiParam xi(g.uniform(0.05, 1.0));
    const double base = t_a(s, xi);
    for (double lambda : {0.5, 2.0, 10.0}) {
      EXPECT_NEAR(t_a(s.scaled(lambda), xi), lambda * base, 1e-12 * std::fabs(lambda * base));
    }
  }
}

TEST(Property, TASliceAgreement) {
  Sampler g(14);
  for (int n = 0; n < kSamples; ++n) {
    const double s = g.log_uniform(0.2, 5);
    double x = s * g.uniform(0.01, 3.99);
    if (std::fabs(x - s) < 0.01 * s) x = 0.5 * s;
    const double closed = t_a_closed(x, s);
    EXPECT_NEAR(t_a({x, s, s}, XiParam(1.0)), closed, 1e-12 * closed) << x << " " << s;
  }
}

TEST(Property, SliceInverseIdentity) {
  Sampler g(15);
  for (int n = 0; n < kSamples; ++n) {
    const double s = g.log_uniform(0.5, 2);
    double u = g.uniform(0.01, 3.95);
    if (std::fabs(u - 1) < 0.05) u = 1.5;
    const double x = u * s;
    const Mat3 p = a_tilde({x, s, s}) * a_tilde_inverse_slice(x, s);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(p[i][j], i == j ? 1.0 : 0.0, 1e-10);
    }
  }
}

TEST(Property, ThreeParameterVerdictDependsOnRatios) {
  Sampler g(16);
  for (int n = 0; n < kSamples; ++n) {
    const double t = g.uniform(0.05, 2), x = g.uniform(0.05, 2), s = g.uniform(0.5, 2);
    const double lambda = g.log_uniform(0.01, 100);
    EXPECT_EQ(classify_3param(lambda * t, lambda * x, lambda * s).cls,
              classify_3param(t, x, s).cls);
  }
}

TEST(Property, TwoParameterInsideThreeParameter) {
  Sampler g(17);
  for (int n = 0; n < kSamples; ++n) {
    const double s = g.log_uniform(0.1, 10);
    const double t = s * g.uniform(0.01, 0.99);
    EXPECT_EQ(classify_2param(t, s).cls, CurvatureClass::PositivelyCurved);
    EXPECT_EQ(classify_3param(t, t, s).cls, CurvatureClass::PositivelyCurved);
  }
}

TEST(Property, BergerRhsDegreeZero) {
  Sampler g(18);
  for (int n = 0; n < kSamples; ++n) {
    const BergerMetric m{g.log_uniform(0.1, 10), g.log_uniform(0.1, 10)};
    const double lambda = g.log_uniform(0.1, 10);
    const auto a = berger_rhs(m);
    const auto b = berger_rhs({lambda * m.x1, lambda * m.x2});
    EXPECT_NEAR(a[0], b[0], 1e-12 * std::fabs(a[0]));
    EXPECT_NEAR(a[1], b[1], 1e-12 * (std::fabs(a[1]) + std::fabs(m.x1 / m.x2)));
  }
}

TEST(Property, ForwardBackwardRoundTrip) {
  Sampler g(19);
  for (int n = 0; n < 25; ++n) {
    const XiParam xi(g.uniform(0.1, 1.0));
    const State g0{g.uniform(0.5, 2), g.uniform(0.5, 2), g.uniform(0.5, 2), g.uniform(0.5, 2)};
    IntegratorConfig c;
    c.max_time = 0.01;
    const State g1 = integrate(FlowSystem::aw4(xi), g0, c).final_state();
    c.direction = Direction::Backward;
    const State g2 = integrate(FlowSystem::aw4(xi), g1, c).final_state();
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(g2[i], g0[i], 1e-8 * g0[i]);
  }
}

TEST(Property, TrajectoriesStayPositive) {
  Sampler g(20);
  for (int n = 0; n < 25; ++n) {
    const State g0{g.uniform(0.2, 3), g.uniform(0.2, 3)};
    IntegratorConfig c;
    c.max_time = 1.0;
    const Trajectory tr = integrate(FlowSystem::normalized(), g0, c);
    for (const auto& q : tr.states) {
      EXPECT_GT(q[0], 0.0);
      EXPECT_GT(q[1], 0.0);
    }
  }
}
