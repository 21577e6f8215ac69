#pragma once

// Central finite differences, used as oracles against the closed forms.

#include <array>
#include <cstddef>
#include <functional>

#include "awflow/flow.hpp"

namespace awflow {

inline constexpr double kSpatialStep = 1e-6;
inline constexpr double kFlowTimeStep = 1e-5;

template <class F>
double central_difference(F&& f, double x, double h = kSpatialStep) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

template <std::size_t N, class F>
std::array<double, N> central_gradient(F&& f, const std::array<double, N>& p,
                                       double h = kSpatialStep) {
  std::array<double, N> grad{};
  for (std::size_t i = 0; i < N; ++i) {
    auto plus = p;
    auto minus = p;
    plus[i] += h;
    minus[i] -= h;
    grad[i] = (f(plus) - f(minus)) / (2.0 * h);
  }
  return grad;
}

/// d/dl of functional(g(l)) at l = 0 along the flow of system from init,
/// by integrating to +-h with tight tolerances.
double flow_derivative(const FlowSystem& system, const State& init,
                       const std::function<double(const State&)>& functional,
                       double h = kFlowTimeStep);

}  // namespace awflow
