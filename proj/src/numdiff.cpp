#include "awflow/numdiff.hpp"

namespace awflow {

double flow_derivative(const FlowSystem& system, const State& init,
                       const std::function<double(const State&)>& functional, double h) {
  IntegratorConfig config;
  config.rel_tol = 1e-13;
  config.abs_tol = 1e-15;
  config.max_step = h / 8.0;
  config.max_time = h;

  const Trajectory ahead = integrate(system, init, config);
  config.direction = Direction::Backward;
  const Trajectory behind = integrate(system, init, config);
  return (functional(ahead.final_state()) - functional(behind.final_state())) / (2.0 * h);
}

}  // namespace awflow
