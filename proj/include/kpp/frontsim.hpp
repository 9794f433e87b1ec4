#pragma once

#include <utility>
#include <vector>

#include "kpp/model.hpp"

namespace kpp {

struct SimConfig {
  double strip_length = 200.0;  // x-extent
  int nx = 2000;
  double t_end = 80.0;
  double cfl_safety = 0.9;
  double level = 0.5;       // tracked contour of the y-averaged profile
  double fit_window = 0.5;  // trailing fraction of the run used for the fit
};

struct FrontSimResult {
  double measured_speed = 0.0;  // |fitted slope|, always positive
  double fit_residual = 0.0;    // RMS fit deviation / fit-window duration
  // (t, displacement): distance traveled by the level crossing since the
  // first sample. The front invades the 0-state moving in -x; displacement
  // grows monotonically once the transient has passed.
  std::vector<std::pair<double, double>> positions;
  double dt_used = 0.0;
  double min_u = 0.0;  // extrema seen over the whole run
  double max_u = 1.0;
  std::vector<double> masses;  // integral of u at the sample times
};

// Explicit-Euler integration of u_t = alpha u_xx + beta Lap_y u
// + q1(y) u_x + f(u) from step initial data, Neumann at the x-ends,
// cross-section boundary condition from the spec. Upwind advection,
// dt derived from the stability limit.
FrontSimResult simulate_front(const ProblemSpec& spec, const SimConfig& sim);

}  // namespace kpp
