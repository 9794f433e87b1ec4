#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kpp/speed.hpp"

namespace kpp {

enum class LimitDirection { ToZero, ToInfinity };

struct LimitReport {
  std::vector<double> b_values;
  std::vector<double> speeds;
  double extrapolated_limit = 0.0;
  double predicted_limit = 0.0;
  double relative_error = 0.0;
  double fitted_order = 0.0;
  bool monotone_approach = true;
};

// Limits of b -> c*(A_b, q, f): max(q1) + 2 sqrt(f'(0)) as b -> 0,
// and 2 sqrt(f'(0)) as b -> infinity.
double predict_limit_b_to_zero(const ShearFlow& flow, const KppReaction& reaction);
double predict_limit_b_to_infinity(const KppReaction& reaction);

// Computes speed_for_Ab along the schedule and Aitken-extrapolates the limit;
// the convergence order is fitted from the last three points, not assumed.
LimitReport verify_limit(LimitDirection direction, const ShearFlow& flow,
                         const KppReaction& reaction, const CrossSection& cs,
                         std::vector<double> b_schedule = {});

struct CounterexampleReport {
  double delta = 0.0;
  double M1 = 0.0;
  double epsilon1 = 0.0;
  double speed_small_diffusion = 0.0;  // c*_{eps1 Id, sqrt(M1) q, f}
  double speed_large_diffusion = 0.0;  // c*_{M1 Id, sqrt(M1) q, f}
  double margin = 0.0;
  std::vector<std::pair<double, double>> trace;  // (parameter, speed) visited
  bool verified = false;  // confirmed at doubled grid resolution
};

// Doubling/halving search realizing the proportional-diffusion counterexample:
// finds M1, eps1 with c*_{eps1 Id, sqrt(M1) q} > c*_{M1 Id, sqrt(M1) q}.
// Requires max(q1) > 2 sqrt(f'(0)) + 2 delta; default delta centers that gap.
CounterexampleReport find_proportional_counterexample(const ShearFlow& flow,
                                                      const KppReaction& reaction,
                                                      const CrossSection& cs,
                                                      std::optional<double> delta = {});

struct NonproportionalReport {
  double epsilon = 0.0;  // < 1
  double M = 0.0;        // > 1
  double c_eps = 0.0;    // c*(A_eps, q, f)
  double c_M = 0.0;      // c*(A_M, q, f)
  double delta = 0.0;
  std::vector<std::pair<double, double>> trace;
  bool verified = false;
};

// Non-proportional counterexample: eps < 1 < M with A_eps <= A_M yet
// c*(A_M) < 2 sqrt(f'(0)) + delta < max(q1) + 2 sqrt(f'(0)) - delta < c*(A_eps).
// Requires max(q1) > 2 delta.
NonproportionalReport find_nonproportional_counterexample(const ShearFlow& flow,
                                                          const KppReaction& reaction,
                                                          const CrossSection& cs,
                                                          std::optional<double> delta = {});

struct ScanRow {
  double b = 0.0;
  double c_star = 0.0;
  double lambda_star = 0.0;
  bool ok = false;
  std::string message;
};

// One speed_for_Ab solve per grid point; per-row failures are recorded and the
// scan continues. Rows come back in input order regardless of scheduling.
std::vector<ScanRow> scan_speed_vs_b(const ShearFlow& flow, const KppReaction& reaction,
                                     const CrossSection& cs, const std::vector<double>& b_grid,
                                     int threads = 0);

// Worker-thread cap: KPP_SPEEDLAB_THREADS if set, hardware concurrency otherwise.
int default_thread_count();

}  // namespace kpp
