#include "kpp/asymptotics.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "kpp/errors.hpp"

namespace kpp {

namespace {

std::vector<double> geometric_schedule(double from, double to, int points) {
  std::vector<double> out(points);
  const double ratio = std::pow(to / from, 1.0 / (points - 1));
  double b = from;
  for (int i = 0; i < points; ++i) {
    out[i] = b;
    b *= ratio;
  }
  return out;
}

}  // namespace

double predict_limit_b_to_zero(const ShearFlow& flow, const KppReaction& reaction) {
  return flow_max(flow) + 2.0 * std::sqrt(reaction.growth_rate);
}

double predict_limit_b_to_infinity(const KppReaction& reaction) {
  return 2.0 * std::sqrt(reaction.growth_rate);
}

LimitReport verify_limit(LimitDirection direction, const ShearFlow& flow,
                         const KppReaction& reaction, const CrossSection& cs,
                         std::vector<double> b_schedule) {
  if (b_schedule.empty()) {
    b_schedule = direction == LimitDirection::ToZero ? geometric_schedule(1e-1, 1e-4, 7)
                                                     : geometric_schedule(1e1, 1e4, 7);
  }
  if (b_schedule.size() < 4) {
    throw ValidationError("b_schedule", "need at least 4 points");
  }
  for (std::size_t i = 1; i < b_schedule.size(); ++i) {
    const bool ok = direction == LimitDirection::ToZero ? b_schedule[i] < b_schedule[i - 1]
                                                        : b_schedule[i] > b_schedule[i - 1];
    if (!ok) throw ValidationError("b_schedule", "must be monotone toward the limit");
  }

  LimitReport report;
  report.b_values = b_schedule;
  report.predicted_limit = direction == LimitDirection::ToZero
                               ? predict_limit_b_to_zero(flow, reaction)
                               : predict_limit_b_to_infinity(reaction);
  for (double b : b_schedule) {
    report.speeds.push_back(speed_for_Ab(b, flow, reaction, cs).c_star);
  }

  for (std::size_t i = 1; i + 1 < report.speeds.size(); ++i) {
    const double e_prev = std::abs(report.speeds[i - 1] - report.predicted_limit);
    const double e_next = std::abs(report.speeds[i] - report.predicted_limit);
    if (e_next > e_prev) report.monotone_approach = false;
  }

  const std::size_t k = report.speeds.size() - 1;
  const double d1 = report.speeds[k - 1] - report.speeds[k - 2];
  const double d2 = report.speeds[k] - report.speeds[k - 1];
  const double denom = d2 - d1;
  if (std::abs(denom) < 1e-13 * (1.0 + std::abs(report.speeds[k]))) {
    report.extrapolated_limit = report.speeds[k];
    report.fitted_order = 0.0;
  } else {
    report.extrapolated_limit = report.speeds[k] - d2 * d2 / denom;
    const double x_ratio = direction == LimitDirection::ToZero
                               ? b_schedule[k] / b_schedule[k - 1]
                               : b_schedule[k - 1] / b_schedule[k];
    if (d1 != 0.0 && d2 != 0.0 && x_ratio > 0.0 && x_ratio != 1.0) {
      report.fitted_order = std::log(std::abs(d2 / d1)) / std::log(x_ratio);
    }
  }
  report.relative_error = std::abs(report.extrapolated_limit - report.predicted_limit) /
                          std::abs(report.predicted_limit);
  return report;
}

CounterexampleReport find_proportional_counterexample(const ShearFlow& flow,
                                                      const KppReaction& reaction,
                                                      const CrossSection& cs,
                                                      std::optional<double> delta_opt) {
  const double qmax = flow_max(flow);
  const double base = 2.0 * std::sqrt(reaction.growth_rate);
  const double delta = delta_opt.value_or((qmax - base) / 4.0);
  if (!(delta > 0.0) || !(base + delta < qmax - delta)) {
    std::ostringstream msg;
    msg << "premise unsatisfiable: need 0 < 2 sqrt(f'(0)) + delta < max(q1) - delta, got "
        << base << " + " << delta << " < " << qmax << " - " << delta;
    throw PremiseError(msg.str());
  }

  CounterexampleReport report;
  report.delta = delta;

  auto speed_iso = [&](double kappa, double flow_scale, const CrossSection& grid,
                       const ShearFlow& q) {
    return minimal_speed(ProblemSpec{grid, DiffusionSpec::isotropic(kappa),
                                     q.scaled(flow_scale), reaction})
        .c_star;
  };

  // Steps 1-2: grow M until c*_{M Id, sqrt(M) q} / sqrt(M) < 2 sqrt(f'(0)) + delta.
  double M = 1.0;
  double c_large = 0.0;
  bool found = false;
  for (int it = 0; it <= 60; ++it) {
    c_large = speed_iso(M, std::sqrt(M), cs, flow);
    report.trace.emplace_back(M, c_large);
    if (c_large / std::sqrt(M) < base + delta) {
      found = true;
      break;
    }
    M *= 2.0;
  }
  if (!found) {
    throw SolverError("search budget exhausted: no M with c*/sqrt(M) < 2 sqrt(f'(0)) + delta");
  }
  report.M1 = M;
  report.speed_large_diffusion = c_large;

  // Steps 3-4: shrink eps until c*_{eps Id, sqrt(M1) q} > sqrt(M1) (max q1 - delta).
  double eps = M / 2.0;
  double c_small = 0.0;
  found = false;
  for (int it = 0; it <= 60; ++it) {
    c_small = speed_iso(eps, std::sqrt(M), cs, flow);
    report.trace.emplace_back(eps, c_small);
    if (c_small > std::sqrt(M) * (qmax - delta)) {
      found = true;
      break;
    }
    eps /= 2.0;
  }
  if (!found) {
    throw SolverError(
        "search budget exhausted: no eps with c* > sqrt(M1) (max q1 - delta)");
  }
  report.epsilon1 = eps;
  report.speed_small_diffusion = c_small;
  report.margin = c_small - c_large;

  // Confirmation pass at doubled resolution.
  const CrossSection fine = make_grid(cs.kind, cs.length, 2 * cs.n);
  const ShearFlow flow_fine = flow.resample(fine);
  const double c_small_fine = speed_iso(eps, std::sqrt(M), fine, flow_fine);
  const double c_large_fine = speed_iso(M, std::sqrt(M), fine, flow_fine);
  report.verified = (c_small_fine > c_large_fine) &&
                    (c_large_fine / std::sqrt(M) < base + delta) &&
                    (c_small_fine > std::sqrt(M) * (qmax - delta));
  return report;
}

NonproportionalReport find_nonproportional_counterexample(const ShearFlow& flow,
                                                          const KppReaction& reaction,
                                                          const CrossSection& cs,
                                                          std::optional<double> delta_opt) {
  const double qmax = flow_max(flow);
  const double base = 2.0 * std::sqrt(reaction.growth_rate);
  const double delta = delta_opt.value_or(qmax / 4.0);
  if (!(delta > 0.0) || !(qmax > 2.0 * delta)) {
    std::ostringstream msg;
    msg << "premise unsatisfiable: need max(q1) > 2 delta, got " << qmax << " <= "
        << 2.0 * delta;
    throw PremiseError(msg.str());
  }

  NonproportionalReport report;
  report.delta = delta;
  const double upper_target = qmax + base - delta;  // c*(A_eps) must exceed this
  const double lower_target = base + delta;         // c*(A_M) must drop below this

  double eps = 0.5;
  double c_eps = 0.0;
  bool found = false;
  for (int it = 0; it <= 60; ++it) {
    c_eps = speed_for_Ab(eps, flow, reaction, cs).c_star;
    report.trace.emplace_back(eps, c_eps);
    if (c_eps > upper_target) {
      found = true;
      break;
    }
    eps /= 2.0;
  }
  if (!found) {
    throw SolverError("search budget exhausted: no eps with c*(A_eps) > max q1 + 2 sqrt(f'(0)) - delta");
  }

  double M = 2.0;
  double c_M = 0.0;
  found = false;
  for (int it = 0; it <= 60; ++it) {
    c_M = speed_for_Ab(M, flow, reaction, cs).c_star;
    report.trace.emplace_back(M, c_M);
    if (c_M < lower_target) {
      found = true;
      break;
    }
    M *= 2.0;
  }
  if (!found) {
    throw SolverError("search budget exhausted: no M with c*(A_M) < 2 sqrt(f'(0)) + delta");
  }

  report.epsilon = eps;
  report.M = M;
  report.c_eps = c_eps;
  report.c_M = c_M;

  const CrossSection fine = make_grid(cs.kind, cs.length, 2 * cs.n);
  const ShearFlow flow_fine = flow.resample(fine);
  const double c_eps_fine = speed_for_Ab(eps, flow_fine, reaction, fine).c_star;
  const double c_M_fine = speed_for_Ab(M, flow_fine, reaction, fine).c_star;
  report.verified = (c_eps_fine > upper_target) && (c_M_fine < lower_target);
  return report;
}

int default_thread_count() {
  if (const char* env = std::getenv("KPP_SPEEDLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<ScanRow> scan_speed_vs_b(const ShearFlow& flow, const KppReaction& reaction,
                                     const CrossSection& cs, const std::vector<double>& b_grid,
                                     int threads) {
  if (b_grid.empty()) {
    throw ValidationError("b_grid", "at least one grid point is required");
  }
  for (std::size_t i = 0; i < b_grid.size(); ++i) {
    if (!(b_grid[i] > 0.0)) {
      throw ValidationError("b_grid", "entries must be positive");
    }
    if (i > 0 && b_grid[i] < b_grid[i - 1]) {
      throw ValidationError("b_grid", "entries must be sorted ascending");
    }
  }
  std::vector<ScanRow> rows(b_grid.size());
  if (threads <= 0) threads = default_thread_count();
  threads = std::min<int>(threads, std::max<std::size_t>(b_grid.size(), 1));

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= b_grid.size()) break;
      ScanRow row;
      row.b = b_grid[i];
      try {
        const SpeedResult r = speed_for_Ab(b_grid[i], flow, reaction, cs);
        row.c_star = r.c_star;
        row.lambda_star = r.lambda_star;
        row.ok = true;
      } catch (const std::exception& e) {
        row.ok = false;
        row.message = e.what();
      }
      rows[i] = std::move(row);
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

}  // namespace kpp
