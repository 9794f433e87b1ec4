#include "kpp/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "kpp/asymptotics.hpp"
#include "kpp/frontsim.hpp"
#include "kpp/speed.hpp"

namespace kpp {

namespace {

ProblemSpec homogeneous_spec(const CrossSection& cs, double d, double fp0) {
  return ProblemSpec{cs, DiffusionSpec::isotropic(d), ShearFlow::zero(cs),
                     KppReaction::make_logistic(fp0)};
}

CriterionResult a1_homogeneous_exactness() {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 64);
  const double c1 = minimal_speed(homogeneous_spec(cs, 1.0, 1.0)).c_star;
  const double c4 = minimal_speed(homogeneous_spec(cs, 4.0, 1.0)).c_star;
  const double measured = std::max(std::abs(c1 - 2.0), std::abs(c4 - 4.0));
  std::ostringstream detail;
  detail << "c*(D=1) = " << c1 << ", c*(D=4) = " << c4;
  return {"A1", "homogeneous exactness", measured, 1e-10, measured <= 1e-10, detail.str()};
}

CriterionResult a2_rescaling_identity() {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 256);
  const ShearFlow flow = ShearFlow::cosine(cs, 6.0);
  const KppReaction reaction = KppReaction::make_logistic(1.0);
  double worst = 0.0;
  for (double b : {0.1, 0.5, 2.0, 10.0}) {
    worst = std::max(worst, rescale_identity_check(b, flow, reaction, cs));
  }
  return {"A2", "rescaling identity", worst, 1e-8, worst <= 1e-8,
          "max relative gap over b in {0.1, 0.5, 2, 10}"};
}

CriterionResult a3_limit_b_to_zero() {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 512);
  const ShearFlow flow = ShearFlow::cosine(cs, 6.0);
  const KppReaction reaction = KppReaction::make_logistic(1.0);
  const LimitReport report =
      verify_limit(LimitDirection::ToZero, flow, reaction, cs);
  bool sandwich = true;
  for (double c : report.speeds) {
    if (c < 2.0 - 1e-8 || c > report.predicted_limit * 1.02) sandwich = false;
  }
  std::ostringstream detail;
  detail << "extrapolated " << report.extrapolated_limit << " vs predicted "
         << report.predicted_limit << (sandwich ? "" : "; sandwich violated");
  return {"A3", "b->0 limit", report.relative_error, 0.02,
          report.relative_error <= 0.02 && sandwich, detail.str()};
}

CriterionResult a4_limit_b_to_infinity() {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 256);
  const ShearFlow flow = ShearFlow::cosine(cs, 6.0);
  const KppReaction reaction = KppReaction::make_logistic(1.0);
  const LimitReport report =
      verify_limit(LimitDirection::ToInfinity, flow, reaction, cs);
  std::ostringstream detail;
  detail << "extrapolated " << report.extrapolated_limit << " vs predicted "
         << report.predicted_limit;
  return {"A4", "b->inf limit", report.relative_error, 0.01,
          report.relative_error <= 0.01, detail.str()};
}

CriterionResult a5_proportional_counterexample() {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 512);
  const ShearFlow flow = ShearFlow::cosine(cs, 6.0);
  const KppReaction reaction = KppReaction::make_logistic(1.0);
  const CounterexampleReport report =
      find_proportional_counterexample(flow, reaction, cs, 1.0);

  // Re-verify both speeds from the reported parameters.
  const double sqrt_M1 = std::sqrt(report.M1);
  const double c_small =
      minimal_speed(ProblemSpec{cs, DiffusionSpec::isotropic(report.epsilon1),
                                flow.scaled(sqrt_M1), reaction})
          .c_star;
  const double c_large =
      minimal_speed(ProblemSpec{cs, DiffusionSpec::isotropic(report.M1),
                                flow.scaled(sqrt_M1), reaction})
          .c_star;
  const double reproduce_gap =
      std::max(std::abs(c_small - report.speed_small_diffusion) / report.speed_small_diffusion,
               std::abs(c_large - report.speed_large_diffusion) / report.speed_large_diffusion);
  const bool passed =
      report.margin > 0.0 && report.verified && reproduce_gap <= 1e-8;
  std::ostringstream detail;
  detail << "M1 = " << report.M1 << ", eps1 = " << report.epsilon1 << ", margin = "
         << report.margin << (report.verified ? " (confirmed)" : " (NOT confirmed)");
  return {"A5", "proportional counterexample", report.margin, 0.0, passed, detail.str()};
}

CriterionResult a6_nonproportional_counterexample() {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 512);
  const ShearFlow flow = ShearFlow::cosine(cs, 6.0);
  const KppReaction reaction = KppReaction::make_logistic(1.0);
  const NonproportionalReport report =
      find_nonproportional_counterexample(flow, reaction, cs, 1.0);
  const bool passed = report.epsilon < 1.0 && report.M > 1.0 && report.c_M < 3.0 &&
                      report.c_eps > 7.0 && report.verified;
  std::ostringstream detail;
  detail << "eps = " << report.epsilon << ", M = " << report.M << ", c(A_eps) = "
         << report.c_eps << ", c(A_M) = " << report.c_M;
  return {"A6", "non-proportional counterexample", report.c_eps - report.c_M, 0.0, passed,
          detail.str()};
}

CriterionResult a7_eigensolver_oracle() {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> n_dist(16, 256);
  std::uniform_int_distribution<int> mode_dist(1, 5);
  std::uniform_real_distribution<double> amp_dist(-5.0, 5.0);
  std::uniform_real_distribution<double> offset_dist(-2.0, 2.0);
  std::uniform_real_distribution<double> log_beta(std::log(0.1), std::log(10.0));
  std::bernoulli_distribution bc_dist(0.5);

  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = n_dist(rng);
    const auto kind =
        bc_dist(rng) ? BoundaryKind::CirclePeriodic : BoundaryKind::IntervalNeumann;
    const CrossSection cs = make_grid(kind, 1.0, n);
    const double beta = std::exp(log_beta(rng));
    std::vector<double> potential(n, offset_dist(rng));
    for (int k = 0; k < 3; ++k) {
      const double a = amp_dist(rng);
      const int m = mode_dist(rng);
      for (int i = 0; i < n; ++i) {
        potential[i] += a * std::cos(2.0 * std::numbers::pi * m * cs.node(i));
      }
    }
    const CellOperator op = assemble(cs, beta, potential);
    const double iterative = principal_eigenpair(op).eigenvalue;
    const double oracle = dense_oracle_eigenvalues(op).back();
    worst = std::max(worst,
                     std::abs(iterative - oracle) / (1.0 + std::abs(oracle)));
  }
  return {"A7", "eigensolver oracle equivalence", worst, 1e-10, worst <= 1e-10,
          "50 randomized operators, n <= 256"};
}

CriterionResult a8_bounds_and_convexity() {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> log_lambda(std::log(1e-2), std::log(1e2));
  std::uniform_real_distribution<double> log_diff(std::log(0.25), std::log(4.0));
  std::uniform_real_distribution<double> amp_dist(0.5, 6.0);
  std::uniform_int_distribution<int> mode_dist(1, 3);
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 64);

  double worst_bound = 0.0;
  double worst_convexity = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    ProblemSpec spec{cs,
                     DiffusionSpec{std::exp(log_diff(rng)), std::exp(log_diff(rng))},
                     ShearFlow::cosine(cs, amp_dist(rng), mode_dist(rng)),
                     KppReaction::make_logistic(std::exp(log_diff(rng)))};
    const double lambda = std::exp(log_lambda(rng));
    const double k = k_of_lambda(spec, lambda).eigenvalue;
    const auto [lower, upper] = analytic_bounds(spec, lambda);
    worst_bound = std::max({worst_bound, lower - k, k - upper});

    const double l1 = std::exp(log_lambda(rng));
    const double l2 = std::exp(log_lambda(rng));
    const double k1 = k_of_lambda(spec, l1).eigenvalue;
    const double k2 = k_of_lambda(spec, l2).eigenvalue;
    const double km = k_of_lambda(spec, 0.5 * (l1 + l2)).eigenvalue;
    worst_convexity = std::max(worst_convexity, km - 0.5 * (k1 + k2));
  }
  const double measured = std::max(worst_bound, worst_convexity);
  std::ostringstream detail;
  detail << "worst bound excess " << worst_bound << ", worst convexity excess "
         << worst_convexity;
  return {"A8", "bounds and convexity", measured, 1e-10, measured <= 1e-10, detail.str()};
}

CriterionResult a9_simulation_cross_validation() {
  struct Case {
    ProblemSpec spec;
    SimConfig sim;
  };
  const CrossSection cs4 = make_grid(BoundaryKind::CirclePeriodic, 1.0, 4);
  const CrossSection cs48 = make_grid(BoundaryKind::CirclePeriodic, 1.0, 48);
  std::vector<Case> cases;
  cases.push_back({homogeneous_spec(cs4, 1.0, 1.0), SimConfig{200.0, 2000, 60.0, 0.9, 0.5, 0.5}});
  cases.push_back({homogeneous_spec(cs4, 0.25, 1.0), SimConfig{120.0, 1600, 60.0, 0.9, 0.5, 0.5}});
  cases.push_back({ProblemSpec{cs48, DiffusionSpec::A_b(0.05), ShearFlow::cosine(cs48, 6.0),
                               KppReaction::make_logistic(1.0)},
                   SimConfig{220.0, 5500, 28.0, 0.9, 0.5, 0.5}});

  double worst_gap = 0.0;
  double worst_violation = 0.0;
  std::ostringstream detail;
  for (const auto& c : cases) {
    const CrossSection cs_var =
        make_grid(c.spec.cross_section.kind, c.spec.cross_section.length, 256);
    const ProblemSpec var_spec{cs_var, c.spec.diffusion, c.spec.flow.resample(cs_var),
                               c.spec.reaction};
    const double c_star = minimal_speed(var_spec).c_star;
    const FrontSimResult sim = simulate_front(c.spec, c.sim);
    const double gap = std::abs(sim.measured_speed - c_star) / c_star;
    worst_gap = std::max(worst_gap, gap);
    worst_violation =
        std::max({worst_violation, -sim.min_u, sim.max_u - 1.0});
    detail << "[c* = " << c_star << ", measured = " << sim.measured_speed << "] ";
  }
  const bool passed = worst_gap <= 0.05 && worst_violation <= 1e-12;
  detail << "worst bound violation " << worst_violation;
  return {"A9", "simulation cross-validation", worst_gap, 0.05, passed, detail.str()};
}

CriterionResult a10_decreasing_normalized_map() {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 256);
  const ShearFlow flow = ShearFlow::cosine(cs, 6.0);
  const KppReaction reaction = KppReaction::make_logistic(1.0);
  std::vector<double> values;
  for (double beta : {0.25, 1.0, 4.0, 16.0}) {
    const double c =
        minimal_speed(ProblemSpec{cs, DiffusionSpec::isotropic(beta),
                                  flow.scaled(std::sqrt(beta)), reaction})
            .c_star;
    values.push_back(c / std::sqrt(beta));
  }
  double worst_diff = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < values.size(); ++i) {
    worst_diff = std::max(worst_diff, values[i] - values[i - 1]);
  }
  std::ostringstream detail;
  detail << "normalized speeds:";
  for (double v : values) detail << ' ' << v;
  return {"A10", "decreasing normalized map", worst_diff, -1e-6, worst_diff < -1e-6,
          detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(SuiteScale scale) {
  std::vector<CriterionResult> results;
  results.push_back(a1_homogeneous_exactness());
  results.push_back(a2_rescaling_identity());
  results.push_back(a3_limit_b_to_zero());
  results.push_back(a4_limit_b_to_infinity());
  results.push_back(a5_proportional_counterexample());
  results.push_back(a6_nonproportional_counterexample());
  results.push_back(a7_eigensolver_oracle());
  results.push_back(a8_bounds_and_convexity());
  if (scale == SuiteScale::Full) {
    results.push_back(a9_simulation_cross_validation());
  }
  results.push_back(a10_decreasing_normalized_map());
  return results;
}

}  // namespace kpp
