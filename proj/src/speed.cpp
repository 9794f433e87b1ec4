#include "kpp/speed.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "kpp/errors.hpp"

namespace kpp {

namespace {

std::vector<double> potential_of(const ProblemSpec& spec, double lambda) {
  const int n = spec.cross_section.n;
  std::vector<double> v(n);
  const double base =
      spec.diffusion.axial * lambda * lambda + spec.reaction.growth_rate;
  for (int i = 0; i < n; ++i) v[i] = base + lambda * spec.flow.samples[i];
  return v;
}

}  // namespace

EigenResult k_of_lambda(const ProblemSpec& spec, double lambda,
                        std::span<const double> warm_start) {
  if (!(lambda > 0.0)) {
    throw ValidationError("lambda", "must be positive, got " + std::to_string(lambda));
  }
  const auto v = potential_of(spec, lambda);
  const CellOperator op = assemble(spec.cross_section, spec.diffusion.transverse, v);
  return principal_eigenpair(op, warm_start);
}

SpeedResult minimal_speed(const ProblemSpec& spec) {
  validate(spec);

  // Eigenvalue cache keyed by lambda; the last eigenfunction warm-starts
  // nearby solves (results are converged to the same tolerance either way).
  std::map<double, double> cache;
  std::vector<double> warm;
  int evaluations = 0;

  auto k_at = [&](double lambda) {
    auto it = cache.find(lambda);
    if (it != cache.end()) return it->second;
    EigenResult r = k_of_lambda(spec, lambda, warm);
    if (!std::isfinite(r.eigenvalue)) {
      throw SolverError("k(lambda) is not finite at lambda = " + std::to_string(lambda));
    }
    warm = r.eigenfunction;
    ++evaluations;
    cache.emplace(lambda, r.eigenvalue);
    return r.eigenvalue;
  };
  auto g = [&](double lambda) { return k_at(lambda) / lambda; };

  const double lambda0 =
      std::sqrt(spec.reaction.growth_rate / spec.diffusion.axial);
  double mid = lambda0;
  double gmid = g(mid);
  int steps = 0;
  while (g(mid / 2.0) < gmid) {
    mid /= 2.0;
    gmid = g(mid);
    if (++steps > 40) {
      throw SolverError("bracketing failure: k(lambda)/lambda still descending after 40 halvings");
    }
  }
  steps = 0;
  while (g(2.0 * mid) < gmid) {
    mid *= 2.0;
    gmid = g(mid);
    if (++steps > 40) {
      throw SolverError("bracketing failure: k(lambda)/lambda still descending after 40 doublings");
    }
  }
  const double bracket_lo = mid / 2.0;
  const double bracket_hi = 2.0 * mid;

  // Golden section on t = log(lambda).
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(bracket_lo);
  double b = std::log(bracket_hi);
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double gc = g(std::exp(c));
  double gd = g(std::exp(d));
  while (b - a > 1e-8) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - invphi * (b - a);
      gc = g(std::exp(c));
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + invphi * (b - a);
      gd = g(std::exp(d));
    }
  }

  SpeedResult result;
  result.lambda_star = std::exp(0.5 * (a + b));
  result.k_at_star = k_at(result.lambda_star);
  result.c_star = result.k_at_star / result.lambda_star;
  result.bracket_lo = bracket_lo;
  result.bracket_hi = bracket_hi;
  result.evaluations = evaluations;
  if (!(result.c_star > 0.0) || !std::isfinite(result.c_star)) {
    throw SolverError("minimal speed is not a finite positive number");
  }
  return result;
}

SpeedResult speed_for_Ab(double b, const ShearFlow& flow, const KppReaction& reaction,
                         const CrossSection& cs) {
  if (!(b > 0.0)) {
    throw ValidationError("b", "must be positive, got " + std::to_string(b));
  }
  return minimal_speed(ProblemSpec{cs, DiffusionSpec::A_b(b), flow, reaction});
}

double rescale_identity_check(double b, const ShearFlow& flow, const KppReaction& reaction,
                              const CrossSection& cs) {
  if (!(b > 0.0)) {
    throw ValidationError("b", "must be positive, got " + std::to_string(b));
  }
  const double sqrt_b = std::sqrt(b);
  const SpeedResult left = minimal_speed(
      ProblemSpec{cs, DiffusionSpec::isotropic(b), flow.scaled(sqrt_b), reaction});
  const SpeedResult right = speed_for_Ab(b, flow, reaction, cs);
  return std::abs(left.c_star - sqrt_b * right.c_star) / (sqrt_b * right.c_star);
}

std::pair<double, double> analytic_bounds(const ProblemSpec& spec, double lambda) {
  const double lower =
      spec.diffusion.axial * lambda * lambda + spec.reaction.growth_rate;
  return {lower, lower + lambda * flow_max(spec.flow)};
}

LowerBoundCertificate lower_bound_certificate(const ShearFlow& flow, const KppReaction& reaction,
                                              const CrossSection& cs, double delta, double b) {
  const double qmax = flow_max(flow);
  if (!(qmax > 0.0)) {
    throw ValidationError("flow", "certificate requires a nonzero flow");
  }
  if (!(delta > 0.0) || !(delta < qmax)) {
    throw ValidationError("delta", "must lie in (0, max q1)");
  }
  if (!(b > 0.0)) {
    throw ValidationError("b", "must be positive, got " + std::to_string(b));
  }

  const int n = cs.n;
  const double threshold = qmax - delta;
  std::vector<char> in(n, 0);
  int count = 0;
  for (int i = 0; i < n; ++i) {
    if (flow.samples[i] >= threshold) {
      in[i] = 1;
      ++count;
    }
  }
  if (count == 0) {
    throw ValidationError("delta", "no grid node satisfies q1 >= max - delta; refine the grid");
  }

  // Maximal contiguous run (circular for the periodic section).
  int best_begin = 0, best_len = 0;
  const bool wrap = (cs.kind == BoundaryKind::CirclePeriodic);
  const int limit = wrap ? 2 * n : n;
  int run_begin = -1;
  for (int i = 0; i < limit; ++i) {
    if (in[i % n]) {
      if (run_begin < 0) run_begin = i;
      const int len = std::min(i - run_begin + 1, n);
      if (len > best_len) {
        best_len = len;
        best_begin = run_begin % n;
      }
    } else {
      run_begin = -1;
    }
  }

  // Raised-cosine bump on the run, zero outside.
  const int m = best_len;
  const double h = cs.spacing();
  std::vector<double> phi(m);
  for (int j = 0; j < m; ++j) {
    phi[j] = 1.0 - std::cos(2.0 * std::numbers::pi * (j + 0.5) / m);
  }
  double mass = 0.0;
  for (double p : phi) mass += p * p;
  mass *= h;
  for (double& p : phi) p /= std::sqrt(mass);

  double energy = phi[0] * phi[0] + phi[m - 1] * phi[m - 1];
  for (int j = 0; j + 1 < m; ++j) {
    const double dphi = phi[j + 1] - phi[j];
    energy += dphi * dphi;
  }
  energy /= h;

  LowerBoundCertificate cert;
  cert.grad_energy = energy;
  cert.b0 = reaction.growth_rate / energy;
  cert.beta_b = reaction.growth_rate - b * energy;
  cert.support_begin = best_begin;
  cert.support_len = best_len;
  if (!(cert.beta_b > 0.0)) {
    throw ValidationError("b", "certificate invalid: b >= b0 = " + std::to_string(cert.b0));
  }
  cert.value = 2.0 * std::sqrt(cert.beta_b) + threshold;
  return cert;
}

}  // namespace kpp
