#include "kpp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kpp/errors.hpp"

namespace kpp {

std::vector<double> normalize_zero_mean(std::span<const double> samples, const CrossSection& cs) {
  const double mean = cell_integrate(cs, samples) / cs.length;
  std::vector<double> out(samples.begin(), samples.end());
  for (double& v : out) v -= mean;
  return out;
}

ShearFlow ShearFlow::zero(const CrossSection& cs) {
  ShearFlow f;
  f.profile = FlowProfile::Zero;
  f.samples.assign(cs.n, 0.0);
  f.max_value = 0.0;
  return f;
}

ShearFlow ShearFlow::cosine(const CrossSection& cs, double amplitude, int mode) {
  if (!(amplitude > 0.0)) {
    throw ValidationError("amplitude", "must be positive, got " + std::to_string(amplitude));
  }
  if (mode < 1 || mode > cs.n / 2 - 1) {
    throw ValidationError("mode", "must be in [1, n/2-1], got " + std::to_string(mode));
  }
  ShearFlow f;
  f.profile = FlowProfile::Cosine;
  f.amplitude = amplitude;
  f.mode = mode;
  std::vector<double> raw(cs.n);
  for (int i = 0; i < cs.n; ++i) {
    raw[i] = amplitude * std::cos(2.0 * std::numbers::pi * mode * cs.node(i) / cs.length);
  }
  f.samples = normalize_zero_mean(raw, cs);
  f.max_value = amplitude;  // cos attains 1 on the closed cell
  return f;
}

ShearFlow ShearFlow::piecewise_linear(const CrossSection& cs,
                                      std::vector<std::pair<double, double>> breakpoints) {
  if (breakpoints.size() < 2) {
    throw ValidationError("breakpoints", "need at least two points");
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  if (breakpoints.front().first != 0.0 || breakpoints.back().first != cs.length) {
    throw ValidationError("breakpoints", "must span [0, length]");
  }
  ShearFlow f;
  f.profile = FlowProfile::PiecewiseLinear;
  f.breakpoints = breakpoints;

  std::vector<double> raw(cs.n);
  std::size_t seg = 0;
  for (int i = 0; i < cs.n; ++i) {
    const double y = cs.node(i);
    while (seg + 2 < breakpoints.size() && breakpoints[seg + 1].first < y) ++seg;
    const auto& [x0, v0] = breakpoints[seg];
    const auto& [x1, v1] = breakpoints[seg + 1];
    raw[i] = v0 + (v1 - v0) * (y - x0) / (x1 - x0);
  }
  const double mean = cell_integrate(cs, raw) / cs.length;
  f.samples = normalize_zero_mean(raw, cs);
  double bp_max = breakpoints.front().second;
  for (const auto& [x, v] : breakpoints) bp_max = std::max(bp_max, v);
  f.max_value = bp_max - mean;
  return f;
}

ShearFlow ShearFlow::scaled(double factor) const {
  if (!(factor > 0.0)) {
    throw ValidationError("factor", "must be positive, got " + std::to_string(factor));
  }
  ShearFlow f = *this;
  f.scale *= factor;
  for (double& v : f.samples) v *= factor;
  f.max_value *= factor;
  return f;
}

ShearFlow ShearFlow::resample(const CrossSection& cs) const {
  ShearFlow f;
  switch (profile) {
    case FlowProfile::Zero:
      f = zero(cs);
      break;
    case FlowProfile::Cosine:
      f = cosine(cs, amplitude, mode);
      break;
    case FlowProfile::PiecewiseLinear:
      f = piecewise_linear(cs, breakpoints);
      break;
  }
  if (scale != 1.0) f = f.scaled(scale);
  return f;
}

double flow_max(const ShearFlow& flow) { return flow.max_value; }

double KppReaction::operator()(double u) const {
  if (logistic) return mu * u * (1.0 - u);
  double v = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * u + *it;
  return v;
}

KppReaction KppReaction::make_logistic(double mu) {
  if (!(mu > 0.0)) {
    throw ValidationError("mu", "must be positive, got " + std::to_string(mu));
  }
  KppReaction r;
  r.logistic = true;
  r.mu = mu;
  r.growth_rate = mu;
  return r;
}

KppReaction KppReaction::polynomial(std::vector<double> coefficients) {
  if (coefficients.size() < 2) {
    throw ValidationError("coefficients", "need degree >= 1");
  }
  if (coefficients[0] != 0.0) {
    throw ValidationError("coefficients", "f(0) must be 0 (constant term nonzero)");
  }
  KppReaction r;
  r.logistic = false;
  r.poly = std::move(coefficients);
  r.growth_rate = r.poly[1];
  return r;
}

KppCheckResult kpp_check(const KppReaction& reaction, int n_samples) {
  if (n_samples < 100) {
    throw ValidationError("n_samples", "must be at least 100, got " + std::to_string(n_samples));
  }
  constexpr double kTol = 1e-14;
  const double gr = reaction.growth_rate;
  auto reject = [](double u, double fu, double bound, std::string what) {
    return KppCheckResult{false, KppViolation{u, fu, bound, std::move(what)}};
  };
  if (!(gr > 0.0)) {
    return reject(0.0, 0.0, 0.0, "f'(0) must be positive");
  }
  if (std::abs(reaction(0.0)) > kTol) {
    return reject(0.0, reaction(0.0), 0.0, "f(0) != 0");
  }
  if (std::abs(reaction(1.0)) > kTol) {
    return reject(1.0, reaction(1.0), 0.0, "f(1) != 0");
  }
  for (int j = 1; j < n_samples; ++j) {
    const double u = static_cast<double>(j) / n_samples;
    const double fu = reaction(u);
    if (!(fu > 0.0)) {
      return reject(u, fu, 0.0, "f must be positive on (0,1)");
    }
    if (fu > gr * u + kTol) {
      return reject(u, fu, gr * u, "KPP condition f(u) <= f'(0) u violated");
    }
  }
  return KppCheckResult{true, std::nullopt};
}

void validate(const ProblemSpec& spec) {
  make_grid(spec.cross_section.kind, spec.cross_section.length, spec.cross_section.n);
  if (!(spec.diffusion.axial > 0.0)) {
    throw ValidationError("alpha", "axial diffusion must be positive");
  }
  if (!(spec.diffusion.transverse > 0.0)) {
    throw ValidationError("beta", "transverse diffusion must be positive");
  }
  if (static_cast<int>(spec.flow.samples.size()) != spec.cross_section.n) {
    throw ValidationError("flow", "sample count does not match grid");
  }
  if (std::abs(cell_integrate(spec.cross_section, spec.flow.samples)) >
      1e-12 * (1.0 + std::abs(spec.flow.max_value))) {
    throw ValidationError("flow", "samples are not zero-mean");
  }
  auto check = kpp_check(spec.reaction);
  if (!check.accepted) {
    throw ValidationError("reaction", check.violation->what);
  }
}

}  // namespace kpp
