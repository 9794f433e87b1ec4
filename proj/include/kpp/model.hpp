#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kpp/geometry.hpp"

namespace kpp {

// Subtracts the cell average so that cell_integrate(result) == 0.
std::vector<double> normalize_zero_mean(std::span<const double> samples, const CrossSection& cs);

enum class FlowProfile { Zero, Cosine, PiecewiseLinear };

// Shear-flow profile q1(y): zero cell average, sampled at the grid nodes.
struct ShearFlow {
  FlowProfile profile = FlowProfile::Zero;
  double amplitude = 0.0;  // Cosine only
  int mode = 1;            // Cosine only
  std::vector<std::pair<double, double>> breakpoints;  // PiecewiseLinear only
  double scale = 1.0;      // uniform factor applied on top of the profile

  std::vector<double> samples;
  double max_value = 0.0;

  static ShearFlow zero(const CrossSection& cs);
  static ShearFlow cosine(const CrossSection& cs, double amplitude, int mode = 1);
  static ShearFlow piecewise_linear(const CrossSection& cs,
                                    std::vector<std::pair<double, double>> breakpoints);

  // Same profile scaled by `factor` (flow_max and samples scale with it).
  ShearFlow scaled(double factor) const;
  // Same profile re-sampled on a different grid.
  ShearFlow resample(const CrossSection& cs) const;
};

double flow_max(const ShearFlow& flow);

// KPP nonlinearity f(u) on [0,1]. Closed-form family: logistic mu*u*(1-u)
// or a user polynomial sum(c_k u^k) with c_0 = 0.
struct KppReaction {
  double growth_rate = 1.0;          // f'(0)
  std::vector<double> poly;          // coefficients, poly[k] multiplies u^k
  double mu = 1.0;                   // logistic rate; poly empty => logistic
  bool logistic = true;

  double operator()(double u) const;

  static KppReaction make_logistic(double mu);
  static KppReaction polynomial(std::vector<double> coefficients);
};

struct KppViolation {
  double u;
  double f_u;
  double bound;  // the violated bound (f'(0)*u, or 0 for positivity/endpoint failures)
  std::string what;
};

struct KppCheckResult {
  bool accepted = false;
  std::optional<KppViolation> violation;
};

// Dense-sampling validation of the KPP conditions: f(0)=f(1)=0, f>0 on (0,1),
// f(u) <= f'(0) u on [0,1].
KppCheckResult kpp_check(const KppReaction& reaction, int n_samples = 10000);

// Diagonal diffusion matrix diag(axial, transverse, ..., transverse).
struct DiffusionSpec {
  double axial = 1.0;       // coefficient of u_xx
  double transverse = 1.0;  // coefficient of the transverse Laplacian

  static DiffusionSpec isotropic(double d) { return {d, d}; }
  static DiffusionSpec A_b(double b) { return {1.0, b}; }
};

struct ProblemSpec {
  CrossSection cross_section;
  DiffusionSpec diffusion;
  ShearFlow flow;
  KppReaction reaction;
};

// Throws ValidationError on any broken component invariant.
void validate(const ProblemSpec& spec);

}  // namespace kpp
