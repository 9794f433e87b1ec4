#pragma once

#include <utility>
#include <vector>

#include "kpp/eigensolver.hpp"
#include "kpp/model.hpp"

namespace kpp {

struct SpeedResult {
  double c_star = 0.0;
  double lambda_star = 0.0;
  double k_at_star = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int evaluations = 0;
};

// Principal eigenvalue k(lambda) of beta * Lap_y + V with
// V(y) = alpha lambda^2 + lambda q1(y) + f'(0).
EigenResult k_of_lambda(const ProblemSpec& spec, double lambda,
                        std::span<const double> warm_start = {});

// c* = min_{lambda > 0} k(lambda)/lambda, golden section on log(lambda) with
// bracket expansion from lambda0 = sqrt(f'(0)/alpha).
SpeedResult minimal_speed(const ProblemSpec& spec);

// Speed of the A_b problem: unit axial diffusion, transverse diffusion b.
SpeedResult speed_for_Ab(double b, const ShearFlow& flow, const KppReaction& reaction,
                         const CrossSection& cs);

// Relative gap of the identity c*_{b Id, sqrt(b) q} = sqrt(b) c*_{A_b, q},
// with the two sides computed through independent solves.
double rescale_identity_check(double b, const ShearFlow& flow, const KppReaction& reaction,
                              const CrossSection& cs);

// lower = alpha lambda^2 + f'(0) (constant test function),
// upper = lower + lambda * max(q1).
std::pair<double, double> analytic_bounds(const ProblemSpec& spec, double lambda);

struct LowerBoundCertificate {
  double value = 0.0;        // 2 sqrt(beta(b)) + (max q1 - delta)
  double beta_b = 0.0;       // f'(0) - b * grad_energy
  double grad_energy = 0.0;  // integral |grad phi|^2 of the bump
  double b0 = 0.0;           // validity threshold: b < b0
  int support_begin = 0;     // first index of the bump support (may wrap)
  int support_len = 0;
};

// Rayleigh-quotient lower bound on c*_{b Id, sqrt(b) q}/sqrt(b) built from a
// raised-cosine bump supported where q1 >= max(q1) - delta.
LowerBoundCertificate lower_bound_certificate(const ShearFlow& flow, const KppReaction& reaction,
                                              const CrossSection& cs, double delta, double b);

}  // namespace kpp
