#pragma once

#include <span>
#include <vector>

#include "kpp/geometry.hpp"

namespace kpp {

// Discretization of phi -> beta * Lap_y phi + V(y) phi on the cell grid.
// Symmetric tridiagonal, plus two corner entries in the periodic case.
struct CellOperator {
  int n = 0;
  double h = 0.0;
  double coupling = 0.0;  // beta / h^2, the (constant) off-diagonal entry
  BoundaryKind bc = BoundaryKind::CirclePeriodic;
  std::vector<double> diag;       // full diagonal (Laplacian part + potential)
  std::vector<double> potential;  // V(y_i)

  void matvec(std::span<const double> x, std::span<double> y) const;
  double rayleigh(std::span<const double> x) const;
  // Infinity-norm residual ||M x - k x||_inf for a max-normalized x.
  double residual_inf(std::span<const double> x, double k) const;
  // Gershgorin bounds on the spectrum.
  double gershgorin_upper() const;
  double gershgorin_lower() const;
  std::vector<double> dense() const;  // row-major n*n, tests and oracle only
};

struct EigenResult {
  double eigenvalue = 0.0;
  std::vector<double> eigenfunction;  // strictly positive, max entry = 1
  double residual = 0.0;              // ||M psi - k psi||_inf
  int iterations = 0;
};

CellOperator assemble(const CrossSection& cs, double beta, std::span<const double> potential);

// Principal (largest) eigenpair via shifted power iteration plus
// Rayleigh-shifted inverse iteration. Deterministic: all-ones start unless a
// warm-start vector is supplied. Throws SolverError on non-convergence.
EigenResult principal_eigenpair(const CellOperator& op,
                                std::span<const double> warm_start = {});

// Full spectrum, sorted ascending, via cyclic Jacobi rotations on the dense
// matrix. Verification oracle; requires n <= 512.
std::vector<double> dense_oracle_eigenvalues(const CellOperator& op);

}  // namespace kpp
