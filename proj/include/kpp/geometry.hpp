#pragma once

#include <span>
#include <vector>

namespace kpp {

enum class BoundaryKind {
  IntervalNeumann,  // bounded section, no-flux walls
  CirclePeriodic,   // periodic section of period `length`
};

// One periodicity cell of the transverse section, discretized with n
// cell-centered unknowns y_i = (i + 1/2) h, h = length / n.
struct CrossSection {
  BoundaryKind kind = BoundaryKind::CirclePeriodic;
  double length = 1.0;
  int n = 0;

  double spacing() const { return length / n; }
  double node(int i) const { return (i + 0.5) * spacing(); }
  std::vector<double> nodes() const;
};

CrossSection make_grid(BoundaryKind kind, double length, int n);

// Midpoint quadrature h * sum(samples) over the cell.
double cell_integrate(const CrossSection& cs, std::span<const double> samples);

}  // namespace kpp
