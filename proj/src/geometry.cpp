#include "kpp/geometry.hpp"

#include <string>

#include "kpp/errors.hpp"

namespace kpp {

std::vector<double> CrossSection::nodes() const {
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) y[i] = node(i);
  return y;
}

CrossSection make_grid(BoundaryKind kind, double length, int n) {
  if (!(length > 0.0)) {
    throw ValidationError("length", "must be positive, got " + std::to_string(length));
  }
  if (n < 4) {
    throw ValidationError("n", "must be at least 4, got " + std::to_string(n));
  }
  return CrossSection{kind, length, n};
}

double cell_integrate(const CrossSection& cs, std::span<const double> samples) {
  if (static_cast<int>(samples.size()) != cs.n) {
    throw ValidationError("samples", "expected " + std::to_string(cs.n) + " entries, got " +
                                         std::to_string(samples.size()));
  }
  double sum = 0.0;
  for (double s : samples) sum += s;
  return cs.spacing() * sum;
}

}  // namespace kpp
