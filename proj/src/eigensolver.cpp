#include "kpp/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kpp/errors.hpp"

namespace kpp {

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Solves T x = b for tridiagonal T with constant off-diagonal `e` and diagonal
// `d`, Gaussian elimination with partial pivoting (LAPACK dgttrf layout).
// Returns false on an exactly singular pivot.
bool solve_tridiag(std::vector<double> d, double e, std::vector<double> b,
                   std::vector<double>& x) {
  const int n = static_cast<int>(d.size());
  std::vector<double> dl(std::max(n - 1, 0), e);
  std::vector<double> du(std::max(n - 1, 0), e);
  std::vector<double> du2(std::max(n - 2, 0), 0.0);
  std::vector<char> swapped(std::max(n - 1, 0), 0);

  for (int i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) return false;
      const double fact = dl[i] / d[i];
      d[i + 1] -= fact * du[i];
      dl[i] = fact;
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      const double tmp = d[i + 1];
      d[i + 1] = du[i] - fact * tmp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du2[i];
      }
      du[i] = tmp;
      dl[i] = fact;
      swapped[i] = 1;
    }
  }
  if (n > 0 && d[n - 1] == 0.0) return false;

  for (int i = 0; i + 1 < n; ++i) {
    if (swapped[i]) std::swap(b[i], b[i + 1]);
    b[i + 1] -= dl[i] * b[i];
  }
  x.assign(n, 0.0);
  x[n - 1] = b[n - 1] / d[n - 1];
  if (n > 1) x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
  for (int i = n - 3; i >= 0; --i) {
    x[i] = (b[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
  }
  return true;
}

// Solves (shift I - M) x = b. Periodic corners are folded in by one
// Sherman-Morrison rank-1 correction.
bool solve_shifted(const CellOperator& op, double shift, std::span<const double> b,
                   std::vector<double>& x) {
  const int n = op.n;
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = shift - op.diag[i];
  const double e = -op.coupling;

  if (op.bc == BoundaryKind::IntervalNeumann || n < 3) {
    return solve_tridiag(std::move(d), e, std::vector<double>(b.begin(), b.end()), x);
  }
  // T = T_mod + a u u^T with a = -coupling, u = e_0 + e_{n-1}.
  d[0] -= e;
  d[n - 1] -= e;
  std::vector<double> u(n, 0.0);
  u[0] = 1.0;
  u[n - 1] = 1.0;
  std::vector<double> y1, y2;
  if (!solve_tridiag(d, e, std::vector<double>(b.begin(), b.end()), y1)) return false;
  if (!solve_tridiag(std::move(d), e, std::move(u), y2)) return false;
  const double denom = 1.0 + e * (y2[0] + y2[n - 1]);
  if (denom == 0.0) return false;
  const double factor = e * (y1[0] + y1[n - 1]) / denom;
  x.resize(n);
  for (int i = 0; i < n; ++i) x[i] = y1[i] - factor * y2[i];
  return true;
}

}  // namespace

void CellOperator::matvec(std::span<const double> x, std::span<double> y) const {
  for (int i = 0; i < n; ++i) {
    double v = diag[i] * x[i];
    if (i > 0) v += coupling * x[i - 1];
    if (i + 1 < n) v += coupling * x[i + 1];
    y[i] = v;
  }
  if (bc == BoundaryKind::CirclePeriodic && n > 2) {
    y[0] += coupling * x[n - 1];
    y[n - 1] += coupling * x[0];
  }
}

double CellOperator::rayleigh(std::span<const double> x) const {
  std::vector<double> mx(n);
  matvec(x, mx);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    num += x[i] * mx[i];
    den += x[i] * x[i];
  }
  return num / den;
}

double CellOperator::residual_inf(std::span<const double> x, double k) const {
  std::vector<double> mx(n);
  matvec(x, mx);
  double r = 0.0;
  for (int i = 0; i < n; ++i) r = std::max(r, std::abs(mx[i] - k * x[i]));
  return r;
}

double CellOperator::gershgorin_upper() const {
  double up = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    const bool interior = (bc == BoundaryKind::CirclePeriodic) || (i > 0 && i + 1 < n);
    row = interior ? 2.0 * coupling : coupling;
    up = std::max(up, diag[i] + row);
  }
  return up;
}

double CellOperator::gershgorin_lower() const {
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const bool interior = (bc == BoundaryKind::CirclePeriodic) || (i > 0 && i + 1 < n);
    const double row = interior ? 2.0 * coupling : coupling;
    lo = std::min(lo, diag[i] - row);
  }
  return lo;
}

std::vector<double> CellOperator::dense() const {
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    a[i * n + i] = diag[i];
    if (i + 1 < n) {
      a[i * n + i + 1] = coupling;
      a[(i + 1) * n + i] = coupling;
    }
  }
  if (bc == BoundaryKind::CirclePeriodic && n > 2) {
    a[n - 1] = coupling;
    a[static_cast<std::size_t>(n - 1) * n] = coupling;
  }
  return a;
}

CellOperator assemble(const CrossSection& cs, double beta, std::span<const double> potential) {
  if (!(beta > 0.0)) {
    throw ValidationError("beta", "must be positive, got " + std::to_string(beta));
  }
  if (static_cast<int>(potential.size()) != cs.n) {
    throw ValidationError("potential", "expected " + std::to_string(cs.n) + " entries, got " +
                                           std::to_string(potential.size()));
  }
  CellOperator op;
  op.n = cs.n;
  op.h = cs.spacing();
  op.coupling = beta / (op.h * op.h);
  op.bc = cs.kind;
  op.potential.assign(potential.begin(), potential.end());
  op.diag.resize(cs.n);
  for (int i = 0; i < cs.n; ++i) {
    const bool interior = (cs.kind == BoundaryKind::CirclePeriodic) || (i > 0 && i + 1 < cs.n);
    op.diag[i] = potential[i] - (interior ? 2.0 : 1.0) * op.coupling;
  }
  return op;
}

EigenResult principal_eigenpair(const CellOperator& op, std::span<const double> warm_start) {
  const int n = op.n;
  const double lo = op.gershgorin_lower();
  const double up = op.gershgorin_upper();
  const double scale = std::max({std::abs(lo), std::abs(up), 1.0});
  const double tol = 1e-12 * scale;
  constexpr int kMaxPowerTotal = 50000;

  std::vector<double> v;
  if (!warm_start.empty() && static_cast<int>(warm_start.size()) == n) {
    v.assign(warm_start.begin(), warm_start.end());
  } else {
    v.assign(n, 1.0);
  }
  const double nv0 = norm2(v);
  for (double& x : v) x /= nv0;

  std::vector<double> w(n);
  int power_budget = warm_start.empty() ? 30 : 4;
  int total_power = 0;
  int total_inverse = 0;
  double mu = 0.0;

  auto run_power = [&](int count) {
    for (int it = 0; it < count; ++it) {
      op.matvec(v, w);
      for (int i = 0; i < n; ++i) w[i] -= lo * v[i];
      const double nw = norm2(w);
      if (nw == 0.0) break;
      for (int i = 0; i < n; ++i) v[i] = w[i] / nw;
      ++total_power;
    }
  };

  auto residual_of = [&](double k) {
    op.matvec(v, w);
    double rinf = 0.0, r2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = w[i] - k * v[i];
      rinf = std::max(rinf, std::abs(r));
      r2 += r * r;
    }
    return std::pair<double, double>(rinf / std::max(norm_inf(v), 1e-300), std::sqrt(r2));
  };

  bool converged = false;
  while (total_power < kMaxPowerTotal) {
    run_power(power_budget);
    mu = op.rayleigh(v);
    bool stalled = false;
    for (int it = 0; it < 50 && !stalled; ++it) {
      auto [rinf, r2] = residual_of(mu);
      if (rinf <= tol) {
        converged = true;
        break;
      }
      double shift = mu + std::max(r2, 1e-3 * tol);
      std::vector<double> x;
      int tries = 0;
      while (!solve_shifted(op, shift, v, x) && tries < 4) {
        shift += std::max(tol, 1e-14 * scale);
        ++tries;
      }
      if (tries >= 4) {
        stalled = true;
        break;
      }
      const double nx = norm2(x);
      if (!(nx > 0.0) || !std::isfinite(nx)) {
        stalled = true;
        break;
      }
      for (int i = 0; i < n; ++i) v[i] = x[i] / nx;
      ++total_inverse;
      mu = op.rayleigh(v);
    }
    if (converged) {
      // Reject convergence to a sign-changing (non-principal) eigenvector.
      double vmax = 0.0;
      int imax = 0;
      for (int i = 0; i < n; ++i) {
        if (std::abs(v[i]) > vmax) {
          vmax = std::abs(v[i]);
          imax = i;
        }
      }
      if (v[imax] < 0.0) {
        for (double& x : v) x = -x;
      }
      bool positive = true;
      for (double x : v) {
        if (x < -1e-6 * vmax) {
          positive = false;
          break;
        }
      }
      if (positive) break;
      converged = false;
    }
    power_budget *= 8;  // retry from a longer power phase
    v.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
  }

  if (!converged) {
    throw SolverError("principal eigenpair did not converge; last residual " +
                      std::to_string(residual_of(mu).first) + " (tol " + std::to_string(tol) +
                      ")");
  }

  EigenResult result;
  result.eigenvalue = mu;
  result.iterations = total_power + total_inverse;
  const double vmax = *std::max_element(v.begin(), v.end());
  result.eigenfunction.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = v[i] / vmax;
    // Underflow floor: the Perron vector is strictly positive, but entries far
    // from a concentrated peak fall below double precision.
    if (x < 1e-280) x = 1e-280;
    result.eigenfunction[i] = x;
  }
  result.residual = op.residual_inf(result.eigenfunction, mu);
  return result;
}

std::vector<double> dense_oracle_eigenvalues(const CellOperator& op) {
  const int n = op.n;
  if (n > 512) {
    throw ValidationError("n", "dense oracle capped at n = 512, got " + std::to_string(n));
  }
  std::vector<double> a = op.dense();
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

  double norm = 0.0;
  for (double x : a) norm += x * x;
  norm = std::sqrt(norm);
  const double target = 1e-13 * std::max(norm, 1.0);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += 2.0 * at(p, q) * at(p, q);
    }
    off = std::sqrt(off);
    if (off <= target) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double aip = at(i, p);
          const double aiq = at(i, q);
          at(i, p) = c * aip - s * aiq;
          at(i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = at(p, i);
          const double aqi = at(q, i);
          at(p, i) = c * api - s * aqi;
          at(q, i) = s * api + c * aqi;
        }
      }
    }
  }

  std::vector<double> eigs(n);
  for (int i = 0; i < n; ++i) eigs[i] = at(i, i);
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

}  // namespace kpp
