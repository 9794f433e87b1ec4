#include "kpp/frontsim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kpp/errors.hpp"

namespace kpp {

namespace {

struct Crossing {
  bool found = false;
  double x = 0.0;
};

Crossing find_crossing(const std::vector<double>& profile, double hx, double level) {
  // The y-averaged profile rises from ~0 (left) to ~1 (right).
  const int nx = static_cast<int>(profile.size());
  int i = nx - 1;
  while (i >= 0 && profile[i] > level) --i;
  if (i < 0 || i == nx - 1) return {};
  const double u0 = profile[i];
  const double u1 = profile[i + 1];
  const double frac = (u1 > u0) ? (level - u0) / (u1 - u0) : 0.5;
  return {true, (i + 0.5) * hx + frac * hx};
}

}  // namespace

FrontSimResult simulate_front(const ProblemSpec& spec, const SimConfig& sim) {
  validate(spec);
  if (!(sim.cfl_safety > 0.0) || !(sim.cfl_safety < 1.0)) {
    throw ValidationError("cfl_safety", "must lie in (0,1)");
  }
  if (!(sim.level > 0.0) || !(sim.level < 1.0)) {
    throw ValidationError("level", "must lie in (0,1)");
  }
  if (!(sim.fit_window > 0.0) || sim.fit_window > 1.0) {
    throw ValidationError("fit_window", "must lie in (0,1]");
  }
  if (sim.nx < 16) {
    throw ValidationError("nx", "must be at least 16");
  }
  if (!(sim.t_end > 0.0)) {
    throw ValidationError("t_end", "must be positive");
  }
  const double alpha = spec.diffusion.axial;
  const double beta = spec.diffusion.transverse;
  const double fp0 = spec.reaction.growth_rate;
  const double min_strip = 20.0 * std::sqrt(alpha / fp0);  // ~20 front widths
  if (sim.strip_length < min_strip) {
    throw ValidationError("strip_length", "must be at least " + std::to_string(min_strip));
  }
  const int ny = spec.cross_section.n;
  if (static_cast<long long>(sim.nx) * ny > 4'000'000LL) {
    throw ValidationError("nx", "grid exceeds the 4e6-cell cap");
  }

  const int nx = sim.nx;
  const double hx = sim.strip_length / nx;
  const double hy = spec.cross_section.spacing();
  const double inv_hx2 = 1.0 / (hx * hx);
  const double inv_hy2 = 1.0 / (hy * hy);
  const double inv_hx = 1.0 / hx;

  double qabs = 0.0;
  for (double q : spec.flow.samples) qabs = std::max(qabs, std::abs(q));
  const double rate = 2.0 * alpha * inv_hx2 + 2.0 * beta * inv_hy2 + qabs * inv_hx;
  double dt = sim.cfl_safety / rate;
  const long long steps = static_cast<long long>(std::ceil(sim.t_end / dt));
  dt = sim.t_end / steps;

  // Transverse neighbor indices; the wall stencil mirrors (no-flux).
  std::vector<int> up(ny), dn(ny);
  for (int j = 0; j < ny; ++j) {
    if (spec.cross_section.kind == BoundaryKind::CirclePeriodic) {
      up[j] = (j + 1) % ny;
      dn[j] = (j + ny - 1) % ny;
    } else {
      up[j] = (j + 1 < ny) ? j + 1 : j;
      dn[j] = (j > 0) ? j - 1 : j;
    }
  }

  std::vector<double> u(static_cast<std::size_t>(nx) * ny, 0.0);
  std::vector<double> unew(u.size());
  const double x_step = 0.75 * sim.strip_length;
  for (int ix = 0; ix < nx; ++ix) {
    if ((ix + 0.5) * hx >= x_step) {
      std::fill_n(u.begin() + static_cast<std::size_t>(ix) * ny, ny, 1.0);
    }
  }

  const bool logistic = spec.reaction.logistic;
  const double mu = spec.reaction.mu;
  const auto& poly = spec.reaction.poly;
  auto f_of = [&](double v) {
    if (logistic) return mu * v * (1.0 - v);
    double r = 0.0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) r = r * v + *it;
    return r;
  };

  FrontSimResult result;
  result.dt_used = dt;
  double min_u = 0.0, max_u = 1.0;

  const long long stride = std::max<long long>(1, steps / 400);
  std::vector<double> profile(nx);

  auto sample = [&](long long step) {
    for (int ix = 0; ix < nx; ++ix) {
      double s = 0.0;
      const double* row = u.data() + static_cast<std::size_t>(ix) * ny;
      for (int j = 0; j < ny; ++j) s += row[j];
      profile[ix] = s / ny;
    }
    const Crossing c = find_crossing(profile, hx, sim.level);
    if (!c.found || c.x < 0.05 * sim.strip_length || c.x > 0.97 * sim.strip_length) {
      throw DomainOverrunError("front reached the strip boundary at t = " +
                               std::to_string(step * dt) + "; enlarge the strip");
    }
    result.positions.emplace_back(step * dt, c.x);
    double mass = 0.0;
    for (double v : u) mass += v;
    result.masses.push_back(mass * hx * hy);
  };

  sample(0);
  for (long long step = 1; step <= steps; ++step) {
    for (int ix = 0; ix < nx; ++ix) {
      const std::size_t off = static_cast<std::size_t>(ix) * ny;
      const double* row = u.data() + off;
      const double* rowm = u.data() + static_cast<std::size_t>(ix > 0 ? ix - 1 : ix) * ny;
      const double* rowp = u.data() + static_cast<std::size_t>(ix + 1 < nx ? ix + 1 : ix) * ny;
      double* out = unew.data() + off;
      for (int j = 0; j < ny; ++j) {
        const double uc = row[j];
        const double lapx = (rowm[j] - 2.0 * uc + rowp[j]) * inv_hx2;
        const double lapy = (row[dn[j]] - 2.0 * uc + row[up[j]]) * inv_hy2;
        const double q = spec.flow.samples[j];
        const double adv = q > 0.0 ? q * (rowp[j] - uc) * inv_hx
                                   : q * (uc - rowm[j]) * inv_hx;
        const double v = uc + dt * (alpha * lapx + beta * lapy + adv + f_of(uc));
        out[j] = v;
        min_u = std::min(min_u, v);
        max_u = std::max(max_u, v);
      }
    }
    u.swap(unew);
    if (step % stride == 0 || step == steps) sample(step);
  }
  result.min_u = min_u;
  result.max_u = max_u;

  // Least-squares slope of crossing position vs time over the fit window.
  const double t_fit_start = sim.t_end * (1.0 - sim.fit_window);
  double st = 0.0, sx = 0.0, stt = 0.0, stx = 0.0;
  int m = 0;
  for (const auto& [t, x] : result.positions) {
    if (t < t_fit_start) continue;
    st += t;
    sx += x;
    stt += t * t;
    stx += t * x;
    ++m;
  }
  if (m < 3) {
    throw SolverError("too few samples in the fit window");
  }
  const double denom = m * stt - st * st;
  const double slope = (m * stx - st * sx) / denom;
  const double intercept = (sx - slope * st) / m;
  result.measured_speed = std::abs(slope);

  double ss = 0.0;
  double t_min = sim.t_end, t_max = 0.0;
  for (const auto& [t, x] : result.positions) {
    if (t < t_fit_start) continue;
    const double r = x - (intercept + slope * t);
    ss += r * r;
    t_min = std::min(t_min, t);
    t_max = std::max(t_max, t);
  }
  result.fit_residual = std::sqrt(ss / m) / std::max(t_max - t_min, 1e-300);

  // Report positions as forward displacement of the invading front.
  const double x0 = result.positions.front().second;
  for (auto& [t, x] : result.positions) x = x0 - x;
  return result;
}

}  // namespace kpp
