#include "acshock/fv.hpp"

#include <algorithm>
#include <cmath>

namespace acshock {

FVField make_grid(double x_min, double x_max, int ncells, double cfl,
                  const std::string& scheme, int state_dim) {
  FVField f;
  f.x_min = x_min;
  f.x_max = x_max;
  f.ncells = ncells;
  f.dx = (x_max - x_min) / ncells;
  f.cfl = cfl;
  f.scheme = scheme;
  f.u.assign(ncells, Vec(state_dim));
  return f;
}

namespace {

inline double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

}  // namespace

FVStepResult fv_step(const SystemDescriptor& sys, FVField& field, double dt,
                     double tol_entropy) {
  const int n = field.ncells;
  const int dim = sys.n;
  const bool muscl = field.scheme == "muscl";

  double max_speed = 0;
  for (const auto& u : field.u) max_speed = std::max(max_speed, max_abs_eigen(sys, u));
  if (dt <= 0.0) dt = field.cfl * field.dx / std::max(max_speed, 1e-300);

  // Interface states (zero-gradient ghosts). Interface i sits between cells
  // i-1 and i, for i = 0..n.
  auto cell = [&](int j) -> const Vec& {
    return field.u[static_cast<size_t>(std::clamp(j, 0, n - 1))];
  };

  std::vector<Vec> slope;
  if (muscl) {
    slope.assign(n, Vec(dim));
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < dim; ++c)
        slope[j][c] = minmod(cell(j)[c] - cell(j - 1)[c], cell(j + 1)[c] - cell(j)[c]);
  }
  auto left_of_iface = [&](int i) {
    const int j = i - 1;
    if (!muscl || j < 0 || j >= n) return cell(j);
    Vec v = cell(j);
    v += 0.5 * slope[j];
    return v;
  };
  auto right_of_iface = [&](int i) {
    const int j = i;
    if (!muscl || j < 0 || j >= n) return cell(j);
    Vec v = cell(j);
    v -= 0.5 * slope[j];
    return v;
  };

  std::vector<Vec> fluxes(n + 1, Vec(dim));
  std::vector<double> qfluxes(n + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    const Vec ul = left_of_iface(i);
    const Vec ur = right_of_iface(i);
    if (!sys.admissible(ul) || !sys.admissible(ur))
      throw BlowUpError("fv_step: reconstructed interface state left the admissible region");
    const double a = std::max(max_abs_eigen(sys, ul), max_abs_eigen(sys, ur));
    fluxes[i] = 0.5 * (sys.flux(ul) + sys.flux(ur)) - (0.5 * a) * (ur - ul);
    qfluxes[i] = 0.5 * (sys.entropy_flux(ul) + sys.entropy_flux(ur)) -
                 0.5 * a * (sys.entropy(ur) - sys.entropy(ul));
  }

  FVStepResult result;
  result.dt = dt;
  const double lam = dt / field.dx;
  double eta_scale = 1.0;

  double total_before = 0, total_after = 0;
  std::vector<double> eta_old(n);
  for (int j = 0; j < n; ++j) {
    eta_old[j] = sys.entropy(field.u[j]);
    total_before += eta_old[j];
    eta_scale = std::max(eta_scale, std::abs(eta_old[j]));
  }

  for (int j = 0; j < n; ++j) {
    field.u[j] -= lam * (fluxes[j + 1] - fluxes[j]);
    if (!all_finite(field.u[j]) || !sys.admissible(field.u[j]))
      throw BlowUpError("fv_step: cell state left the admissible region");
    const double eta_new = sys.entropy(field.u[j]);
    total_after += eta_new;
    const double residual = eta_new - eta_old[j] + lam * (qfluxes[j + 1] - qfluxes[j]);
    result.max_entropy_residual = std::max(result.max_entropy_residual, residual);
    if (residual > tol_entropy * eta_scale) ++result.entropy_flags;
  }
  result.total_entropy_change =
      (total_after - total_before) * field.dx + dt * (qfluxes[n] - qfluxes[0]);
  field.time += dt;
  return result;
}

FVField make_ic(const SystemDescriptor& sys, const ICParams& params, double x_min,
                double x_max, int ncells, double cfl, const std::string& scheme,
                Rng& rng) {
  FVField f = make_grid(x_min, x_max, ncells, cfl, scheme, sys.n);

  if (params.kind == "constant") {
    for (auto& u : f.u) u = params.left_state;
    return f;
  }

  if (params.kind == "exact-shock" || params.kind == "riemann" ||
      params.kind == "perturbed-shock") {
    for (int j = 0; j < ncells; ++j) {
      const double a = x_min + j * f.dx, b = a + f.dx;
      if (b <= params.x0) {
        f.u[j] = params.left_state;
      } else if (a >= params.x0) {
        f.u[j] = params.right_state;
      } else {
        const double wl = (params.x0 - a) / f.dx;
        f.u[j] = wl * params.left_state + (1.0 - wl) * params.right_state;
      }
    }
    if (params.kind == "perturbed-shock" && params.amplitude > 0) {
      const double lo = params.support_lo, hi = params.support_hi;
      std::vector<Vec> pert(ncells, Vec(sys.n));
      for (int m = 0; m < params.n_modes; ++m) {
        const double mu = rng.uniform(lo + 0.15 * (hi - lo), hi - 0.15 * (hi - lo));
        const double w = rng.uniform(0.08, 0.2) * (hi - lo);
        const Vec dir = rng.direction(sys.n);
        const double amp = rng.uniform(0.5, 1.0);
        for (int j = 0; j < ncells; ++j) {
          const double x = f.x_center(j);
          if (x < lo || x > hi) continue;
          const double bump = amp * std::exp(-((x - mu) / w) * ((x - mu) / w));
          // taper to zero at the support edges
          const double taper =
              std::pow(std::sin(M_PI * (x - lo) / (hi - lo)), 2.0);
          pert[j] += (bump * taper) * dir;
        }
      }
      double l2 = 0;
      for (const auto& p : pert) l2 += norm2(p) * f.dx;
      l2 = std::sqrt(l2);
      if (l2 > 0) {
        const double scale = params.amplitude / l2;
        for (int j = 0; j < ncells; ++j) {
          f.u[j] += scale * pert[j];
          if (!sys.admissible(f.u[j]) || !sys.in_working(f.u[j]))
            throw DomainError("make_ic: perturbation left the working region");
        }
      }
    }
    return f;
  }
  throw ConfigError("make_ic: unknown kind '" + params.kind + "'");
}

}  // namespace acshock
