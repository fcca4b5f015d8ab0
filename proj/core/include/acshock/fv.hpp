#pragma once

#include <string>
#include <vector>

#include "acshock/system.hpp"

namespace acshock {

/// 1-D grid of cell-averaged states under an entropic finite-volume scheme.
struct FVField {
  double x_min = 0, x_max = 1, dx = 0;
  int ncells = 0;
  std::vector<Vec> u;
  double time = 0;
  double cfl = 0.45;
  std::string scheme = "rusanov";  // "rusanov" | "muscl"

  double x_center(int j) const { return x_min + (j + 0.5) * dx; }
  int cell_of(double x) const {
    const int j = static_cast<int>(std::floor((x - x_min) / dx));
    return std::clamp(j, 0, ncells - 1);
  }
};

FVField make_grid(double x_min, double x_max, int ncells, double cfl,
                  const std::string& scheme, int state_dim);

struct FVStepResult {
  double dt = 0;
  double max_entropy_residual = 0;  // max over cells of the per-step residual
  int entropy_flags = 0;            // cells with residual > tol_entropy
  double total_entropy_change = 0;  // interior change net of boundary fluxes
};

/// One forward-Euler step with the local Lax-Friedrichs (Rusanov) flux, or its
/// minmod-limited second-order variant; zero-gradient boundaries. dt = 0 picks
/// the CFL step. The numerical entropy flux is recorded and each cell's
/// entropy residual checked against tol_entropy. Admissibility loss raises
/// BlowUpError; the vacuum is never clamped over.
FVStepResult fv_step(const SystemDescriptor& sys, FVField& field, double dt = 0.0,
                     double tol_entropy = 1e-12);

struct ICParams {
  std::string kind;  // "constant" | "exact-shock" | "perturbed-shock" | "riemann"
  Vec left_state, right_state;
  double x0 = 0;
  double amplitude = 0;      // target L2 norm of the perturbation
  double support_lo = 0, support_hi = 0;
  int n_modes = 3;
};

/// Deterministic initial data; perturbations are drawn from `rng` (config
/// seed) and rescaled so the discrete L2 norm matches `amplitude`.
FVField make_ic(const SystemDescriptor& sys, const ICParams& params, double x_min,
                double x_max, int ncells, double cfl, const std::string& scheme,
                Rng& rng);

}  // namespace acshock
