#pragma once

#include <optional>

#include "acshock/hugoniot.hpp"
#include "acshock/system.hpp"

namespace acshock {

/// eta(a|b) = eta(a) - eta(b) - grad(eta)(b).(a-b); >= 0, zero iff a == b.
double rel_entropy(const SystemDescriptor& sys, const Vec& a, const Vec& b);

/// q(a;b) = q(a) - q(b) - grad(eta)(b).(f(a) - f(b)).
double rel_entropy_flux(const SystemDescriptor& sys, const Vec& a, const Vec& b);

// ---------------------------------------------------------------------------

/// A fixed entropic extremal shock with weights. n-shocks are reduced to
/// 1-shocks of the mirror system at construction, so `sys` below is the
/// reduced system and the shock is always a 1-shock of it. Weight convention
/// a1/a2 = 1 + C s0 with a2 = 1.
struct ShockContext {
  SystemDescriptor sys;     // reduced (possibly mirrored) system
  Vec u_left, u_right;
  double sigma_lr = 0;
  double s0 = 0;            // |u_left - u_right|
  double C = 0;
  double weight_ratio = 1;  // a1/a2 = 1 + C s0
  int family_orig = 1;
  bool mirrored = false;
  Vec basepoint;            // working ball center d
  double eps_d = 0;         // working ball radius (0: use working box only)
  ShockCurve base_curve;    // 1-shock curve from u_left, extent >= s0
  double pair_curve_residual = 0;  // |S(s0) - u_right| when built from a pair

  double a1() const { return weight_ratio; }
  double a2() const { return 1.0; }
};

/// Build a context from the traced shock curve: u_right = S^1_{u_left}(s0).
ShockContext make_shock_context(const SystemDescriptor& sys, int family,
                                const Vec& base_state, double s0, double C,
                                double curve_extent_factor = 3.0);

/// Same, but the weight ratio is given directly (C = (ratio-1)/s0). ratio = 1
/// reproduces the unweighted L2 setting used as the negative control.
ShockContext make_shock_context_ratio(const SystemDescriptor& sys, int family,
                                      const Vec& base_state, double s0, double ratio,
                                      double curve_extent_factor = 3.0);

/// Build from an explicit admissible pair (checked against RH and Liu; the
/// traced curve's miss distance at s0 is recorded, not asserted to vanish).
ShockContext make_shock_context_from_pair(const SystemDescriptor& sys, int family,
                                          const Vec& u_minus, const Vec& u_plus,
                                          double C);

/// Admissible window for 1-shock weights: 1 + C1 s0 / 2 <= ratio <= 1 + 2 C1 s0.
bool weight_window_ok(double C1, double s0, double ratio);

// ---------------------------------------------------------------------------
// Weighted functionals and the geometry of Pi = { eta_tilde < 0 }

double tilde_eta(const ShockContext& ctx, const Vec& u);
double tilde_q(const ShockContext& ctx, const Vec& u);
bool in_pi(const ShockContext& ctx, const Vec& u);

/// Analytic gradient:
///   grad(eta_tilde)(u) = C s0 (grad eta(u) - grad eta(u_L))
///                        + (grad eta(u_R) - grad eta(u_L)).
Vec tilde_eta_gradient(const ShockContext& ctx, const Vec& u);
/// Hessian C s0 grad^2(eta)(u).
Mat tilde_eta_hessian(const ShockContext& ctx, const Vec& u);

double boundary_tolerance(const ShockContext& ctx);

/// Root of eta_tilde along the ray u_in + t * dir, t > 0 (bisection bracket by
/// doubling, then Brent and two Newton polish steps on the ray parameter).
/// Throws NotFoundError when no sign change occurs inside the working box.
/// With refine_nearest, follows up with a Lagrange-Newton solve of the
/// nearest-point conditions (u_in - u) parallel to nu(u), eta_tilde(u) = 0.
Vec boundary_project(const ShockContext& ctx, const Vec& u_in, const Vec& dir,
                     bool refine_nearest = false);

/// Distance along dir from a point inside Pi to the boundary.
double boundary_ray_distance(const ShockContext& ctx, const Vec& from, const Vec& dir);

/// Outward unit normal nu = grad(eta_tilde)/|grad(eta_tilde)| at a boundary
/// point (|eta_tilde| below boundary tolerance required).
Vec pi_normal(const ShockContext& ctx, const Vec& u_bar);

/// Support point of Pi in direction v: the boundary point with nu(u) = v,
/// solved by Lagrange-Newton on (grad eta_tilde(u) = kappa v, eta_tilde(u) = 0).
Vec pi_support_point(const ShockContext& ctx, const Vec& v, const Vec& start);

/// Crude diameter estimate: ray casting from u_left in deterministic + random
/// directions. Returns boundary points through `out_boundary` when non-null.
double pi_diameter_estimate(const ShockContext& ctx, int n_rays, Rng& rng,
                            std::vector<Vec>* out_boundary = nullptr);

/// Approximate distance to the boundary from inside: min ray-crossing distance
/// over 64 (n = 2) / 256 (n = 3) directions.
double pi_boundary_distance(const ShockContext& ctx, const Vec& u, Rng& rng);

/// Rejection sampling of Pi inside the box u_left +- 2 * diam estimate.
std::vector<Vec> sample_pi(const ShockContext& ctx, int count, Rng& rng,
                           int max_tries_per_sample = 4000);

struct PiDiagnostics {
  double diameter = 0;
  double min_grad_norm = 0;       // min |grad eta_tilde| over sampled boundary
  double min_grad_over_s0 = 0;
  double max_eta_over_dist = 0;   // max of -eta_tilde(u) / (s0 d(u, bd Pi))
  double normal_lipschitz_lo = 0; // min/max of |nu(u)-nu(w)| / (C |u-w|)
  double normal_lipschitz_hi = 0;
  double cstar_estimate = 0;
  int n_boundary = 0;
  int n_interior = 0;
  bool partial = false;           // some rays exited the working box
};

PiDiagnostics pi_diagnostics(const ShockContext& ctx, int n_samples, Rng& rng);

struct CstarEstimate {
  double value = 0;   // 2 * max |q_tilde| / |eta_tilde| over qualifying samples
  int n_contributing = 0;
  bool empty = false;
};

/// The constant C* controlling q_tilde by eta_tilde: samples u outside Pi
/// with q_tilde(u) <= 0 and maximizes
/// |q_tilde| / |eta_tilde|; factor-2 margin applied.
CstarEstimate estimate_cstar(const ShockContext& ctx, int n_samples, Rng& rng);

}  // namespace acshock
