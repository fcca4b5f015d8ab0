#pragma once

#include <vector>

#include "acshock/relent.hpp"

namespace acshock {

/// Continuous-interface entropy dissipation
///   D_cont(u) = -q_tilde(u) + lambda_1(u) eta_tilde(u).
double d_cont(const ShockContext& ctx, const Vec& u);

/// Rankine-Hugoniot interface dissipation
///   D_RH(u-, u+, s) = [q(u+;u_R) - s eta(u+|u_R)]
///                     - (1 + C s0) [q(u-;u_L) - s eta(u-|u_L)].
/// The triple is checked against RH to `rh_tol_rel * (1 + |f(u-)|)`;
/// InconsistentShockError otherwise.
double d_rh(const ShockContext& ctx, const Vec& u_minus, const Vec& u_plus,
            double sigma, double rh_tol_rel = 1e-7);

/// The worst-case 1-shock from u: the unique s* with
/// eta(u | S^1_u(s*)) = -eta_tilde(u); monotone g makes bracketing safe.
struct MaximalShock {
  Vec u;
  Vec u_plus;
  double sigma = 0;
  double s_star = 0;
  ShockCurve curve;  // traced 1-shock curve from u (kept for s-scans)
};

/// Requires u in Pi (eta_tilde(u) < 0); throws std::invalid_argument otherwise
/// and NotFoundError when the curve exits the working box before g changes sign.
MaximalShock maximal_shock(const ShockContext& ctx, const Vec& u);

/// D_max(u) = D_RH(u, u+, sigma+-) at the maximal shock.
double d_max(const ShockContext& ctx, const Vec& u);
double d_max(const ShockContext& ctx, const MaximalShock& ms);

/// Dense s-scan of D_RH(u, S(s), sigma(s)) along the maximal-shock curve;
/// returns the scan maximum (cross-check of maximality of s*).
double d_max_scan(const ShockContext& ctx, const MaximalShock& ms, int n_points);

/// Analytic gradient of D_max via the maximal shock:
///   [grad(eta)(u+) - grad(eta)(u_R) - (1+Cs0)(grad(eta)(u) - grad(eta)(u_L))]
///     (f'(u) - sigma I).
Vec dmax_gradient_analytic(const ShockContext& ctx, const MaximalShock& ms);

/// Relative difference between the analytic gradient and central finite
/// differences of d_max. fd step = rel_step * (1 + |u_i|) per component.
double dmax_gradient_relerr(const ShockContext& ctx, const Vec& u,
                            double rel_step = 1e-5);

// ---------------------------------------------------------------------------

struct DcontMaxResult {
  Vec u_star;
  double value = 0;
  double eta_residual = 0;      // |eta_tilde(u*)|
  double angle_nu_l1 = 0;       // angle(nu(u*), l^1(u*)) [rad]
  double r1_dot_nu = 0;         // must be > 0 (r_1 outward)
  bool unique_ok = true;        // multistart agreement within 1e-6 diam
  double multistart_spread = 0;
  int n_starts = 0;
};

/// Locates the unique maximum u* of D_cont on Pi: multi-start Nelder-Mead on
/// an angular chart of the boundary, polished by the fixed-point iteration
/// p <- support_point(l^1(p)) coming from the characterization
/// nu(u*) = l^1(u*), r_1(u*) outward.
DcontMaxResult find_dcont_max(const ShockContext& ctx, Rng& rng, int n_starts = 8);

/// Intersection of the base shock curve with the Pi boundary: the first s > 0
/// with eta_tilde(S(s)) = 0. Returns (s0_exit, u0).
std::pair<double, Vec> curve_pi_exit(const ShockContext& ctx);

// ---------------------------------------------------------------------------

struct SampleRow {
  Vec u;
  double eta_tilde = 0;
  double dcont = 0;
  double dmax = 0;      // NaN when the state is not interior to Pi
  double s_star = 0;
};

struct NegativityReport {
  std::vector<SampleRow> rows;  // populated when SweepOptions.collect_samples
  int n_samples = 0;
  double max_dcont = 0;
  Vec argmax_dcont;
  double max_dmax = 0;
  Vec argmax_dmax;
  double dmax_at_uleft = 0;
  double argmax_dmax_dist_uleft = 0;  // |argmax - u_L| / s0
  double tol_zero = 0;                // 1e-12 s0^2
  int n_dcont_positive = 0;
  int n_dmax_positive = 0;            // beyond tol_zero
  int n_maximality_violations = 0;
  int n_dmax_failures = 0;            // truncated maximal-shock solves
  double fitted_K = 0;                // -max_dcont / s0^3
  double dcont_at_u0 = 0;             // shock-curve boundary witness
  bool pass_dcont = false;
  bool pass_dmax = false;
  bool pass_argmax_near_uleft = false;
  bool pass_maximality = false;
  bool pass() const {
    return pass_dcont && pass_dmax && pass_argmax_near_uleft && pass_maximality;
  }
};

struct SweepOptions {
  int scan_points = 200;      // s-scan resolution for the maximality check
  double boundary_pull = 0.995;
  double interior_fraction = 0.7;
  double boundary_fraction = 0.15;  // remainder goes to the curve segment
  bool collect_samples = false;     // keep per-sample rows for CSV dumps
  int max_rows = 20000;
};

/// Samples Pi (rejection + boundary rays + the u_L -> u0 curve segment) and
/// audits Propositions: max D_cont < 0, max D_max <= tol_zero, argmax of
/// D_max at u_L, maximality of s* against the scan.
NegativityReport sweep_negativity(const ShockContext& ctx, int n_samples, Rng& rng,
                                  const SweepOptions& opts = {});

// ---------------------------------------------------------------------------

struct ScalingCell {
  double C = 0, s0 = 0;
  double max_dcont = 0;
  double diam_times_C = 0;
  double min_grad_over_s0 = 0;
  double ustar_u0_scaled = 0;   // |u* - u0| C / s0
  double hessian_max_eig = 0;   // max eigenvalue of FD Hessian of d_max at u_L
  bool hessian_negdef = false;
  bool sweep_pass = false;
  std::string error;
};

struct ScalingFit {
  std::vector<ScalingCell> cells;
  std::vector<double> slopes;   // one log-log slope per C across the s0 list
  double diam_ratio = 0;        // max/min of diam*C over cells
  double ustar_ratio = 0;       // max/min of |u*-u0| C/s0 over cells
};

ScalingFit scaling_study(const SystemDescriptor& sys, const Vec& base_state,
                         int family, const std::vector<double>& C_list,
                         const std::vector<double>& s0_list, int n_samples_cell,
                         Rng& rng);

}  // namespace acshock
