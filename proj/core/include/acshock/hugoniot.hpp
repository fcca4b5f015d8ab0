#pragma once

#include <string>
#include <vector>

#include "acshock/system.hpp"

namespace acshock {

struct ShockPoint {
  double s = 0;   // chord parameter |S - u0|
  Vec S;
  double sigma = 0;
};

struct TraceOptions {
  double ds = 0.0;               // 0 -> s_max / 400
  double newton_tol_rel = 1e-13; // residual tolerance, scaled by 1 + |f(u0)|
  int max_newton = 25;
  int max_halvings = 6;          // step halving down to ds / 64
  bool stop_at_box_exit = true;
};

/// One branch of the Hugoniot locus through `base`, Liu-admissible for its
/// family: lambda_i(S(s)) < sigma(s) < lambda_i(base) for s > 0. Parametrized
/// by s = |S - base|. Nodes are exact RH solutions; evaluation between nodes
/// is cubic interpolation followed by Newton re-projection onto the RH
/// manifold at fixed s.
class ShockCurve {
 public:
  Vec base;
  int family = 1;
  std::vector<ShockPoint> nodes;
  bool complete = false;          // reached the requested s_max
  std::string stop_reason;        // "reached_smax" | "box_exit" | "newton_failure"

  double extent() const { return nodes.back().s; }

  // Raw spline evaluations (no re-projection).
  Vec state_interp(double s) const;
  double sigma_interp(double s) const;
  double sigma_dot(double s) const;

  void build_interpolant();

 private:
  std::array<CubicSpline, kMaxDim> comp_;
  CubicSpline sigma_spline_;
  bool built_ = false;
};

/// Pseudo-arclength continuation of the family-i shock curve from u0 up to
/// chord parameter s_max. Unknowns (S, sigma) solve the n Rankine-Hugoniot
/// equations plus |S - S_prev| = step. The first step is seeded along the
/// oriented eigenvector with sigma ~ lambda_i(u0) + (step/2) grad(lambda_i).dir.
/// Stops at s_max or working-box exit; Newton failure after halving to ds/64
/// leaves a partial curve with stop_reason = "newton_failure".
ShockCurve trace_shock_curve(const SystemDescriptor& sys, const Vec& u0, int family,
                             double s_max, double ds = 0.0,
                             const TraceOptions& opts = {});

/// Interpolated point re-projected onto the RH manifold at fixed s.
/// Throws RangeError outside [0, extent].
ShockPoint shock_at(const SystemDescriptor& sys, const ShockCurve& curve, double s);

struct AsymptoticsReport {
  double slope_sigma = 0;   // |sigma - (lambda(u0)+lambda(S))/2| ~ s^slope
  bool sigma_vacuous = false;
  double slope_state = 0;   // |S - u0 - s dir| ~ s^slope
  bool state_vacuous = false;
  double s_lo = 1e-4, s_hi = 1e-2;
};

/// Log-log order fit of the shock-curve expansions over s in [1e-4, 1e-2];
/// signals at the rounding floor are reported as vacuous.
AsymptoticsReport check_asymptotics(const SystemDescriptor& sys, const Vec& u0,
                                    int family);

/// Absolute residual of the shock-curve entropy dissipation identity
///   q(S(s);v) - sigma(s) eta(S(s)|v)
///     = q(u0;v) - sigma(s) eta(u0|v) + int_0^s sigma_dot(t) eta(u0|S(t)) dt
/// with adaptive Simpson quadrature on the spline.
double lax_identity_residual(const SystemDescriptor& sys, const ShockCurve& curve,
                             const Vec& v, double s, double quad_tol = 1e-11);

/// RH residual |f(S) - f(u0) - sigma (S - u0)| at a point.
double rh_residual(const SystemDescriptor& sys, const Vec& u0, const Vec& S,
                   double sigma);

/// Min margins of the Liu inequalities over curve nodes with s > s_skip:
/// first = min(sigma - lambda_i(S)), second = min(lambda_i(u0) - sigma).
std::pair<double, double> liu_margins(const SystemDescriptor& sys,
                                      const ShockCurve& curve, double s_skip);

}  // namespace acshock
