#include "acshock/hugoniot.hpp"

#include <algorithm>
#include <cmath>

#include "acshock/relent.hpp"

namespace acshock {

double rh_residual(const SystemDescriptor& sys, const Vec& u0, const Vec& S,
                   double sigma) {
  return norm(sys.flux(S) - sys.flux(u0) - sigma * (S - u0));
}

void ShockCurve::build_interpolant() {
  std::vector<double> ss(nodes.size());
  for (size_t k = 0; k < nodes.size(); ++k) ss[k] = nodes[k].s;
  const int n = base.n;
  for (int i = 0; i < n; ++i) {
    std::vector<double> yi(nodes.size());
    for (size_t k = 0; k < nodes.size(); ++k) yi[k] = nodes[k].S[i];
    comp_[i] = CubicSpline(ss, yi);
  }
  std::vector<double> sg(nodes.size());
  for (size_t k = 0; k < nodes.size(); ++k) sg[k] = nodes[k].sigma;
  sigma_spline_ = CubicSpline(std::move(ss), std::move(sg));
  built_ = true;
}

Vec ShockCurve::state_interp(double s) const {
  Vec S(base.n);
  for (int i = 0; i < base.n; ++i) S[i] = comp_[i].eval(s);
  return S;
}

double ShockCurve::sigma_interp(double s) const { return sigma_spline_.eval(s); }
double ShockCurve::sigma_dot(double s) const { return sigma_spline_.deriv(s); }

namespace {

// Newton solve of the augmented system
//   f(S) - f(u0) - sigma (S - u0) = 0
//   |S - anchor| - step            = 0
// for (S, sigma). Residual scale: 1 + |f(u0)|.
bool newton_rh(const SystemDescriptor& sys, const Vec& u0, const Vec& f0,
               const Vec& anchor, double step, Vec& S, double& sigma,
               double tol, int max_iter) {
  const int n = u0.n;
  const int m = n + 1;
  for (int it = 0; it < max_iter; ++it) {
    if (!sys.admissible(S)) return false;
    const Vec fS = sys.flux(S);
    const Vec dU = S - u0;
    const Vec dA = S - anchor;
    const double dist = norm(dA);
    double F[kMaxDim + 1];
    double res = 0;
    for (int i = 0; i < n; ++i) {
      F[i] = fS[i] - f0[i] - sigma * dU[i];
      res = std::max(res, std::abs(F[i]));
    }
    F[n] = dist - step;
    res = std::max(res, std::abs(F[n]));
    if (res < tol) return true;
    if (dist == 0.0) return false;

    const Mat J = sys.flux_jacobian_fn ? sys.flux_jacobian_fn(S)
                                       : fd_jacobian(sys.flux, S);
    double A[(kMaxDim + 1) * (kMaxDim + 1)];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) A[i * m + j] = J(i, j) - (i == j ? sigma : 0.0);
      A[i * m + n] = -dU[i];
    }
    for (int j = 0; j < n; ++j) A[n * m + j] = dA[j] / dist;
    A[n * m + n] = 0.0;

    double rhs[kMaxDim + 1];
    for (int i = 0; i < m; ++i) rhs[i] = -F[i];
    if (!solve_dense(A, rhs, m)) return false;
    for (int i = 0; i < n; ++i) S[i] += rhs[i];
    sigma += rhs[n];
  }
  // Accept only if the final residual meets tolerance.
  const Vec fS = sys.flux(S);
  double res = 0;
  for (int i = 0; i < n; ++i)
    res = std::max(res, std::abs(fS[i] - f0[i] - sigma * (S[i] - u0[i])));
  res = std::max(res, std::abs(norm(S - anchor) - step));
  return res < tol;
}

}  // namespace

ShockCurve trace_shock_curve(const SystemDescriptor& sys, const Vec& u0, int family,
                             double s_max, double ds, const TraceOptions& opts) {
  if (!sys.in_working(u0))
    throw DomainError(sys.id + ": curve base state outside working box");
  if (!(s_max > 0)) throw std::invalid_argument("trace_shock_curve: s_max <= 0");
  if (family != 1 && family != sys.n)
    throw std::invalid_argument("trace_shock_curve: family must be 1 or n");

  if (ds <= 0) ds = s_max / 400.0;
  const Vec f0 = sys.flux(u0);
  const double tol = opts.newton_tol_rel * (1.0 + norm(f0));

  const EigenBasis basis = eigenstructure(sys, u0);
  const int fi = family - 1;
  // Liu branch direction: lambda_family decreases along it.
  Vec dir = basis.right[fi];
  if (eigenvalue_directional(sys, u0, family, dir) > 0) dir *= -1.0;
  const double lam0 = basis.lambda[fi];
  const double glam = eigenvalue_directional(sys, u0, family, dir);

  ShockCurve curve;
  curve.base = u0;
  curve.family = family;
  curve.nodes.push_back({0.0, u0, lam0});

  Vec S_prev = u0;
  Vec S_pred = u0 + ds * dir;
  double sig_pred = lam0 + 0.5 * ds * glam;
  double step = ds;

  while (true) {
    Vec S = S_pred;
    double sigma = sig_pred;
    int halvings = 0;
    while (!newton_rh(sys, u0, f0, S_prev, step, S, sigma, tol, opts.max_newton)) {
      ++halvings;
      if (halvings > opts.max_halvings) {
        curve.stop_reason = "newton_failure";
        if (curve.nodes.size() < 2)
          throw ContinuationError(sys.id + ": shock-curve continuation failed at start");
        curve.build_interpolant();
        return curve;
      }
      step *= 0.5;
      S = S_prev + (S_pred - S_prev) * (step / norm(S_pred - S_prev));
      sigma = curve.nodes.back().sigma;
    }

    const double s_val = norm(S - u0);
    if (s_val <= curve.nodes.back().s) {
      curve.stop_reason = "newton_failure";  // lost monotonicity of the chord parameter
      curve.build_interpolant();
      return curve;
    }
    curve.nodes.push_back({s_val, S, sigma});

    if (s_val >= s_max) {
      curve.complete = true;
      curve.stop_reason = "reached_smax";
      break;
    }
    if (opts.stop_at_box_exit && !sys.in_working(S)) {
      curve.stop_reason = "box_exit";
      break;
    }

    // Secant predictor from the last two nodes; step recovers toward ds.
    step = std::min(ds, 2.0 * step);
    const ShockPoint& a = curve.nodes[curve.nodes.size() - 2];
    const ShockPoint& b = curve.nodes.back();
    const Vec tangent = (b.S - a.S) / norm(b.S - a.S);
    S_prev = b.S;
    S_pred = b.S + step * tangent;
    sig_pred = b.sigma + (b.sigma - a.sigma) * (step / norm(b.S - a.S));
  }
  curve.build_interpolant();
  return curve;
}

ShockPoint shock_at(const SystemDescriptor& sys, const ShockCurve& curve, double s) {
  if (s < 0 || s > curve.extent() * (1.0 + 1e-12))
    throw RangeError("shock_at: s outside curve range");
  if (s == 0.0) return curve.nodes.front();

  // Exact node hit (within rounding) returns the node.
  for (const auto& node : curve.nodes)
    if (std::abs(node.s - s) <= 1e-14 * (1.0 + s)) return node;

  Vec S = curve.state_interp(s);
  double sigma = curve.sigma_interp(s);
  const Vec f0 = sys.flux(curve.base);
  const double tol = 1e-13 * (1.0 + norm(f0));
  newton_rh(sys, curve.base, f0, curve.base, s, S, sigma, tol, 4);
  return {s, S, sigma};
}

AsymptoticsReport check_asymptotics(const SystemDescriptor& sys, const Vec& u0,
                                    int family) {
  AsymptoticsReport rep;
  TraceOptions opts;
  opts.newton_tol_rel = 1e-14;
  const double s_hi = rep.s_hi;
  ShockCurve curve = trace_shock_curve(sys, u0, family, 1.05 * s_hi, s_hi / 400.0, opts);
  if (curve.extent() < s_hi)
    throw ContinuationError("check_asymptotics: curve could not reach s = 1e-2");

  const EigenBasis basis = eigenstructure(sys, u0);
  const int fi = family - 1;
  Vec dir = basis.right[fi];
  if (eigenvalue_directional(sys, u0, family, dir) > 0) dir *= -1.0;
  const double lam0 = basis.lambda[fi];

  const int n_pts = 25;
  std::vector<double> ss(n_pts), a_sig(n_pts), a_state(n_pts);
  double max_sig = 0, max_state = 0;
  for (int k = 0; k < n_pts; ++k) {
    const double s = rep.s_lo * std::pow(s_hi / rep.s_lo, double(k) / (n_pts - 1));
    const ShockPoint pt = shock_at(sys, curve, s);
    const double lamS = eigenvalues(sys, pt.S)[fi];
    ss[k] = s;
    a_sig[k] = std::abs(pt.sigma - 0.5 * (lam0 + lamS));
    a_state[k] = norm(pt.S - u0 - s * dir);
    max_sig = std::max(max_sig, a_sig[k]);
    max_state = std::max(max_state, a_state[k]);
  }
  const double floor_sig = 1e-12 * (1.0 + std::abs(lam0));
  const double floor_state = 1e-12 * (1.0 + norm(u0));
  if (max_sig < floor_sig) {
    rep.sigma_vacuous = true;
  } else if (auto fit = fit_loglog(ss, a_sig, floor_sig * 1e-2)) {
    rep.slope_sigma = fit->slope;
  }
  if (max_state < floor_state) {
    rep.state_vacuous = true;
  } else if (auto fit = fit_loglog(ss, a_state, floor_state * 1e-2)) {
    rep.slope_state = fit->slope;
  }
  return rep;
}

double lax_identity_residual(const SystemDescriptor& sys, const ShockCurve& curve,
                             const Vec& v, double s, double quad_tol) {
  if (s < 0 || s > curve.extent()) throw RangeError("lax_identity_residual: s out of range");
  if (s == 0.0) return 0.0;
  const Vec& u0 = curve.base;
  const ShockPoint end = shock_at(sys, curve, s);

  const auto integrand = [&](double t) {
    return curve.sigma_dot(t) * rel_entropy(sys, u0, curve.state_interp(t));
  };
  const double integral = adaptive_simpson(integrand, 0.0, s, quad_tol);

  const double lhs = rel_entropy_flux(sys, end.S, v) - end.sigma * rel_entropy(sys, end.S, v);
  const double rhs = rel_entropy_flux(sys, u0, v) - end.sigma * rel_entropy(sys, u0, v) + integral;
  return std::abs(lhs - rhs);
}

std::pair<double, double> liu_margins(const SystemDescriptor& sys,
                                      const ShockCurve& curve, double s_skip) {
  const int fi = curve.family - 1;
  const double lam0 = eigenvalues(sys, curve.base)[fi];
  double lower = std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  for (const auto& node : curve.nodes) {
    if (node.s <= s_skip) continue;
    const double lamS = eigenvalues(sys, node.S)[fi];
    lower = std::min(lower, node.sigma - lamS);
    upper = std::min(upper, lam0 - node.sigma);
  }
  return {lower, upper};
}

}  // namespace acshock
