#include "acshock/relent.hpp"

#include <algorithm>
#include <cmath>

namespace acshock {

double rel_entropy(const SystemDescriptor& sys, const Vec& a, const Vec& b) {
  if (sys.rel_entropy_fn) return sys.rel_entropy_fn(a, b);
  return sys.entropy(a) - sys.entropy(b) - dot(entropy_gradient(sys, b), a - b);
}

double rel_entropy_flux(const SystemDescriptor& sys, const Vec& a, const Vec& b) {
  if (sys.rel_entropy_flux_fn) return sys.rel_entropy_flux_fn(a, b);
  return sys.entropy_flux(a) - sys.entropy_flux(b) -
         dot(entropy_gradient(sys, b), sys.flux(a) - sys.flux(b));
}

// ---------------------------------------------------------------------------

namespace {

void check_domain(const SystemDescriptor& sys, const Vec& u) {
  if (!all_finite(u) || !sys.admissible(u))
    throw DomainError(sys.id + ": state outside admissible region");
}

ShockContext build_context(const SystemDescriptor& sys_in, int family,
                           const Vec& base_state, double s0, double C,
                           double extent_factor) {
  if (!(s0 > 0)) throw std::invalid_argument("shock context: s0 must be positive");
  ShockContext ctx;
  ctx.family_orig = family;
  if (family == 1) {
    ctx.sys = sys_in;
  } else if (family == sys_in.n && sys_in.n > 1) {
    ctx.sys = mirror_system(sys_in);
    ctx.mirrored = true;
  } else {
    throw std::invalid_argument("shock context: family must be 1 or n");
  }
  ctx.u_left = base_state;
  ctx.s0 = s0;
  ctx.C = C;
  ctx.weight_ratio = 1.0 + C * s0;
  ctx.basepoint = base_state;

  const double s_max = std::max(extent_factor, 1.25) * s0;
  ctx.base_curve = trace_shock_curve(ctx.sys, ctx.u_left, 1, s_max);
  if (ctx.base_curve.extent() < s0)
    throw ContinuationError("shock context: base curve exits working box before s0");
  const ShockPoint right = shock_at(ctx.sys, ctx.base_curve, s0);
  ctx.u_right = right.S;
  ctx.sigma_lr = right.sigma;
  ctx.eps_d = 2.0 * norm(ctx.u_left - ctx.u_right);
  return ctx;
}

}  // namespace

ShockContext make_shock_context(const SystemDescriptor& sys, int family,
                                const Vec& base_state, double s0, double C,
                                double curve_extent_factor) {
  return build_context(sys, family, base_state, s0, C, curve_extent_factor);
}

ShockContext make_shock_context_ratio(const SystemDescriptor& sys, int family,
                                      const Vec& base_state, double s0, double ratio,
                                      double curve_extent_factor) {
  if (!(ratio > 0)) throw std::invalid_argument("shock context: ratio must be positive");
  const double C = (ratio - 1.0) / s0;
  return build_context(sys, family, base_state, s0, C, curve_extent_factor);
}

ShockContext make_shock_context_from_pair(const SystemDescriptor& sys, int family,
                                          const Vec& u_minus, const Vec& u_plus,
                                          double C) {
  // Reduce to the 1-shock convention first, then verify against the curve.
  const Vec base = (family == 1) ? u_minus : u_plus;
  const double s0 = norm(u_minus - u_plus);
  ShockContext ctx = build_context(sys, family, base, s0, C, 3.0);
  const Vec expected_right = (family == 1) ? u_plus : u_minus;
  ctx.pair_curve_residual = norm(ctx.u_right - expected_right);

  // RH and Liu of the supplied pair, in the reduced frame.
  const double rh = rh_residual(ctx.sys, ctx.u_left, expected_right,
                                ctx.sigma_lr);
  const double tol = 1e-6 * (1.0 + norm(ctx.sys.flux(ctx.u_left)));
  if (rh > tol && ctx.pair_curve_residual > 1e-6 * (1.0 + s0))
    throw InconsistentShockError("shock context: pair violates Rankine-Hugoniot");
  const double lam_l = eigenvalues(ctx.sys, ctx.u_left)[0];
  const double lam_r = eigenvalues(ctx.sys, ctx.u_right)[0];
  if (!(lam_r < ctx.sigma_lr && ctx.sigma_lr < lam_l))
    throw InconsistentShockError("shock context: pair is not Liu-admissible");
  return ctx;
}

bool weight_window_ok(double C1, double s0, double ratio) {
  return ratio >= 1.0 + 0.5 * C1 * s0 && ratio <= 1.0 + 2.0 * C1 * s0;
}

// ---------------------------------------------------------------------------

double tilde_eta(const ShockContext& ctx, const Vec& u) {
  check_domain(ctx.sys, u);
  return ctx.weight_ratio * rel_entropy(ctx.sys, u, ctx.u_left) -
         rel_entropy(ctx.sys, u, ctx.u_right);
}

double tilde_q(const ShockContext& ctx, const Vec& u) {
  check_domain(ctx.sys, u);
  return ctx.weight_ratio * rel_entropy_flux(ctx.sys, u, ctx.u_left) -
         rel_entropy_flux(ctx.sys, u, ctx.u_right);
}

bool in_pi(const ShockContext& ctx, const Vec& u) { return tilde_eta(ctx, u) < 0.0; }

Vec tilde_eta_gradient(const ShockContext& ctx, const Vec& u) {
  const Vec gu = entropy_gradient(ctx.sys, u);
  const Vec gl = entropy_gradient(ctx.sys, ctx.u_left);
  const Vec gr = entropy_gradient(ctx.sys, ctx.u_right);
  return ctx.weight_ratio * (gu - gl) - (gu - gr);
}

Mat tilde_eta_hessian(const ShockContext& ctx, const Vec& u) {
  return (ctx.weight_ratio - 1.0) * entropy_hessian(ctx.sys, u);
}

double boundary_tolerance(const ShockContext& ctx) {
  // 1e-12 * max(1, |eta_tilde(u_L)|), with eta_tilde(u_L) = -eta(u_L|u_R).
  return 1e-12 * std::max(1.0, rel_entropy(ctx.sys, ctx.u_left, ctx.u_right));
}

namespace {

// Damped Newton refinement of the nearest-point conditions:
//   u - u_in - mu grad(eta_tilde)(u) = 0,  eta_tilde(u) = 0.
// Restores the ray-projection point when a step leaves the admissible region.
bool refine_nearest_point(const ShockContext& ctx, const Vec& u_in, Vec& u) {
  const int n = u.n, m = n + 1;
  const Vec u_ray = u;
  const Vec g0 = tilde_eta_gradient(ctx, u);
  double mu = dot(u - u_in, g0) / std::max(norm2(g0), 1e-300);
  for (int it = 0; it < 40; ++it) {
    const Vec g = tilde_eta_gradient(ctx, u);
    const double eta = tilde_eta(ctx, u);
    double F[kMaxDim + 1];
    double res = 0;
    for (int i = 0; i < n; ++i) {
      F[i] = u[i] - u_in[i] - mu * g[i];
      res = std::max(res, std::abs(F[i]));
    }
    F[n] = eta;
    res = std::max(res, std::abs(eta));
    if (res < 1e-13 * (1.0 + norm(u - u_in))) return true;
    const Mat H = tilde_eta_hessian(ctx, u);
    double A[(kMaxDim + 1) * (kMaxDim + 1)];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) A[i * m + j] = (i == j ? 1.0 : 0.0) - mu * H(i, j);
      A[i * m + n] = -g[i];
    }
    for (int j = 0; j < n; ++j) A[n * m + j] = g[j];
    A[n * m + n] = 0.0;
    double rhs[kMaxDim + 1];
    for (int i = 0; i < m; ++i) rhs[i] = -F[i];
    if (!solve_dense(A, rhs, m)) break;
    double damp = 1.0;
    Vec next = u;
    for (int half = 0; half < 8; ++half, damp *= 0.5) {
      next = u;
      for (int i = 0; i < n; ++i) next[i] += damp * rhs[i];
      if (ctx.sys.admissible(next)) break;
    }
    if (!ctx.sys.admissible(next)) break;
    u = next;
    mu += damp * rhs[n];
  }
  u = u_ray;
  return false;
}

}  // namespace

Vec boundary_project(const ShockContext& ctx, const Vec& u_in, const Vec& dir,
                     bool refine_nearest) {
  const Vec d = normalized(dir);
  const double tol = boundary_tolerance(ctx);
  const double eta0 = tilde_eta(ctx, u_in);
  if (std::abs(eta0) < tol) return u_in;

  auto phi = [&](double t) { return tilde_eta(ctx, u_in + t * d); };

  // Bracket by doubling until the sign changes or the ray exits the box.
  const double t_init = std::max(1e-3 * ctx.s0, 1e-12);
  double t_prev = 0.0, f_prev = eta0;
  double t = t_init;
  bool bracketed = false;
  for (int it = 0; it < 200; ++it) {
    const Vec probe = u_in + t * d;
    if (!ctx.sys.admissible(probe) || !ctx.sys.in_working(probe))
      throw NotFoundError("boundary_project: no sign change inside working box");
    const double f = phi(t);
    if (f == 0.0 || f * f_prev < 0.0) {
      bracketed = true;
      break;
    }
    t_prev = t;
    f_prev = f;
    t *= 2.0;
  }
  if (!bracketed)
    throw NotFoundError("boundary_project: no sign change along ray");

  double root = brent(phi, t_prev, t, 1e-15 * (1.0 + t));
  // Two Newton polish steps on the ray parameter.
  for (int k = 0; k < 2; ++k) {
    const Vec u = u_in + root * d;
    const double val = tilde_eta(ctx, u);
    const double dval = dot(tilde_eta_gradient(ctx, u), d);
    if (dval == 0.0) break;
    root -= val / dval;
  }
  Vec u_bar = u_in + root * d;
  if (refine_nearest) {
    if (eta0 < 0.0 && ctx.sys.n >= 2) {
      // From inside Pi every direction crosses: minimize the crossing distance
      // over ray angles, then polish with the Newton conditions.
      const int n_ang = ctx.sys.n - 1;
      Vec a0(n_ang);
      a0[0] = std::atan2(d[1], d[0]);
      if (n_ang == 2) a0[1] = std::asin(std::clamp(d[2], -1.0, 1.0));
      auto dir_of = [&](const Vec& a) {
        if (ctx.sys.n == 2) return Vec{std::cos(a[0]), std::sin(a[0])};
        return Vec{std::cos(a[0]) * std::cos(a[1]), std::sin(a[0]) * std::cos(a[1]),
                   std::sin(a[1])};
      };
      auto dist = [&](const Vec& a) {
        try {
          return norm(boundary_project(ctx, u_in, dir_of(a)) - u_in);
        } catch (const NotFoundError&) {
          return 1e30;
        }
      };
      NelderMeadOptions opts;
      opts.initial_step = 0.3;
      opts.xtol = 1e-11;
      opts.ftol = 1e-15;
      const auto nm = nelder_mead(dist, a0, opts);
      if (nm.fmin < 1e29) u_bar = boundary_project(ctx, u_in, dir_of(nm.x));
    }
    refine_nearest_point(ctx, u_in, u_bar);
  }
  return u_bar;
}

double boundary_ray_distance(const ShockContext& ctx, const Vec& from, const Vec& dir) {
  const Vec u_bar = boundary_project(ctx, from, dir);
  return norm(u_bar - from);
}

Vec pi_normal(const ShockContext& ctx, const Vec& u_bar) {
  if (std::abs(tilde_eta(ctx, u_bar)) > 1e3 * boundary_tolerance(ctx))
    throw std::invalid_argument("pi_normal: state not on the Pi boundary");
  const Vec g = tilde_eta_gradient(ctx, u_bar);
  const double m = norm(g);
  if (m < 1e-300) throw DegeneracyError("pi_normal: vanishing gradient");
  return g / m;
}

Vec pi_support_point(const ShockContext& ctx, const Vec& v, const Vec& start) {
  const int n = start.n, m = n + 1;
  Vec u = start;
  double kappa = norm(tilde_eta_gradient(ctx, u));
  for (int it = 0; it < 60; ++it) {
    const Vec g = tilde_eta_gradient(ctx, u);
    const double eta = tilde_eta(ctx, u);
    double F[kMaxDim + 1];
    double res = 0;
    for (int i = 0; i < n; ++i) {
      F[i] = g[i] - kappa * v[i];
      res = std::max(res, std::abs(F[i]));
    }
    F[n] = eta;
    res = std::max(res, std::abs(eta));
    if (res < 1e-14 * (1.0 + std::abs(kappa))) break;
    const Mat H = tilde_eta_hessian(ctx, u);
    double A[(kMaxDim + 1) * (kMaxDim + 1)];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) A[i * m + j] = H(i, j);
      A[i * m + n] = -v[i];
    }
    for (int j = 0; j < n; ++j) A[n * m + j] = g[j];
    A[n * m + n] = 0.0;
    double rhs[kMaxDim + 1];
    for (int i = 0; i < m; ++i) rhs[i] = -F[i];
    if (!solve_dense(A, rhs, m)) break;
    for (int i = 0; i < n; ++i) u[i] += rhs[i];
    kappa += rhs[n];
  }
  return u;
}

namespace {

std::vector<Vec> ray_directions(int n, int count, Rng& rng) {
  std::vector<Vec> dirs;
  if (n == 1) {
    dirs.push_back(Vec{1.0});
    dirs.push_back(Vec{-1.0});
    return dirs;
  }
  if (n == 2) {
    const int base = std::min(count, 64);
    for (int k = 0; k < base; ++k) {
      const double th = 2.0 * M_PI * k / base;
      dirs.push_back(Vec{std::cos(th), std::sin(th)});
    }
  }
  while (static_cast<int>(dirs.size()) < count) dirs.push_back(rng.direction(n));
  return dirs;
}

}  // namespace

double pi_diameter_estimate(const ShockContext& ctx, int n_rays, Rng& rng,
                            std::vector<Vec>* out_boundary) {
  const auto dirs = ray_directions(ctx.sys.n, n_rays, rng);
  std::vector<Vec> pts;
  for (const auto& d : dirs) {
    try {
      pts.push_back(boundary_project(ctx, ctx.u_left, d));
    } catch (const NotFoundError&) {
      // ray exits the box; accounted for by callers via pi_diagnostics
    }
  }
  double diam = 0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      diam = std::max(diam, norm(pts[i] - pts[j]));
  if (out_boundary) *out_boundary = std::move(pts);
  return diam;
}

double pi_boundary_distance(const ShockContext& ctx, const Vec& u, Rng& rng) {
  const int n_dirs = ctx.sys.n >= 3 ? 256 : 64;
  const auto dirs = ray_directions(ctx.sys.n, n_dirs, rng);
  double dist = std::numeric_limits<double>::infinity();
  for (const auto& d : dirs) {
    try {
      dist = std::min(dist, boundary_ray_distance(ctx, u, d));
    } catch (const NotFoundError&) {
    }
  }
  return dist;
}

std::vector<Vec> sample_pi(const ShockContext& ctx, int count, Rng& rng,
                           int max_tries_per_sample) {
  Rng diam_rng(rng.raw());
  const double diam = pi_diameter_estimate(ctx, ctx.sys.n >= 3 ? 64 : 32, diam_rng);
  Box box;
  box.lo = Vec(ctx.u_left.n);
  box.hi = Vec(ctx.u_left.n);
  for (int i = 0; i < ctx.u_left.n; ++i) {
    box.lo[i] = ctx.u_left[i] - 2.0 * diam;
    box.hi[i] = ctx.u_left[i] + 2.0 * diam;
  }
  std::vector<Vec> out;
  out.reserve(count);
  long long tries = 0;
  const long long budget = static_cast<long long>(max_tries_per_sample) * count;
  while (static_cast<int>(out.size()) < count && tries < budget) {
    ++tries;
    const Vec u = rng.in_box(box);
    if (!ctx.sys.admissible(u) || !ctx.sys.in_working(u)) continue;
    if (tilde_eta(ctx, u) < 0.0) out.push_back(u);
  }
  return out;
}

PiDiagnostics pi_diagnostics(const ShockContext& ctx, int n_samples, Rng& rng) {
  PiDiagnostics diag;
  const int n = ctx.sys.n;
  const int n_rays = n >= 3 ? 256 : (n == 2 ? 128 : 2);

  const auto dirs = ray_directions(n, n_rays, rng);
  std::vector<Vec> boundary;
  for (const auto& d : dirs) {
    try {
      boundary.push_back(boundary_project(ctx, ctx.u_left, d));
    } catch (const NotFoundError&) {
      diag.partial = true;
    }
  }
  diag.n_boundary = static_cast<int>(boundary.size());
  for (size_t i = 0; i < boundary.size(); ++i)
    for (size_t j = i + 1; j < boundary.size(); ++j)
      diag.diameter = std::max(diag.diameter, norm(boundary[i] - boundary[j]));

  diag.min_grad_norm = std::numeric_limits<double>::infinity();
  for (const auto& b : boundary)
    diag.min_grad_norm = std::min(diag.min_grad_norm, norm(tilde_eta_gradient(ctx, b)));
  diag.min_grad_over_s0 = diag.min_grad_norm / ctx.s0;

  // Interior: -eta_tilde(u) / (s0 d(u, bd Pi)).
  const int n_interior = std::min(n_samples, 200);
  const auto interior = sample_pi(ctx, n_interior, rng);
  diag.n_interior = static_cast<int>(interior.size());
  for (const auto& u : interior) {
    const double d = pi_boundary_distance(ctx, u, rng);
    if (d > 1e-14)
      diag.max_eta_over_dist =
          std::max(diag.max_eta_over_dist, -tilde_eta(ctx, u) / (ctx.s0 * d));
  }

  // Normal Lipschitz ratios |nu(u)-nu(w)| / (C |u-w|) over boundary pairs.
  if (ctx.C > 0 && boundary.size() >= 2) {
    diag.normal_lipschitz_lo = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < boundary.size(); ++i) {
      const Vec ni = pi_normal(ctx, boundary[i]);
      for (size_t j = i + 1; j < boundary.size(); ++j) {
        const double dist = norm(boundary[i] - boundary[j]);
        if (dist < 1e-9 * (1.0 + diag.diameter)) continue;
        const Vec nj = pi_normal(ctx, boundary[j]);
        const double ratio = norm(ni - nj) / (ctx.C * dist);
        diag.normal_lipschitz_lo = std::min(diag.normal_lipschitz_lo, ratio);
        diag.normal_lipschitz_hi = std::max(diag.normal_lipschitz_hi, ratio);
      }
    }
  }

  diag.cstar_estimate = estimate_cstar(ctx, n_samples, rng).value;
  return diag;
}

CstarEstimate estimate_cstar(const ShockContext& ctx, int n_samples, Rng& rng) {
  CstarEstimate est;
  double worst = 0;
  for (int k = 0; k < n_samples; ++k) {
    const Vec prim = rng.in_box(ctx.sys.working_box);
    const Vec u = ctx.sys.to_conserved(prim);
    if (!ctx.sys.admissible(u)) continue;
    const double eta = tilde_eta(ctx, u);
    if (eta < 0.0) continue;  // inside Pi
    const double q = tilde_q(ctx, u);
    if (q > 0.0) continue;  // lemma's conditional clause
    if (eta < 1e-300) continue;
    worst = std::max(worst, std::abs(q) / eta);
    ++est.n_contributing;
  }
  est.empty = est.n_contributing == 0;
  est.value = 2.0 * worst;
  return est;
}

}  // namespace acshock
