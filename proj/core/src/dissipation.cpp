#include "acshock/dissipation.hpp"

#include <algorithm>
#include <cmath>

namespace acshock {

double d_cont(const ShockContext& ctx, const Vec& u) {
  if (!ctx.sys.in_working(u))
    throw DomainError("d_cont: state outside working box");
  const double lam1 = eigenvalues(ctx.sys, u)[0];
  return -tilde_q(ctx, u) + lam1 * tilde_eta(ctx, u);
}

double d_rh(const ShockContext& ctx, const Vec& u_minus, const Vec& u_plus,
            double sigma, double rh_tol_rel) {
  const double res = rh_residual(ctx.sys, u_minus, u_plus, sigma);
  if (res > rh_tol_rel * (1.0 + norm(ctx.sys.flux(u_minus))))
    throw InconsistentShockError("d_rh: triple violates Rankine-Hugoniot");
  const double right = rel_entropy_flux(ctx.sys, u_plus, ctx.u_right) -
                       sigma * rel_entropy(ctx.sys, u_plus, ctx.u_right);
  const double left = rel_entropy_flux(ctx.sys, u_minus, ctx.u_left) -
                      sigma * rel_entropy(ctx.sys, u_minus, ctx.u_left);
  return right - ctx.weight_ratio * left;
}

// ---------------------------------------------------------------------------

namespace {

// g(s) = eta_tilde(u) + eta(u | S^1_u(s)); the audited shock-strength
// monotonicity (assumption (j)) makes it strictly increasing.
double g_of(const ShockContext& ctx, const Vec& u, double eta_u, const ShockCurve& curve,
            double s) {
  return eta_u + rel_entropy(ctx.sys, u, curve.state_interp(s));
}

}  // namespace

MaximalShock maximal_shock(const ShockContext& ctx, const Vec& u) {
  const double eta_u = tilde_eta(ctx, u);
  if (!(eta_u < 0.0))
    throw std::invalid_argument("maximal_shock: state not in Pi");

  // g(s) >= eta_u + (c_min/2) s^2 bounds the root; trace generously past it.
  const Vec eigH = sym_eigenvalues(entropy_hessian(ctx.sys, u));
  const double c_min = std::max(eigH[0], 1e-12);
  double s_guess = 1.6 * std::sqrt(-2.0 * eta_u / c_min);

  ShockCurve curve;
  double bracket_lo = 0, bracket_hi = 0;
  bool bracketed = false;
  for (int attempt = 0; attempt < 6 && !bracketed; ++attempt) {
    curve = trace_shock_curve(ctx.sys, u, 1, s_guess, s_guess / 200.0);
    for (size_t k = 1; k < curve.nodes.size(); ++k) {
      if (g_of(ctx, u, eta_u, curve, curve.nodes[k].s) >= 0.0) {
        bracket_lo = curve.nodes[k - 1].s;
        bracket_hi = curve.nodes[k].s;
        bracketed = true;
        break;
      }
    }
    if (!bracketed) {
      if (!curve.complete)
        throw NotFoundError(
            "maximal_shock: curve exits working box before the sign change");
      s_guess *= 2.0;
    }
  }
  if (!bracketed)
    throw NotFoundError("maximal_shock: no sign change of g along the traced curve");

  auto g = [&](double s) { return g_of(ctx, u, eta_u, curve, s); };
  double s_star = brent(g, bracket_lo, bracket_hi, 1e-15 * (1.0 + bracket_hi));

  // Newton polish on re-projected states; g'(s) = -(u - S)^T grad^2(eta)(S) S'(s)
  // with S'(s) from the spline.
  for (int it = 0; it < 3; ++it) {
    const ShockPoint pt = shock_at(ctx.sys, curve, s_star);
    const double val = eta_u + rel_entropy(ctx.sys, u, pt.S);
    const double h = 1e-6 * (1.0 + s_star);
    const double lo = std::max(s_star - h, 0.0), hi = std::min(s_star + h, curve.extent());
    const Vec Sdot = (curve.state_interp(hi) - curve.state_interp(lo)) / (hi - lo);
    const double dval = -dot(entropy_hessian(ctx.sys, pt.S) * (u - pt.S), Sdot);
    if (dval <= 0.0) break;
    const double step = val / dval;
    if (!std::isfinite(step)) break;
    s_star = std::clamp(s_star - step, 0.0, curve.extent());
  }

  MaximalShock ms;
  ms.u = u;
  const ShockPoint pt = shock_at(ctx.sys, curve, s_star);
  ms.u_plus = pt.S;
  ms.sigma = pt.sigma;
  ms.s_star = s_star;
  ms.curve = std::move(curve);
  return ms;
}

double d_max(const ShockContext& ctx, const MaximalShock& ms) {
  return d_rh(ctx, ms.u, ms.u_plus, ms.sigma);
}

double d_max(const ShockContext& ctx, const Vec& u) {
  return d_max(ctx, maximal_shock(ctx, u));
}

double d_max_scan(const ShockContext& ctx, const MaximalShock& ms, int n_points) {
  double best = -std::numeric_limits<double>::infinity();
  const double extent = ms.curve.extent();
  for (int k = 1; k <= n_points; ++k) {
    const double s = extent * k / n_points;
    const Vec S = ms.curve.state_interp(s);
    const double sig = ms.curve.sigma_interp(s);
    if (!ctx.sys.admissible(S)) continue;
    const double right = rel_entropy_flux(ctx.sys, S, ctx.u_right) -
                         sig * rel_entropy(ctx.sys, S, ctx.u_right);
    const double left = rel_entropy_flux(ctx.sys, ms.u, ctx.u_left) -
                        sig * rel_entropy(ctx.sys, ms.u, ctx.u_left);
    best = std::max(best, right - ctx.weight_ratio * left);
  }
  return best;
}

Vec dmax_gradient_analytic(const ShockContext& ctx, const MaximalShock& ms) {
  const Vec g_plus = entropy_gradient(ctx.sys, ms.u_plus);
  const Vec g_right = entropy_gradient(ctx.sys, ctx.u_right);
  const Vec g_u = entropy_gradient(ctx.sys, ms.u);
  const Vec g_left = entropy_gradient(ctx.sys, ctx.u_left);
  const Vec row = (g_plus - g_right) - ctx.weight_ratio * (g_u - g_left);
  Mat A = flux_jacobian(ctx.sys, ms.u);
  for (int i = 0; i < A.n; ++i) A(i, i) -= ms.sigma;
  return left_mul(row, A);
}

double dmax_gradient_relerr(const ShockContext& ctx, const Vec& u, double rel_step) {
  const MaximalShock ms = maximal_shock(ctx, u);
  const Vec analytic = dmax_gradient_analytic(ctx, ms);
  const Vec fd = fd_gradient([&](const Vec& w) { return d_max(ctx, w); }, u, rel_step);
  const double denom = std::max({norm(analytic), norm(fd), 1e-300});
  return norm(analytic - fd) / denom;
}

// ---------------------------------------------------------------------------

std::pair<double, Vec> curve_pi_exit(const ShockContext& ctx) {
  const ShockCurve& curve = ctx.base_curve;
  auto eta_at = [&](double s) { return tilde_eta(ctx, curve.state_interp(s)); };
  // eta_tilde(u_L) < 0, eta_tilde(u_R) > 0: the exit lies in (0, s0].
  double hi = ctx.s0;
  if (eta_at(hi) <= 0.0) {
    // Should not happen for a valid context; walk further out.
    while (hi < curve.extent() && eta_at(hi) <= 0.0) hi = std::min(curve.extent(), hi * 1.25);
  }
  const double s_exit = brent(eta_at, 0.0, hi, 1e-15 * (1.0 + hi));
  return {s_exit, shock_at(ctx.sys, curve, s_exit).S};
}

namespace {

Vec chart_direction(int n, const Vec& angles) {
  if (n == 2) return Vec{std::cos(angles[0]), std::sin(angles[0])};
  const double th = angles[0], ph = angles[1];
  return Vec{std::cos(th) * std::cos(ph), std::sin(th) * std::cos(ph), std::sin(ph)};
}

}  // namespace

DcontMaxResult find_dcont_max(const ShockContext& ctx, Rng& rng, int n_starts) {
  DcontMaxResult res;
  const int n = ctx.sys.n;
  res.n_starts = n_starts;

  std::vector<Vec> candidates;
  if (n == 1) {
    for (double sgn : {+1.0, -1.0}) {
      try {
        candidates.push_back(boundary_project(ctx, ctx.u_left, Vec{sgn}));
      } catch (const NotFoundError&) {
      }
    }
  } else {
    const int n_angles = (n == 2) ? 1 : 2;
    for (int k = 0; k < n_starts; ++k) {
      Vec a0(n_angles);
      a0[0] = 2.0 * M_PI * k / n_starts + 0.01 * rng.uniform(-1.0, 1.0);
      if (n_angles == 2) a0[1] = rng.uniform(-1.2, 1.2);
      auto objective = [&](const Vec& angles) {
        try {
          const Vec u = boundary_project(ctx, ctx.u_left, chart_direction(n, angles));
          return -d_cont(ctx, u);
        } catch (const std::exception&) {
          return 1e30;
        }
      };
      NelderMeadOptions opts;
      opts.initial_step = 0.4;
      opts.ftol = 1e-15;
      opts.xtol = 1e-10;
      const auto nm = nelder_mead(objective, a0, opts);
      if (nm.fmin < 1e29)
        candidates.push_back(
            boundary_project(ctx, ctx.u_left, chart_direction(n, nm.x)));
    }
  }
  if (candidates.empty())
    throw NotFoundError("find_dcont_max: no boundary candidates (Pi exits the box?)");

  // Polish every candidate with the fixed point p <- support(l^1(p)); the map
  // is a contraction for large C (normal field Lipschitz ~ C).
  const double diam = std::max(pi_diameter_estimate(ctx, n >= 3 ? 64 : 32, rng), 1e-300);
  std::vector<Vec> polished;
  for (const auto& cand : candidates) {
    Vec p = cand;
    if (n > 1) {
      for (int it = 0; it < 80; ++it) {
        const EigenBasis eb = eigenstructure(ctx.sys, p);
        const Vec next = pi_support_point(ctx, eb.left[0], p);
        const double move = norm(next - p);
        p = next;
        if (move < 1e-13 * diam) break;
      }
    }
    polished.push_back(p);
  }

  int best = 0;
  std::vector<double> values(polished.size());
  for (size_t i = 0; i < polished.size(); ++i) {
    values[i] = d_cont(ctx, polished[i]);
    if (values[i] > values[best]) best = static_cast<int>(i);
  }
  // Multistart disagreement: another polished point with a comparable value
  // but a distinct location flags non-uniqueness.
  for (size_t i = 0; i < polished.size(); ++i) {
    const double dist = norm(polished[i] - polished[best]);
    res.multistart_spread = std::max(res.multistart_spread, dist);
    if (values[i] >= values[best] - 1e-9 * (1.0 + std::abs(values[best])) &&
        dist > 1e-6 * diam)
      res.unique_ok = false;
  }

  res.u_star = polished[best];
  res.value = values[best];
  res.eta_residual = std::abs(tilde_eta(ctx, res.u_star));
  const Vec nu = normalized(tilde_eta_gradient(ctx, res.u_star));
  const EigenBasis eb = eigenstructure(ctx.sys, res.u_star);
  res.angle_nu_l1 = std::acos(std::clamp(dot(nu, eb.left[0]), -1.0, 1.0));
  res.r1_dot_nu = dot(eb.right[0], nu);
  return res;
}

// ---------------------------------------------------------------------------

NegativityReport sweep_negativity(const ShockContext& ctx, int n_samples, Rng& rng,
                                  const SweepOptions& opts) {
  NegativityReport rep;
  rep.tol_zero = 1e-12 * ctx.s0 * ctx.s0;

  const auto [s_exit, u0] = curve_pi_exit(ctx);
  rep.dcont_at_u0 = d_cont(ctx, u0);

  std::vector<Vec> samples;
  samples.reserve(n_samples + 2);
  const int n_interior = static_cast<int>(opts.interior_fraction * n_samples);
  const int n_boundary = static_cast<int>(opts.boundary_fraction * n_samples);
  const int n_curve = std::max(1, n_samples - n_interior - n_boundary);

  for (auto& u : sample_pi(ctx, n_interior, rng)) samples.push_back(std::move(u));
  for (int k = 0; k < n_boundary; ++k) {
    const Vec dir = rng.direction(ctx.sys.n);
    try {
      const double t = boundary_ray_distance(ctx, ctx.u_left, dir);
      samples.push_back(ctx.u_left + (opts.boundary_pull * t) * dir);
    } catch (const NotFoundError&) {
    }
  }
  for (int k = 0; k < n_curve; ++k) {
    const double s = s_exit * (k + 0.5) / n_curve;
    samples.push_back(shock_at(ctx.sys, ctx.base_curve, s).S);
  }
  samples.push_back(ctx.u_left);
  rep.n_samples = static_cast<int>(samples.size());

  rep.max_dcont = -std::numeric_limits<double>::infinity();
  rep.max_dmax = -std::numeric_limits<double>::infinity();
  for (const auto& u : samples) {
    const double eta = tilde_eta(ctx, u);
    const double dc = d_cont(ctx, u);
    if (dc > rep.max_dcont) {
      rep.max_dcont = dc;
      rep.argmax_dcont = u;
    }
    if (dc >= 0.0) ++rep.n_dcont_positive;

    SampleRow row;
    row.u = u;
    row.eta_tilde = eta;
    row.dcont = dc;
    row.dmax = std::numeric_limits<double>::quiet_NaN();

    if (eta < 0.0) {
      try {
        const MaximalShock ms = maximal_shock(ctx, u);
        const double dm = d_max(ctx, ms);
        row.dmax = dm;
        row.s_star = ms.s_star;
        if (dm > rep.max_dmax) {
          rep.max_dmax = dm;
          rep.argmax_dmax = u;
        }
        if (dm > rep.tol_zero) ++rep.n_dmax_positive;
        const double scan = d_max_scan(ctx, ms, opts.scan_points);
        if (scan > dm + 1e-12 * (1.0 + std::abs(dm))) ++rep.n_maximality_violations;
      } catch (const std::exception&) {
        ++rep.n_dmax_failures;
      }
    }
    if (opts.collect_samples && static_cast<int>(rep.rows.size()) < opts.max_rows)
      rep.rows.push_back(std::move(row));
  }
  // The boundary witness u0 contributes to the D_cont statistics as well.
  if (rep.dcont_at_u0 > rep.max_dcont) {
    rep.max_dcont = rep.dcont_at_u0;
    rep.argmax_dcont = u0;
  }

  rep.dmax_at_uleft = d_max(ctx, ctx.u_left);
  rep.argmax_dmax_dist_uleft =
      rep.argmax_dmax.n > 0 ? norm(rep.argmax_dmax - ctx.u_left) / ctx.s0 : 0.0;
  rep.fitted_K = -rep.max_dcont / (ctx.s0 * ctx.s0 * ctx.s0);

  rep.pass_dcont = rep.max_dcont < 0.0;
  rep.pass_dmax = rep.max_dmax <= rep.tol_zero &&
                  std::abs(rep.dmax_at_uleft) <= rep.tol_zero;
  rep.pass_argmax_near_uleft = rep.argmax_dmax_dist_uleft <= 1e-3;
  rep.pass_maximality = rep.n_maximality_violations == 0;
  return rep;
}

// ---------------------------------------------------------------------------

ScalingFit scaling_study(const SystemDescriptor& sys, const Vec& base_state,
                         int family, const std::vector<double>& C_list,
                         const std::vector<double>& s0_list, int n_samples_cell,
                         Rng& rng) {
  ScalingFit fit;
  double diam_lo = std::numeric_limits<double>::infinity(), diam_hi = 0;
  double us_lo = std::numeric_limits<double>::infinity(), us_hi = 0;

  for (double C : C_list) {
    std::vector<double> xs, ys;
    for (double s0 : s0_list) {
      ScalingCell cell;
      cell.C = C;
      cell.s0 = s0;
      try {
        const ShockContext ctx = make_shock_context(sys, family, base_state, s0, C);
        const NegativityReport rep = sweep_negativity(ctx, n_samples_cell, rng);
        cell.max_dcont = rep.max_dcont;
        cell.sweep_pass = rep.pass();

        const double diam = pi_diameter_estimate(ctx, sys.n >= 3 ? 64 : 32, rng);
        cell.diam_times_C = diam * C;

        std::vector<Vec> boundary;
        pi_diameter_estimate(ctx, sys.n >= 3 ? 64 : 32, rng, &boundary);
        double min_grad = std::numeric_limits<double>::infinity();
        for (const auto& b : boundary)
          min_grad = std::min(min_grad, norm(tilde_eta_gradient(ctx, b)));
        cell.min_grad_over_s0 = min_grad / s0;

        const DcontMaxResult dm = find_dcont_max(ctx, rng);
        const auto [se, u0] = curve_pi_exit(ctx);
        (void)se;
        cell.ustar_u0_scaled = norm(dm.u_star - u0) * C / s0;

        const Mat H = fd_hessian([&](const Vec& w) { return d_max(ctx, w); },
                                 ctx.u_left, 0.1 * s0 / (1.0 + norm(ctx.u_left)));
        const Vec evals = sym_eigenvalues(0.5 * (H + transpose(H)));
        cell.hessian_max_eig = evals[evals.n - 1];
        cell.hessian_negdef = cell.hessian_max_eig < 0.0;

        diam_lo = std::min(diam_lo, cell.diam_times_C);
        diam_hi = std::max(diam_hi, cell.diam_times_C);
        us_lo = std::min(us_lo, cell.ustar_u0_scaled);
        us_hi = std::max(us_hi, cell.ustar_u0_scaled);
        if (cell.max_dcont < 0) {
          xs.push_back(s0);
          ys.push_back(-cell.max_dcont);
        }
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
      fit.cells.push_back(cell);
    }
    if (auto lf = fit_loglog(xs, ys)) fit.slopes.push_back(lf->slope);
  }
  fit.diam_ratio = diam_hi / std::max(diam_lo, 1e-300);
  fit.ustar_ratio = us_hi / std::max(us_lo, 1e-300);
  return fit;
}

}  // namespace acshock
