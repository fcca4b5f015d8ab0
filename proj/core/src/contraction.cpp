#include "acshock/contraction.hpp"

#include <algorithm>
#include <cmath>

namespace acshock {

ContractionConstants compute_constants(const ShockContext& ctx, int n_samples,
                                       Rng& rng) {
  ContractionConstants c;
  const SystemDescriptor& sys = ctx.sys;
  const Vec d = ctx.basepoint;
  const double radius = ctx.eps_d > 0 ? ctx.eps_d : 2.0 * ctx.s0;

  // alpha_1 from the working ball around the basepoint.
  c.sup_lambda1 = -std::numeric_limits<double>::infinity();
  c.inf_lambda2 = std::numeric_limits<double>::infinity();
  int accepted = 0;
  Box ball_box;
  ball_box.lo = Vec(d.n);
  ball_box.hi = Vec(d.n);
  for (int i = 0; i < d.n; ++i) {
    ball_box.lo[i] = d[i] - radius;
    ball_box.hi[i] = d[i] + radius;
  }
  long long tries = 0;
  const long long budget = 1000LL * n_samples;
  while (accepted < n_samples && ++tries < budget) {
    const Vec u = rng.in_box(ball_box);
    if (norm(u - d) > radius || !sys.admissible(u)) continue;
    ++accepted;
    const Vec lam = eigenvalues(sys, u);
    c.sup_lambda1 = std::max(c.sup_lambda1, lam[0]);
    if (sys.n >= 2) c.inf_lambda2 = std::min(c.inf_lambda2, lam[1]);
  }
  if (accepted == 0)
    throw DomainError("compute_constants: no admissible states in the working ball");
  if (sys.n == 1) c.inf_lambda2 = c.sup_lambda1 + 1.0;  // scalar: no second family
  c.alpha1 = 0.5 * (c.sup_lambda1 + c.inf_lambda2);
  c.alpha_ok = c.sup_lambda1 < c.alpha1 && c.alpha1 < c.inf_lambda2;

  // L over the working box (assumption (e) margin included).
  double max_abs = 0;
  for (int k = 0; k < n_samples; ++k) {
    const Vec u = sys.to_conserved(rng.in_box(sys.working_box));
    if (!sys.admissible(u)) continue;
    max_abs = std::max(max_abs, max_abs_eigen(sys, u));
  }
  c.L = 1.1 * max_abs;

  c.Cstar = estimate_cstar(ctx, n_samples, rng).value;  // factor-2 margin applied
  c.lambda_hat = 2.0 * (c.Cstar + 3.0 * c.L);
  c.v_bound = 0.5 * c.lambda_hat;
  return c;
}

double velocity_functional(const ShockContext& ctx, const Vec& u,
                           const ContractionConstants& consts) {
  if (!ctx.sys.admissible(u))
    return consts.L - (consts.Cstar + 2.0 * consts.L);
  const double lam1 = eigenvalues(ctx.sys, u)[0];
  const double eta = ctx.weight_ratio * rel_entropy(ctx.sys, u, ctx.u_left) -
                     rel_entropy(ctx.sys, u, ctx.u_right);
  return eta > 0.0 ? lam1 - (consts.Cstar + 2.0 * consts.L) : lam1;
}

FilippovStep filippov_step(const ShockContext& ctx, const FVField& field, double h,
                           double dt, const ContractionConstants& consts,
                           int trace_offset) {
  FilippovStep step;
  const int j = field.cell_of(h);
  const int jm = j - 1 - trace_offset;
  const int jp = j + 1 + trace_offset;
  if (jm < 0 || jp >= field.ncells) {
    step.boundary_hit = true;
    return step;
  }
  step.u_minus = field.u[jm];
  step.u_plus = field.u[jp];

  const double v_minus = velocity_functional(ctx, step.u_minus, consts);
  const double v_plus = velocity_functional(ctx, step.u_plus, consts);
  const double lo = std::min(v_minus, v_plus);
  const double hi = std::max(v_minus, v_plus);

  const Vec du = step.u_plus - step.u_minus;
  const double jump = norm(du);
  double h_dot;
  if (jump <= 1e-12 * (1.0 + norm(step.u_minus))) {
    h_dot = 0.5 * (v_minus + v_plus);  // continuous crossing; theta = 1/2 tie-break
  } else {
    // Local RH speed keeps the discrete crossing stationary relative to h;
    // Filippov containment selects it inside I[V(u+), V(u-)].
    const double sigma_loc =
        dot(ctx.sys.flux(step.u_plus) - ctx.sys.flux(step.u_minus), du) / (jump * jump);
    h_dot = std::clamp(sigma_loc, lo, hi);
  }

  // Shift-speed window [-lambda_hat/2, alpha1]; violations are recorded.
  step.in_window = h_dot >= -0.5 * consts.lambda_hat - 1e-12 &&
                   h_dot <= consts.alpha1 + 1e-12;

  step.h_dot = h_dot;
  step.h_next = h + dt * h_dot;

  const double eta_m = ctx.weight_ratio * rel_entropy(ctx.sys, step.u_minus, ctx.u_left) -
                       rel_entropy(ctx.sys, step.u_minus, ctx.u_right);
  const double eta_p = ctx.weight_ratio * rel_entropy(ctx.sys, step.u_plus, ctx.u_left) -
                       rel_entropy(ctx.sys, step.u_plus, ctx.u_right);
  if (eta_m > 0.0)
    step.label = eta_p > 0.0 ? InterfaceCase::Case1 : InterfaceCase::Case2;
  else
    step.label = eta_p > 0.0 ? InterfaceCase::Case3 : InterfaceCase::Case4;

  const double right = rel_entropy_flux(ctx.sys, step.u_plus, ctx.u_right) -
                       h_dot * rel_entropy(ctx.sys, step.u_plus, ctx.u_right);
  const double left = rel_entropy_flux(ctx.sys, step.u_minus, ctx.u_left) -
                      h_dot * rel_entropy(ctx.sys, step.u_minus, ctx.u_left);
  step.dissipation = right - ctx.weight_ratio * left;
  return step;
}

double pseudo_distance(const ShockContext& ctx, const FVField& field, double h) {
  const double a1 = ctx.a1(), a2 = ctx.a2();
  double E = 0;
  const int jh = field.cell_of(h);
  for (int j = 0; j < field.ncells; ++j) {
    const Vec& u = field.u[j];
    if (j < jh) {
      E += a1 * rel_entropy(ctx.sys, u, ctx.u_left) * field.dx;
    } else if (j > jh) {
      E += a2 * rel_entropy(ctx.sys, u, ctx.u_right) * field.dx;
    } else {
      const double a = field.x_min + j * field.dx;
      const double wl = std::clamp(h - a, 0.0, field.dx);
      E += a1 * rel_entropy(ctx.sys, u, ctx.u_left) * wl;
      E += a2 * rel_entropy(ctx.sys, u, ctx.u_right) * (field.dx - wl);
    }
  }
  return E;
}

ContractionRun run_contraction(const ShockContext& ctx, FVField field, double h0,
                               double t_end, const ContractionConstants& consts,
                               const RunOptions& opts) {
  ContractionRun run;
  run.constants = consts;
  double h = h0;

  run.E0 = pseudo_distance(ctx, field, h);
  run.min_E = run.E0;
  run.path.t.push_back(field.time);
  run.path.h.push_back(h);
  run.path.h_dot.push_back(0.0);
  run.path.dissipation.push_back(0.0);
  run.path.label.push_back(0);
  run.E.push_back(run.E0);

  double running_min = run.E0;
  const double trace_tol_abs = opts.trace_tol * ctx.s0 * ctx.s0;
  run.status = "completed";
  int prev_label = 0;

  while (field.time < t_end * (1.0 - 1e-12)) {
    double max_speed = 0;
    for (const auto& u : field.u) max_speed = std::max(max_speed, max_abs_eigen(ctx.sys, u));
    double dt = field.cfl * field.dx / (max_speed + consts.v_bound);
    dt = std::min(dt, t_end - field.time);

    const FilippovStep fs = filippov_step(ctx, field, h, dt, consts, opts.trace_offset);
    if (fs.boundary_hit) {
      run.status = "terminated_boundary";
      break;
    }

    FVStepResult sr;
    try {
      sr = fv_step(ctx.sys, field, dt, opts.tol_entropy);
    } catch (const BlowUpError&) {
      run.status = "blowup";
      break;
    }
    h = fs.h_next;
    ++run.steps;

    run.case_counts[static_cast<int>(fs.label) - 1]++;
    if (prev_label != 0 && prev_label != static_cast<int>(fs.label)) ++run.label_switches;
    prev_label = static_cast<int>(fs.label);
    if (fs.label == InterfaceCase::Case2) {
      const double em = ctx.weight_ratio * rel_entropy(ctx.sys, fs.u_minus, ctx.u_left) -
                        rel_entropy(ctx.sys, fs.u_minus, ctx.u_right);
      const double ep = ctx.weight_ratio * rel_entropy(ctx.sys, fs.u_plus, ctx.u_left) -
                        rel_entropy(ctx.sys, fs.u_plus, ctx.u_right);
      if (em > trace_tol_abs && ep < -trace_tol_abs) ++run.case2_strict;
    }
    if (!fs.in_window) ++run.window_violations;
    run.entropy_flags += sr.entropy_flags;
    run.max_entropy_residual = std::max(run.max_entropy_residual, sr.max_entropy_residual);
    run.max_dissipation = std::max(run.max_dissipation, fs.dissipation);

    const double E = pseudo_distance(ctx, field, h);
    run.min_E = std::min(run.min_E, E);
    running_min = std::min(running_min, E);
    const double drift = E - running_min;
    run.max_drift = std::max(run.max_drift, drift);
    if (field.time > 0)
      run.K_tol = std::max(run.K_tol, drift / (field.dx * field.time));

    if (run.steps % opts.record_every == 0 || field.time >= t_end * (1.0 - 1e-12)) {
      run.path.t.push_back(field.time);
      run.path.h.push_back(h);
      run.path.h_dot.push_back(fs.h_dot);
      run.path.dissipation.push_back(fs.dissipation);
      run.path.label.push_back(static_cast<int>(fs.label));
      run.E.push_back(E);
    }
  }
  run.E_end = run.E.empty() ? run.E0 : run.E.back();
  run.h_dot_in_window = run.window_violations == 0;
  run.final_field = std::move(field);
  return run;
}

}  // namespace acshock
