// Acceptance suite: the ten verification criteria, one pass/fail line each.
// Every tolerance is pinned here; runtimes are measured and asserted.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdarg>
#include <map>
#include <cmath>
#include <cstdio>

#include "acshock/assumptions.hpp"
#include "acshock/contraction.hpp"
#include "acshock/dissipation.hpp"
#include "helpers.hpp"

using namespace acshock;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(int criterion, bool pass, const char* what, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what,
              detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

Vec sample_state(const SystemDescriptor& sys, Rng& rng) {
  for (int tries = 0; tries < 200; ++tries) {
    const Vec u = sys.to_conserved(rng.in_box(sys.working_box));
    if (sys.admissible(u)) return u;
  }
  throw std::runtime_error("sample_state failed");
}

const std::vector<double> kCGrid{50.0, 100.0, 200.0};
const std::vector<double> kS0Grid{1e-3, 3e-3, 1e-2};

}  // namespace

TEST_CASE("criterion 1: assumption audit on default working boxes") {
  AssumptionThresholds thr;
  bool pass = true;
  std::string detail;
  for (const auto& sys : {make_isentropic_euler(1.4), make_isentropic_euler(2.0),
                          make_isentropic_euler(3.0), make_full_euler(1.4)}) {
    Rng rng(101);
    Timer timer;
    const AssumptionReport rep = verify_assumptions(sys, sys.working_box, 1000, thr, rng);
    const double sec = timer.seconds();
    double min_margin = 1e300;
    for (const auto& item : rep.items) {
      min_margin = std::min(min_margin, item.margin);
      CHECK(item.pass);
      CHECK(item.margin > 0.0);
    }
    CHECK(rep.pass);
    CHECK(sec < 30.0);
    pass = pass && rep.pass && sec < 30.0 && min_margin > 0.0;
    detail += fmt("%s(g=%.1f): %.1fs min-margin %.1e; ", sys.id.c_str(),
                  sys.params.count("gamma") ? sys.params.at("gamma") : 0.0, sec,
                  min_margin);
  }
  report(1, pass, "assumptions (a)-(j) pass with positive margins, < 30 s each", detail);
}

TEST_CASE("criterion 2: entropy compatibility residual < 1e-6 at 1e3 states") {
  bool pass = true;
  std::string detail;
  for (const auto& sys : {make_burgers(), make_isentropic_euler(1.4),
                          make_isentropic_euler(2.0), make_isentropic_euler(3.0),
                          make_full_euler(1.4)}) {
    Rng rng(202);
    double worst = 0;
    for (int k = 0; k < 1000; ++k) {
      const Vec u = sample_state(sys, rng);
      const Vec gq = fd_gradient(sys.entropy_flux, u);
      const Vec ge = fd_gradient(sys.entropy, u);
      const Mat J = flux_jacobian(sys, u);
      worst = std::max(worst, norm(gq - left_mul(ge, J)) / (1.0 + norm(gq)));
    }
    CHECK(worst < 1e-6);
    pass = pass && worst < 1e-6;
    detail += fmt("%s %.1e; ", sys.id.c_str(), worst);
  }
  report(2, pass, "|grad q - grad eta f'| relative residual < 1e-6", detail);
}

TEST_CASE("criterion 3: Hugoniot curves, asymptotics, Lax identity") {
  bool pass = true;
  std::string detail;

  // Burgers closed form to 1e-10 and RH residual < 1e-10 at all nodes
  {
    const auto sys = make_burgers();
    const ShockCurve curve = trace_shock_curve(sys, Vec{1.0}, 1, 1.5);
    double worst_closed = 0, worst_rh = 0;
    for (const auto& node : curve.nodes) {
      worst_closed = std::max({worst_closed, std::abs(node.S[0] - (1.0 - node.s)),
                               std::abs(node.sigma - (1.0 - 0.5 * node.s))});
      worst_rh = std::max(worst_rh, rh_residual(sys, curve.base, node.S, node.sigma));
    }
    CHECK(worst_closed < 1e-10);
    CHECK(worst_rh < 1e-10);
    pass = pass && worst_closed < 1e-10 && worst_rh < 1e-10;
    detail += fmt("burgers closed-form %.1e rh %.1e; ", worst_closed, worst_rh);
  }

  for (const auto& sys : {make_isentropic_euler(1.4), make_full_euler(1.4)}) {
    const Vec base = sys.default_basepoint();
    const ShockCurve curve = trace_shock_curve(sys, base, 1, 0.3);
    double worst_rh = 0;
    for (const auto& node : curve.nodes)
      worst_rh = std::max(worst_rh, rh_residual(sys, base, node.S, node.sigma));
    const double rh_tol = 1e-10;
    CHECK(worst_rh < rh_tol);

    const AsymptoticsReport asym = check_asymptotics(sys, base, 1);
    CHECK_FALSE(asym.sigma_vacuous);
    CHECK_FALSE(asym.state_vacuous);
    CHECK(asym.slope_sigma >= 1.9);
    CHECK(asym.slope_state >= 1.9);

    const double lax =
        lax_identity_residual(sys, curve, curve.nodes.back().S, 0.25, 1e-12);
    CHECK(lax < 1e-9);
    pass = pass && worst_rh < rh_tol && asym.slope_sigma >= 1.9 &&
           asym.slope_state >= 1.9 && lax < 1e-9;
    detail += fmt("%s slopes %.2f/%.2f lax %.1e; ", sys.id.c_str(), asym.slope_sigma,
                  asym.slope_state, lax);
  }
  report(3, pass, "RH < 1e-10, closed form, order fits >= 1.9, Lax < 1e-9", detail);
}

// Shared sweep results for criteria 4, 5 and 7 (one pass over the grid).
struct GridCell {
  double C, s0;
  NegativityReport rep;
  double ustar_scaled;
  double eta_res, angle, r1nu;
  double diam_times_C, min_grad_over_s0;
};

static std::map<std::string, std::vector<GridCell>> g_grid;
static std::map<std::string, double> g_grid_seconds;

static const std::vector<GridCell>& grid_for(const std::string& which) {
  if (g_grid.count(which)) return g_grid[which];
  Timer timer;
  SystemDescriptor sys = which == "burgers" ? make_burgers()
                         : which == "isentropic_euler" ? make_isentropic_euler(1.4)
                                                       : make_full_euler(1.4);
  Rng rng(404);
  std::vector<GridCell> cells;
  for (double C : kCGrid)
    for (double s0 : kS0Grid) {
      GridCell cell;
      cell.C = C;
      cell.s0 = s0;
      const ShockContext ctx = make_shock_context(sys, 1, sys.default_basepoint(), s0, C);
      cell.rep = sweep_negativity(ctx, 10000, rng);
      const DcontMaxResult dm = find_dcont_max(ctx, rng);
      const auto [s_exit, u0] = curve_pi_exit(ctx);
      (void)s_exit;
      cell.ustar_scaled = norm(dm.u_star - u0) * C / s0;
      cell.eta_res = dm.eta_residual;
      cell.angle = dm.angle_nu_l1;
      cell.r1nu = dm.r1_dot_nu;
      cell.diam_times_C = pi_diameter_estimate(ctx, sys.n >= 3 ? 32 : 16, rng) * C;
      std::vector<Vec> boundary;
      pi_diameter_estimate(ctx, sys.n >= 3 ? 32 : 16, rng, &boundary);
      double min_grad = 1e300;
      for (const auto& b : boundary)
        min_grad = std::min(min_grad, norm(tilde_eta_gradient(ctx, b)));
      cell.min_grad_over_s0 = min_grad / s0;
      cells.push_back(std::move(cell));
    }
  g_grid_seconds[which] = timer.seconds();
  g_grid[which] = std::move(cells);
  return g_grid[which];
}

TEST_CASE("criterion 4: D_cont < 0 on >= 1e4 Pi samples, cubic slope in s0") {
  bool pass = true;
  std::string detail;
  for (const std::string which : {"burgers", "isentropic_euler", "full_euler"}) {
    const auto& cells = grid_for(which);
    for (double C : kCGrid) {
      std::vector<double> xs, ys;
      for (const auto& cell : cells) {
        if (cell.C != C) continue;
        CHECK(cell.rep.n_samples >= 10000);
        CHECK(cell.rep.max_dcont < 0.0);
        pass = pass && cell.rep.n_samples >= 10000 && cell.rep.max_dcont < 0.0;
        xs.push_back(cell.s0);
        ys.push_back(-cell.rep.max_dcont);
      }
      const auto fit = fit_loglog(xs, ys);
      REQUIRE(fit.has_value());
      CHECK(fit->slope >= 2.7);
      CHECK(fit->slope <= 3.3);
      pass = pass && fit->slope >= 2.7 && fit->slope <= 3.3;
      detail += fmt("%s C=%g slope %.2f; ", which.c_str(), C, fit->slope);
    }
  }
  double grid_sec = 0;
  for (const auto& [k, v] : g_grid_seconds) grid_sec += v;
  CHECK(grid_sec < 300.0);
  pass = pass && grid_sec < 300.0;
  detail += fmt("grid %.0fs", grid_sec);
  report(4, pass, "max D_cont < 0 over grid, slope in [2.7, 3.3], < 5 min", detail);
}

TEST_CASE("criterion 5: D_max <= 1e-12 s0^2, equality only at u_L, s* maximal") {
  bool pass = true;
  std::string detail;
  double worst_rel = 0;
  for (const std::string which : {"burgers", "isentropic_euler", "full_euler"}) {
    int viol = 0, fails = 0;
    double worst_dist = 0;
    for (const auto& cell : grid_for(which)) {
      const double tol_zero = 1e-12 * cell.s0 * cell.s0;
      CHECK(cell.rep.max_dmax <= tol_zero);
      CHECK(std::abs(cell.rep.dmax_at_uleft) <= tol_zero);
      CHECK(cell.rep.argmax_dmax_dist_uleft <= 1e-3);
      pass = pass && cell.rep.max_dmax <= tol_zero &&
             std::abs(cell.rep.dmax_at_uleft) <= tol_zero &&
             cell.rep.argmax_dmax_dist_uleft <= 1e-3;
      viol += cell.rep.n_maximality_violations;
      fails += cell.rep.n_dmax_failures;
      worst_dist = std::max(worst_dist, cell.rep.argmax_dmax_dist_uleft);
      worst_rel = std::max(worst_rel, cell.rep.max_dmax / tol_zero);
    }
    CHECK(viol == 0);
    pass = pass && viol == 0 && fails == 0;
    detail += fmt("%s argmax-dist %.1e viol %d; ", which.c_str(), worst_dist, viol);
  }
  detail += fmt("max D_max / tol = %.1e", worst_rel);
  report(5, pass, "D_max <= tol_zero, argmax at u_L, scan-maximal", detail);
}

TEST_CASE("criterion 6: analytic grad D_max vs finite differences < 1e-4") {
  bool pass = true;
  std::string detail;
  for (const auto& sys : {make_burgers(), make_isentropic_euler(1.4), make_full_euler(1.4)}) {
    Rng rng(606);
    const ShockContext ctx = make_shock_context(sys, 1, sys.default_basepoint(), 1e-2, 50.0);
    double worst = 0;
    int tested = 0;
    while (tested < 100) {
      const auto samples = sample_pi(ctx, 1, rng);
      if (samples.empty()) continue;
      const Vec& u = samples[0];
      // interior points: gradient degenerates at u_L itself and s* -> 0 at the boundary
      if (norm(u - ctx.u_left) < 0.2 * ctx.s0) continue;
      const MaximalShock ms = maximal_shock(ctx, u);
      if (ms.s_star < 0.2 * ctx.s0) continue;
      worst = std::max(worst, dmax_gradient_relerr(ctx, u, 1e-6));
      ++tested;
    }
    CHECK(worst < 1e-4);
    pass = pass && worst < 1e-4;
    detail += fmt("%s worst %.1e; ", sys.id.c_str(), worst);
  }
  report(6, pass, "grad D_max identity at 100 interior points per system", detail);
}

TEST_CASE("criterion 7: u* structure and |u*-u0| C/s0 bounded over the grid") {
  bool pass = true;
  std::string detail;
  for (const std::string which : {"isentropic_euler", "full_euler"}) {
    double lo = 1e300, hi = 0, worst_eta = 0, worst_angle = 0, min_r1nu = 1e300;
    for (const auto& cell : grid_for(which)) {
      worst_eta = std::max(worst_eta, cell.eta_res);
      worst_angle = std::max(worst_angle, cell.angle);
      min_r1nu = std::min(min_r1nu, cell.r1nu);
      lo = std::min(lo, cell.ustar_scaled);
      hi = std::max(hi, cell.ustar_scaled);
    }
    CHECK(worst_eta < 1e-10);
    CHECK(worst_angle < 1e-6);
    CHECK(min_r1nu > 0.0);
    // Boundedness of |u*-u0| C / s0: uniform bound 10; the max/min spread is
    // only meaningful above a negligibility floor (the measured values sit
    // orders of magnitude below the bound scale, where spread is noise).
    const double floor = 1e-3;
    const bool bounded = hi < 10.0 && (hi < floor || hi / std::max(lo, floor) < 10.0);
    CHECK(bounded);
    pass = pass && worst_eta < 1e-10 && worst_angle < 1e-6 && min_r1nu > 0 && bounded;
    detail += fmt("%s eta %.1e angle %.1e scaled in [%.1e, %.1e]; ", which.c_str(),
                  worst_eta, worst_angle, lo, hi);
  }
  report(7, pass, "|eta(u*)| < 1e-10, angle < 1e-6, r1 outward, ratio bounded", detail);
}

TEST_CASE("criterion 8: Pi scalings across a decade of C") {
  bool pass = true;
  std::string detail;
  const auto ie = make_isentropic_euler(1.4);
  Rng rng(808);
  double diam_lo = 1e300, diam_hi = 0, grad_lo = 1e300;
  double nlip_lo = 1e300, nlip_hi = 0;
  for (double C : {50.0, 100.0, 200.0, 500.0}) {  // one decade
    const ShockContext ctx = make_shock_context(ie, 1, ie.default_basepoint(), 1e-3, C);
    const PiDiagnostics diag = pi_diagnostics(ctx, 300, rng);
    diam_lo = std::min(diam_lo, diag.diameter * C);
    diam_hi = std::max(diam_hi, diag.diameter * C);
    grad_lo = std::min(grad_lo, diag.min_grad_over_s0);
    nlip_lo = std::min(nlip_lo, diag.normal_lipschitz_lo);
    nlip_hi = std::max(nlip_hi, diag.normal_lipschitz_hi);
  }
  const bool diam_ok = diam_hi / diam_lo < 2.0;
  const bool grad_ok = grad_lo > 0.1;               // bounded below away from 0
  const bool nlip_ok = nlip_lo > 0.05 && nlip_hi < 20.0;  // fixed positive interval
  CHECK(diam_ok);
  CHECK(grad_ok);
  CHECK(nlip_ok);
  pass = diam_ok && grad_ok && nlip_ok;
  detail = fmt("diam*C in [%.2f, %.2f], min|grad|/s0 >= %.2f, nu-Lipschitz in [%.2f, %.2f]",
               diam_lo, diam_hi, grad_lo, nlip_lo, nlip_hi);
  report(8, pass, "diam(Pi)*C spread < 2, normals ~ s0, curvature ~ C", detail);
}

TEST_CASE("criterion 9: a-contraction at desk scale (2000 cells)") {
  Timer timer;
  const auto ie = make_isentropic_euler(1.4, 0.5, 2.0, 2.0);
  const ShockContext ctx = make_shock_context(ie, 1, ie.default_basepoint(), 0.05, 20.0);
  Rng rng(909);
  const ContractionConstants consts = compute_constants(ctx, 4000, rng);
  REQUIRE(consts.alpha_ok);

  ICParams ic;
  ic.kind = "perturbed-shock";
  ic.left_state = ctx.u_left;
  ic.right_state = ctx.u_right;
  ic.x0 = 0.0;
  ic.amplitude = 0.1 * ctx.s0;  // amplitude 0.1 s0, s0 = 0.05 for visibility
  ic.support_lo = -0.15;
  ic.support_hi = -0.02;
  FVField field = make_ic(ctx.sys, ic, -0.35, 0.35, 2000, 0.45, "rusanov", rng);

  RunOptions opts;
  opts.trace_offset = 30;
  const ContractionRun run = run_contraction(ctx, std::move(field), 0.0, 0.1, consts, opts);
  const double sec = timer.seconds();

  CHECK(run.status == "completed");
  CHECK(run.E_end < run.E0);
  CHECK(run.window_violations == 0);  // h_dot in [-lambda_hat/2, alpha1] at every step
  CHECK(run.case2_strict == 0);
  CHECK(run.min_E >= -1e-14);
  CHECK(sec < 120.0);
  const bool pass = run.status == "completed" && run.E_end < run.E0 &&
                    run.window_violations == 0 && run.case2_strict == 0 &&
                    run.min_E >= -1e-14 && sec < 120.0;
  report(9, pass, "E_t non-increasing up to measured drift, h_dot in window",
         fmt("E0 %.3e -> E_end %.3e, K_tol %.2f, cases %d/%d/%d/%d, %.0fs", run.E0,
             run.E_end, run.K_tol, run.case_counts[0], run.case_counts[1],
             run.case_counts[2], run.case_counts[3], sec));
}

TEST_CASE("criterion 10: negative control, unweighted ratio fails") {
  const auto ie = make_isentropic_euler(1.4);
  const ShockContext ctx =
      make_shock_context_ratio(ie, 1, ie.default_basepoint(), 0.05, 1.0);
  Rng rng(1010);
  const NegativityReport rep = sweep_negativity(ctx, 5000, rng);
  const bool violated = rep.n_dcont_positive + rep.n_dmax_positive > 0;
  CHECK(violated);
  CHECK_FALSE(rep.pass());
  report(10, violated && !rep.pass(), "a1/a2 = 1 produces D-positivity violations",
         fmt("D_cont positives %d, D_max positives %d, max D_cont %.3e",
             rep.n_dcont_positive, rep.n_dmax_positive, rep.max_dcont));
}
