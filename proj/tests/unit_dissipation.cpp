#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "acshock/dissipation.hpp"
#include "helpers.hpp"

using namespace acshock;
using namespace testing_oracles;

namespace {

// Symbolic D_cont for the Burgers unit context: -q_tilde(u) + u eta_tilde(u).
double burgers_unit_dcont(double u) {
  return -burgers_unit_tilde_q(u) + u * burgers_unit_tilde_eta(u);
}

ShockContext isentropic_context(double s0 = 0.05, double C = 20.0) {
  const auto ie = make_isentropic_euler(1.4);
  return make_shock_context(ie, 1, ie.default_basepoint(), s0, C);
}

}  // namespace

TEST_CASE("d_cont: symbolic value and boundary simplification") {
  const ShockContext ctx = burgers_unit_context();
  CHECK(d_cont(ctx, Vec{1.0}) == doctest::Approx(-1.0 / 3.0).epsilon(1e-9));

  // on the boundary, D_cont = -q_tilde
  const auto [lo, hi] = burgers_unit_pi_roots();
  for (double r : {lo, hi})
    CHECK(d_cont(ctx, Vec{r}) == doctest::Approx(-burgers_unit_tilde_q(r)).epsilon(1e-9));

  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    const double u = rng.uniform(0.4, 1.5);
    CHECK(d_cont(ctx, Vec{u}) == doctest::Approx(burgers_unit_dcont(u)).epsilon(1e-9));
  }
}

TEST_CASE("d_rh: exact zero at the defining shock, reductions, symbolic value") {
  const ShockContext ctx = burgers_unit_context();

  // (u_L, u_R, sigma_LR) -> 0, exactly (every term vanishes identically)
  CHECK(d_rh(ctx, ctx.u_left, ctx.u_right, ctx.sigma_lr) ==
        doctest::Approx(0.0).epsilon(1e-14));

  // degenerate shock u- = u+ = u, sigma = lambda_1(u): reduces to D_cont(u)
  for (double u : {0.8, 1.0, 1.2}) {
    CHECK(d_rh(ctx, Vec{u}, Vec{u}, u) ==
          doctest::Approx(d_cont(ctx, Vec{u})).epsilon(1e-12));
  }

  // Burgers ctx, u- = 1, u+ = 0.2, sigma = 0.6 (exact RH): symbolic -7/375
  CHECK(d_rh(ctx, Vec{1.0}, Vec{0.2}, 0.6) ==
        doctest::Approx(-7.0 / 375.0).epsilon(1e-12));
  CHECK(d_rh(ctx, Vec{1.0}, Vec{0.2}, 0.6) < 0.0);

  // RH violation is rejected
  CHECK_THROWS_AS(d_rh(ctx, Vec{1.0}, Vec{0.2}, 0.9), InconsistentShockError);
}

TEST_CASE("maximal shock: Burgers g(s) = -1 + s^2 and the u_L special case") {
  const ShockContext ctx = burgers_unit_context();

  // u = u_L: u+ = u_R, s* = s0, sigma = sigma_LR
  const MaximalShock at_left = maximal_shock(ctx, ctx.u_left);
  CHECK(at_left.s_star == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(at_left.u_plus[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(at_left.sigma == doctest::Approx(0.5).epsilon(1e-10));

  // interior point: dense scan oracle for D_max
  const Vec u{0.95};  // 0.95 u_L + 0.05 u_R
  const MaximalShock ms = maximal_shock(ctx, u);
  const double dm = d_max(ctx, ms);
  CHECK(dm < 0.0);
  // scan oracle: D_RH(u, u - s, u - s/2) over s on the curve from u
  auto f_scan = [&](double s) {
    const double up = u[0] - s, sig = u[0] - 0.5 * s;
    const double right = burgers_rel_entropy_flux(up, 0.0) -
                         sig * burgers_rel_entropy(up, 0.0);
    const double left = burgers_rel_entropy_flux(u[0], 1.0) -
                        sig * burgers_rel_entropy(u[0], 1.0);
    return right - 11.0 * left;
  };
  const auto [s_best, scan_best] = scan_max(f_scan, 1e-6, 2.5, 10000);
  CHECK(dm == doctest::Approx(scan_best).epsilon(1e-7));
  CHECK(ms.s_star == doctest::Approx(s_best).epsilon(1e-3));

  // precondition: u outside Pi is rejected
  CHECK_THROWS_AS(maximal_shock(ctx, Vec{0.5}), std::invalid_argument);

  // near the boundary s* shrinks like sqrt(-eta_tilde/c*)
  const auto [lo_root, hi_root] = burgers_unit_pi_roots();
  const Vec near_bd{hi_root - 1e-4};
  const MaximalShock small = maximal_shock(ctx, near_bd);
  const double eta = tilde_eta(ctx, near_bd);
  CHECK(small.s_star < 2.0 * std::sqrt(-eta / 1.0));  // c* = 1 for eta = u^2
}

TEST_CASE("d_max is the scan maximum and vanishes only at u_L (isentropic)") {
  const ShockContext ctx = isentropic_context();
  Rng rng(11);
  const auto samples = sample_pi(ctx, 60, rng);
  REQUIRE(samples.size() >= 30);
  const double tol_zero = 1e-12 * ctx.s0 * ctx.s0;
  for (const auto& u : samples) {
    const MaximalShock ms = maximal_shock(ctx, u);
    const double dm = d_max(ctx, ms);
    CHECK(dm <= tol_zero);
    const double scan = d_max_scan(ctx, ms, 200);
    CHECK(scan <= dm + 1e-12 * (1.0 + std::abs(dm)));
  }
  // D_max(u_L) = 0 to tol_zero, via u+(u_L) = u_R
  CHECK(std::abs(d_max(ctx, ctx.u_left)) <= tol_zero);
}

TEST_CASE("monotone g: s* unique (finite differences along the curve)") {
  const ShockContext ctx = isentropic_context();
  Rng rng(13);
  const auto samples = sample_pi(ctx, 10, rng);
  for (const auto& u : samples) {
    const MaximalShock ms = maximal_shock(ctx, u);
    const double eta_u = tilde_eta(ctx, u);
    double prev = eta_u + rel_entropy(ctx.sys, u, ms.curve.nodes[0].S);
    for (size_t k = 1; k < ms.curve.nodes.size(); ++k) {
      const double cur = eta_u + rel_entropy(ctx.sys, u, ms.curve.nodes[k].S);
      CHECK(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("analytic gradient of D_max: zero at u_L, matches FD in the interior") {
  const ShockContext ctx = burgers_unit_context();
  const MaximalShock at_left = maximal_shock(ctx, ctx.u_left);
  CHECK(norm(dmax_gradient_analytic(ctx, at_left)) < 1e-8);

  // Burgers interior points: relative error < 1e-5
  for (double u : {0.9, 0.95, 1.05, 1.1}) {
    CHECK(dmax_gradient_relerr(ctx, Vec{u}, 1e-6) < 1e-5);
  }

  // isentropic Euler interior points: relative error < 1e-4
  const ShockContext ictx = isentropic_context();
  Rng rng(17);
  int tested = 0;
  for (int k = 0; k < 60 && tested < 20; ++k) {
    const auto samples = sample_pi(ictx, 1, rng);
    if (samples.empty()) continue;
    const Vec u = samples[0];
    if (norm(u - ictx.u_left) < 0.2 * ictx.s0) continue;  // gradient degenerates at u_L
    const MaximalShock ms = maximal_shock(ictx, u);
    if (ms.s_star < 0.2 * ictx.s0) continue;
    CHECK(dmax_gradient_relerr(ictx, u, 1e-6) < 1e-4);
    ++tested;
  }
  CHECK(tested >= 10);
}

TEST_CASE("find_dcont_max: scalar boundary points and the scan oracle") {
  const ShockContext ctx = burgers_unit_context();
  Rng rng(19);
  const DcontMaxResult res = find_dcont_max(ctx, rng);
  const auto [lo, hi] = burgers_unit_pi_roots();

  // scan oracle over Pi: D_cont is maximized at one of the two roots
  const auto [x_best, f_best] = scan_max(burgers_unit_dcont, lo, hi, 200000);
  CHECK(res.value == doctest::Approx(f_best).epsilon(1e-6));
  CHECK(res.u_star[0] == doctest::Approx(x_best).epsilon(1e-4));

  // the maximum sits at the boundary point where r_1 = -1 points outward,
  // i.e. the left root (D_cont decreases along +u inside Pi)
  CHECK(res.u_star[0] == doctest::Approx(lo).epsilon(1e-10));
  CHECK(res.value == doctest::Approx(-burgers_unit_tilde_q(lo)).epsilon(1e-9));
  CHECK(res.r1_dot_nu > 0);
  CHECK(res.eta_residual < 1e-10);
}

TEST_CASE("find_dcont_max: isentropic Euler optimality residuals") {
  const ShockContext ctx = isentropic_context();
  Rng rng(23);
  const DcontMaxResult res = find_dcont_max(ctx, rng);
  CHECK(res.eta_residual < 1e-10);
  CHECK(res.angle_nu_l1 < 1e-6);
  CHECK(res.r1_dot_nu > 0);
  CHECK(res.unique_ok);

  // maximum dominates a fresh Pi sample set
  const auto samples = sample_pi(ctx, 2000, rng);
  for (const auto& u : samples)
    CHECK(d_cont(ctx, u) <= res.value + 1e-12 * (1.0 + std::abs(res.value)));
}

TEST_CASE("sweep_negativity: Burgers and isentropic pass, argmax at u_L") {
  const auto burgers = make_burgers();
  const ShockContext bc = make_shock_context(burgers, 1, Vec{1.0}, 1e-2, 50.0);
  Rng rng(29);
  const NegativityReport rb = sweep_negativity(bc, 1500, rng);
  INFO("max_dcont=" << rb.max_dcont << " max_dmax=" << rb.max_dmax);
  CHECK(rb.pass_dcont);
  CHECK(rb.pass_dmax);
  CHECK(rb.pass_argmax_near_uleft);
  CHECK(rb.pass_maximality);
  CHECK(rb.max_dcont < 0);
  CHECK(rb.dcont_at_u0 < 0);

  const ShockContext ic = isentropic_context(1e-2, 100.0);
  const NegativityReport ri = sweep_negativity(ic, 800, rng);
  INFO("max_dcont=" << ri.max_dcont << " max_dmax=" << ri.max_dmax);
  CHECK(ri.pass());
}

TEST_CASE("negative control: unweighted ratio breaks negativity (isentropic)") {
  const auto ie = make_isentropic_euler(1.4);
  const ShockContext ctx =
      make_shock_context_ratio(ie, 1, ie.default_basepoint(), 0.05, 1.0);
  CHECK(ctx.C == doctest::Approx(0.0));
  Rng rng(31);
  const NegativityReport rep = sweep_negativity(ctx, 3000, rng);
  INFO("max_dcont=" << rep.max_dcont << " positives=" << rep.n_dcont_positive);
  CHECK_FALSE(rep.pass());
  CHECK(rep.n_dcont_positive + rep.n_dmax_positive > 0);
}

TEST_CASE("scaling study: Burgers slopes and Hessian definiteness") {
  const auto burgers = make_burgers();
  Rng rng(37);
  const ScalingFit fit = scaling_study(burgers, Vec{1.0}, 1, {50.0, 100.0},
                                       {1e-3, 3e-3, 1e-2}, 400, rng);
  REQUIRE(fit.slopes.size() == 2);
  for (double slope : fit.slopes) {
    INFO("slope " << slope);
    CHECK(slope > 2.7);
    CHECK(slope < 3.3);
  }
  CHECK(fit.diam_ratio < 2.0);
  for (const auto& cell : fit.cells) {
    INFO("cell C=" << cell.C << " s0=" << cell.s0 << " err=" << cell.error);
    CHECK(cell.error.empty());
    CHECK(cell.hessian_negdef);
    CHECK(cell.sweep_pass);
  }
}
