#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "acshock/relent.hpp"
#include "helpers.hpp"

using namespace acshock;
using namespace testing_oracles;

TEST_CASE("relative entropy: closed forms and positivity") {
  const auto burgers = make_burgers();
  CHECK(rel_entropy(burgers, Vec{1.0}, Vec{0.0}) == doctest::Approx(1.0));
  CHECK(rel_entropy(burgers, Vec{0.7}, Vec{0.7}) == doctest::Approx(0.0));

  const auto ie2 = make_isentropic_euler(2.0);
  // eta(a) = 1, eta(b) = 1.5, grad eta(b).(a-b) = -1  ->  eta(a|b) = 0.5
  CHECK(rel_entropy(ie2, Vec{1.0, 0.0}, Vec{1.0, 1.0}) ==
        doctest::Approx(0.5).epsilon(1e-14));

  Rng rng(3);
  for (const auto& sys : {make_isentropic_euler(1.4), make_full_euler(1.4)}) {
    for (int k = 0; k < 300; ++k) {
      Vec a = sys.to_conserved(rng.in_box(sys.working_box));
      Vec b = sys.to_conserved(rng.in_box(sys.working_box));
      if (!sys.admissible(a) || !sys.admissible(b)) continue;
      const double val = rel_entropy(sys, a, b);
      CHECK(val >= -1e-12);
      CHECK(rel_entropy(sys, a, a) == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("stable kernels agree with the defining difference formulas") {
  // The built-in systems carry product-form relative entropy kernels; they
  // must reproduce eta(a)-eta(b)-grad(eta)(b).(a-b) and its flux companion.
  Rng rng(101);
  for (const auto& sys :
       {make_burgers(), make_isentropic_euler(1.4), make_isentropic_euler(2.0),
        make_isentropic_euler(3.0), make_full_euler(1.4)}) {
    REQUIRE(sys.rel_entropy_fn);
    REQUIRE(sys.rel_entropy_flux_fn);
    for (int k = 0; k < 400; ++k) {
      Vec a = sys.to_conserved(rng.in_box(sys.working_box));
      Vec b = sys.to_conserved(rng.in_box(sys.working_box));
      if (!sys.admissible(a) || !sys.admissible(b)) continue;
      const double eta_direct =
          sys.entropy(a) - sys.entropy(b) - dot(entropy_gradient(sys, b), a - b);
      const double q_direct =
          sys.entropy_flux(a) - sys.entropy_flux(b) -
          dot(entropy_gradient(sys, b), sys.flux(a) - sys.flux(b));
      const double scale =
          1.0 + std::abs(sys.entropy(a)) + std::abs(sys.entropy(b)) + norm2(a - b);
      INFO(sys.id);
      CHECK(std::abs(sys.rel_entropy_fn(a, b) - eta_direct) < 1e-9 * scale);
      CHECK(std::abs(sys.rel_entropy_flux_fn(a, b) - q_direct) <
            1e-9 * scale * (1.0 + norm(b)));
    }
    // near-coincident pairs: the kernel must resolve the s^2 scale cleanly
    const Vec base = sys.default_basepoint();
    for (double eps : {1e-3, 1e-5, 1e-7}) {
      Vec a = base;
      for (int i = 0; i < sys.n; ++i) a[i] *= 1.0 + eps * (i + 1);
      const double val = sys.rel_entropy_fn(a, base);
      CHECK(val > 0);
      CHECK(val < 1e2 * eps * eps * norm2(base));
    }
  }
}

TEST_CASE("relative entropy flux: Burgers closed form") {
  const auto burgers = make_burgers();
  CHECK(rel_entropy_flux(burgers, Vec{1.0}, Vec{0.0}) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(rel_entropy_flux(burgers, Vec{0.0}, Vec{1.0}) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(rel_entropy_flux(burgers, Vec{0.4}, Vec{0.4}) == doctest::Approx(0.0));
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
    CHECK(rel_entropy_flux(burgers, Vec{a}, Vec{b}) ==
          doctest::Approx(burgers_rel_entropy_flux(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("shock context construction and the weight window") {
  const ShockContext ctx = burgers_unit_context();
  CHECK(ctx.s0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ctx.u_right[0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(ctx.sigma_lr == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(ctx.weight_ratio == doctest::Approx(11.0).epsilon(1e-12));

  CHECK(weight_window_ok(100.0, 1e-2, 1.0 + 100.0 * 1e-2));
  CHECK(weight_window_ok(100.0, 1e-2, 1.0 + 0.5 * 100.0 * 1e-2));
  CHECK_FALSE(weight_window_ok(100.0, 1e-2, 1.0 + 0.4 * 100.0 * 1e-2));
  CHECK_FALSE(weight_window_ok(100.0, 1e-2, 1.0 + 2.1 * 100.0 * 1e-2));

  // n-shock contexts are reduced through the mirror system
  const auto ie = make_isentropic_euler(1.4);
  const ShockContext nctx =
      make_shock_context(ie, 2, ie.default_basepoint(), 0.05, 20.0);
  CHECK(nctx.mirrored);
  CHECK(nctx.sys.id == "isentropic_euler_mirror");
  const double lam1_l = eigenvalues(nctx.sys, nctx.u_left)[0];
  const double lam1_r = eigenvalues(nctx.sys, nctx.u_right)[0];
  CHECK(lam1_r < nctx.sigma_lr);
  CHECK(nctx.sigma_lr < lam1_l);
}

TEST_CASE("tilde functionals against the symbolic Burgers oracle") {
  const ShockContext ctx = burgers_unit_context();
  CHECK(tilde_eta(ctx, Vec{1.0}) == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(tilde_q(ctx, Vec{1.0}) == doctest::Approx(-2.0 / 3.0).epsilon(1e-9));
  // u_R: eta_tilde = (1 + C s0) eta(u_R | u_L) > 0
  CHECK(tilde_eta(ctx, Vec{0.0}) == doctest::Approx(11.0).epsilon(1e-9));

  Rng rng(7);
  for (int k = 0; k < 300; ++k) {
    const double u = rng.uniform(0.3, 1.6);
    CHECK(tilde_eta(ctx, Vec{u}) ==
          doctest::Approx(burgers_unit_tilde_eta(u)).epsilon(1e-9));
    CHECK(tilde_q(ctx, Vec{u}) ==
          doctest::Approx(burgers_unit_tilde_q(u)).epsilon(1e-9));
  }
}

TEST_CASE("in_pi: endpoints and midpoint") {
  const ShockContext ctx = burgers_unit_context();
  CHECK(in_pi(ctx, ctx.u_left));
  CHECK_FALSE(in_pi(ctx, ctx.u_right));
  CHECK_FALSE(in_pi(ctx, Vec{0.5}));  // eta_tilde(0.5) = 2.5 > 0
}

TEST_CASE("tilde pair is an entropy pair: |grad q_tilde - grad eta_tilde f'| small") {
  const auto ie = make_isentropic_euler(1.4);
  const ShockContext ctx = make_shock_context(ie, 1, ie.default_basepoint(), 0.05, 20.0);
  Rng rng(13);
  for (int k = 0; k < 200; ++k) {
    Vec u = ctx.u_left;
    u[0] += rng.uniform(-0.3, 0.3);
    u[1] += rng.uniform(-0.3, 0.3);
    if (!ctx.sys.admissible(u)) continue;
    const Vec gq = fd_gradient([&](const Vec& w) { return tilde_q(ctx, w); }, u);
    const Vec ge = tilde_eta_gradient(ctx, u);
    const Mat J = flux_jacobian(ctx.sys, u);
    CHECK(norm(gq - left_mul(ge, J)) < 1e-6 * (1.0 + norm(gq)));
  }
}

TEST_CASE("analytic gradient and hessian of eta_tilde vs finite differences") {
  const auto ie = make_isentropic_euler(1.4);
  const ShockContext ctx = make_shock_context(ie, 1, ie.default_basepoint(), 0.05, 20.0);
  Rng rng(17);
  for (int k = 0; k < 100; ++k) {
    Vec u = ctx.u_left;
    u[0] += rng.uniform(-0.2, 0.2);
    u[1] += rng.uniform(-0.2, 0.2);
    const Vec ga = tilde_eta_gradient(ctx, u);
    const Vec gf = fd_gradient([&](const Vec& w) { return tilde_eta(ctx, w); }, u);
    CHECK(norm(ga - gf) < 1e-6 * (1.0 + norm(ga)));
    // Hessian identity: grad^2 eta_tilde = C s0 grad^2 eta
    const Mat Ha = tilde_eta_hessian(ctx, u);
    const Mat Hf = fd_hessian([&](const Vec& w) { return tilde_eta(ctx, w); }, u);
    CHECK(max_abs(Ha - Hf) < 1e-4 * (1.0 + max_abs(Ha)));
  }
  // Burgers check of the same gradient: eta_tilde' = 20u - 22
  const ShockContext bctx = burgers_unit_context();
  for (double u : {0.8, 1.0, 1.3}) {
    CHECK(tilde_eta_gradient(bctx, Vec{u})[0] ==
          doctest::Approx(20.0 * u - 22.0).epsilon(1e-12));
  }
}

TEST_CASE("boundary projection hits the quadratic roots (Burgers)") {
  const ShockContext ctx = burgers_unit_context();
  const auto [lo, hi] = burgers_unit_pi_roots();

  const Vec right = boundary_project(ctx, ctx.u_left, Vec{+1.0});
  CHECK(right[0] == doctest::Approx(hi).epsilon(1e-12));
  const Vec left = boundary_project(ctx, ctx.u_left, Vec{-1.0});
  CHECK(left[0] == doctest::Approx(lo).epsilon(1e-12));

  // residual |eta_tilde| below tolerance at returned points
  CHECK(std::abs(tilde_eta(ctx, right)) < boundary_tolerance(ctx));
  CHECK(std::abs(tilde_eta(ctx, left)) < boundary_tolerance(ctx));

  // a point already on the boundary is a fixed point
  const Vec again = boundary_project(ctx, right, Vec{+1.0});
  CHECK(again[0] == doctest::Approx(right[0]).epsilon(1e-13));

  // pointing away from Pi from outside: no crossing
  CHECK_THROWS_AS(boundary_project(ctx, Vec{2.0}, Vec{+1.0}), NotFoundError);
}

TEST_CASE("boundary projection residuals for isentropic Euler") {
  const auto ie = make_isentropic_euler(1.4);
  const ShockContext ctx = make_shock_context(ie, 1, ie.default_basepoint(), 0.05, 20.0);
  Rng rng(19);
  for (int k = 0; k < 100; ++k) {
    const Vec dir = rng.direction(2);
    const Vec ub = boundary_project(ctx, ctx.u_left, dir);
    CHECK(std::abs(tilde_eta(ctx, ub)) < 1e-10 * ctx.s0 * ctx.s0);
    // nearest-point refinement keeps (u_in - u) parallel to nu(u)
    const Vec un = boundary_project(ctx, ctx.u_left, dir, true);
    const Vec nu = pi_normal(ctx, un);
    Vec delta = ctx.u_left - un;
    delta = delta / norm(delta);
    CHECK(std::abs(std::abs(dot(delta, nu)) - 1.0) < 1e-6);
  }
}

TEST_CASE("normal field: scalar sign and finite-difference agreement") {
  const ShockContext ctx = burgers_unit_context();
  const auto [lo, hi] = burgers_unit_pi_roots();
  CHECK(pi_normal(ctx, Vec{hi})[0] == doctest::Approx(1.0));
  CHECK(pi_normal(ctx, Vec{lo})[0] == doctest::Approx(-1.0));

  const auto ie = make_isentropic_euler(1.4);
  const ShockContext ictx = make_shock_context(ie, 1, ie.default_basepoint(), 0.05, 20.0);
  Rng rng(23);
  for (int k = 0; k < 100; ++k) {
    const Vec ub = boundary_project(ictx, ictx.u_left, rng.direction(2));
    const Vec nu = pi_normal(ictx, ub);
    const Vec gf = fd_gradient([&](const Vec& w) { return tilde_eta(ictx, w); }, ub);
    CHECK(norm(nu - gf / norm(gf)) < 1e-6);
  }
}

TEST_CASE("Pi is convex in sampled two-point tests and contains u_L only") {
  const auto ie = make_isentropic_euler(1.4);
  const ShockContext ctx = make_shock_context(ie, 1, ie.default_basepoint(), 0.05, 20.0);
  Rng rng(29);
  const auto pts = sample_pi(ctx, 300, rng);
  REQUIRE(pts.size() >= 100);
  for (size_t i = 0; i + 1 < pts.size(); i += 2) {
    const Vec mid = 0.5 * (pts[i] + pts[i + 1]);
    CHECK(tilde_eta(ctx, mid) < 0.0);
  }
  CHECK(in_pi(ctx, ctx.u_left));
  CHECK_FALSE(in_pi(ctx, ctx.u_right));
}

TEST_CASE("pi diagnostics: diameter against the quadratic oracle (Burgers)") {
  const ShockContext ctx = burgers_unit_context();
  Rng rng(31);
  const auto diag = pi_diagnostics(ctx, 500, rng);
  const auto [lo, hi] = burgers_unit_pi_roots();
  CHECK(diag.diameter == doctest::Approx(hi - lo).epsilon(1e-10));
  CHECK(diag.min_grad_norm > 0);
  CHECK_FALSE(diag.partial);
}

TEST_CASE("diam(Pi) scaling: doubling C roughly halves the diameter") {
  // Burgers closed form: diam = 2 sqrt(1 + C s0) / C; with s0 = 1e-2 the ratio
  // between C = 100 and C = 200 is sqrt(2/3) * 2 = 1.633.
  const auto burgers = make_burgers();
  Rng rng(37);
  const ShockContext c100 = make_shock_context(burgers, 1, Vec{1.0}, 1e-2, 100.0);
  const ShockContext c200 = make_shock_context(burgers, 1, Vec{1.0}, 1e-2, 200.0);
  const double d100 = pi_diameter_estimate(c100, 8, rng);
  const double d200 = pi_diameter_estimate(c200, 8, rng);
  CHECK(d100 == doctest::Approx(2.0 * std::sqrt(2.0) / 100.0).epsilon(1e-8));
  CHECK(d200 == doctest::Approx(2.0 * std::sqrt(3.0) / 200.0).epsilon(1e-8));
  const double ratio = d100 / d200;
  CHECK(ratio > 1.5);
  CHECK(ratio < 2.5);

  // min |grad eta_tilde| on the boundary: closed form 2 s0 sqrt(1 + C s0)
  std::vector<Vec> boundary;
  pi_diameter_estimate(c100, 8, rng, &boundary);
  double min_grad = 1e300;
  for (const auto& b : boundary)
    min_grad = std::min(min_grad, norm(tilde_eta_gradient(c100, b)));
  CHECK(min_grad == doctest::Approx(2.0 * 1e-2 * std::sqrt(2.0)).epsilon(1e-8));
}

TEST_CASE("estimate_cstar against a dense 1-D scan (Burgers)") {
  const ShockContext ctx = burgers_unit_context();
  Rng rng(41);
  const auto est = estimate_cstar(ctx, 20000, rng);
  REQUIRE_FALSE(est.empty);
  CHECK(est.n_contributing > 0);

  // dense scan oracle over the working box
  double worst = 0;
  const auto [lo, hi] = burgers_unit_pi_roots();
  for (int k = 0; k <= 100000; ++k) {
    const double u = -3.0 + 6.0 * k / 100000.0;
    if (u > lo && u < hi) continue;  // inside Pi
    const double eta = burgers_unit_tilde_eta(u);
    const double q = burgers_unit_tilde_q(u);
    if (q > 0 || eta <= 0) continue;
    worst = std::max(worst, std::abs(q) / eta);
  }
  CHECK(est.value >= worst * 2.0 * 0.98);
  CHECK(est.value <= worst * 2.0 * 1.02);

  // monotone nondecreasing in the sample count on nested sample sets
  Rng rng_a(77);
  const double small = estimate_cstar(ctx, 2000, rng_a).value;
  Rng rng_b(77);
  const double large = estimate_cstar(ctx, 20000, rng_b).value;
  CHECK(large >= small);
}
