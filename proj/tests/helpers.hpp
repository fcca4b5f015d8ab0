#pragma once

#include <cmath>

#include "acshock/relent.hpp"
#include "acshock/system.hpp"

// Shared fixtures and independent oracles for the test suites. Everything in
// here must stay independent of the implementation paths it checks: closed
// forms, dense scans and finite differences only.

namespace testing_oracles {

using namespace acshock;

// Burgers closed forms: f = u^2/2, eta = u^2, q = 2u^3/3.
inline double burgers_rel_entropy(double a, double b) { return (a - b) * (a - b); }
inline double burgers_rel_entropy_flux(double a, double b) {
  return (2.0 / 3.0) * a * a * a + (1.0 / 3.0) * b * b * b - a * a * b;
}

// The reference context from the unit examples: u_L = 1, u_R = 0, C = 10,
// s0 = 1, weight ratio 11.
inline ShockContext burgers_unit_context() {
  SystemDescriptor sys = make_burgers();
  return make_shock_context(sys, 1, Vec{1.0}, 1.0, 10.0);
}

// eta_tilde and q_tilde of that context, symbolically.
inline double burgers_unit_tilde_eta(double u) {
  return 11.0 * (u - 1.0) * (u - 1.0) - u * u;
}
inline double burgers_unit_tilde_q(double u) {
  return 11.0 * burgers_rel_entropy_flux(u, 1.0) - burgers_rel_entropy_flux(u, 0.0);
}

// Roots of the quadratic eta_tilde: 10u^2 - 22u + 11 = 0.
inline std::pair<double, double> burgers_unit_pi_roots() {
  const double disc = std::sqrt(22.0 * 22.0 - 4.0 * 10.0 * 11.0);
  return {(22.0 - disc) / 20.0, (22.0 + disc) / 20.0};
}

// Dense 1-D scan argmax helper.
template <typename F>
std::pair<double, double> scan_max(F&& f, double lo, double hi, int n) {
  double best_x = lo, best = f(lo);
  for (int k = 1; k <= n; ++k) {
    const double x = lo + (hi - lo) * k / n;
    const double v = f(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  return {best_x, best};
}

}  // namespace testing_oracles
