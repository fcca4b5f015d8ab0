#pragma once

#include <functional>
#include <map>
#include <string>

#include "acshock/errors.hpp"
#include "acshock/geometry.hpp"
#include "acshock/numerics.hpp"

namespace acshock {

/// Normalized eigenstructure at a state: |l^i| = |r_i| = 1, l^i . r_j = 0 for
/// i != j, l^i . r_i > 0. The first family carries the sign convention
/// grad(lambda_1) . r_1 < 0 and the last family grad(lambda_n) . r_n > 0
/// wherever genuine nonlinearity makes that meaningful.
struct EigenBasis {
  int n = 0;
  Vec lambda;                      // ascending
  std::array<Vec, kMaxDim> right;
  std::array<Vec, kMaxDim> left;
};

/// A hyperbolic system of conservation laws with one strictly convex entropy.
/// Immutable after construction; all operations are pure in (sys, u).
struct SystemDescriptor {
  std::string id;
  int n = 0;

  std::function<Vec(const Vec&)> flux;
  std::function<double(const Vec&)> entropy;
  std::function<double(const Vec&)> entropy_flux;

  /// Open admissible region (e.g. rho > 0 away from vacuum).
  std::function<bool(const Vec&)> admissible;

  /// Compact working box, expressed in the system's sampling chart
  /// (primitive variables for the Euler systems, conserved otherwise).
  Box working_box;
  std::function<Vec(const Vec&)> to_conserved;   // chart -> conserved
  std::function<Vec(const Vec&)> to_primitive;   // conserved -> chart

  // Optional analytic pieces; finite differences fill in when absent.
  std::function<Mat(const Vec&)> flux_jacobian_fn;
  std::function<Vec(const Vec&)> entropy_gradient_fn;
  std::function<Mat(const Vec&)> entropy_hessian_fn;
  std::function<EigenBasis(const Vec&)> eigen_fn;   // sorted, unit, l.r>0; no orientation applied
  std::function<double(const Vec&)> max_abs_eigen_fn;

  // Cancellation-free relative entropy kernels. The generic difference form
  // eta(a) - eta(b) - grad(eta)(b).(a-b) has absolute rounding error at the
  // scale of eta itself, which drowns the s0^2-sized dissipation values the
  // verification sweeps must resolve; these evaluate the same quantities with
  // error proportional to the value.
  std::function<double(const Vec&, const Vec&)> rel_entropy_fn;
  std::function<double(const Vec&, const Vec&)> rel_entropy_flux_fn;

  std::map<std::string, double> params;

  /// A representative interior state in chart coordinates (reference point for
  /// default basepoints and asymptotic studies).
  Vec reference_chart;

  bool in_working(const Vec& u) const { return working_box.contains(to_primitive(u)); }
  Vec default_basepoint() const {
    return to_conserved(reference_chart.n > 0 ? reference_chart : working_box.center());
  }
};

// ---------------------------------------------------------------------------
// Operations

Vec flux(const SystemDescriptor& sys, const Vec& u);
Mat flux_jacobian(const SystemDescriptor& sys, const Vec& u);
std::pair<double, double> entropy_pair(const SystemDescriptor& sys, const Vec& u);

Vec entropy_gradient(const SystemDescriptor& sys, const Vec& u);
Mat entropy_hessian(const SystemDescriptor& sys, const Vec& u);
double max_abs_eigen(const SystemDescriptor& sys, const Vec& u);

/// Sorted eigenvalues only (no orientation work).
Vec eigenvalues(const SystemDescriptor& sys, const Vec& u);

/// Full eigenstructure. When `prev` is given, eigenvector signs are chosen to
/// maximize continuity with it (for continuation along curves); otherwise the
/// extremal-family sign conventions are applied. Throws DegeneracyError when
/// an extremal eigenvalue gap falls below 1e-8 * max|lambda|.
EigenBasis eigenstructure(const SystemDescriptor& sys, const Vec& u,
                          const EigenBasis* prev = nullptr);

/// Directional derivative grad(lambda_i) . dir at u (central differences on
/// the sorted eigenvalues).
double eigenvalue_directional(const SystemDescriptor& sys, const Vec& u, int family,
                              const Vec& dir, double rel_step = 1e-6);

/// The system u_t - f(u)_x = 0: flux and entropy flux negated, eigen-order
/// reversed. An n-shock of `sys` is a 1-shock of the mirror.
SystemDescriptor mirror_system(const SystemDescriptor& sys);

// ---------------------------------------------------------------------------
// Built-in systems

SystemDescriptor make_burgers(double u_lo = -3.0, double u_hi = 3.0);
SystemDescriptor make_isentropic_euler(double gamma,
                                       double rho_lo = 0.1, double rho_hi = 10.0,
                                       double v_max = 10.0);
SystemDescriptor make_full_euler(double gamma,
                                 double rho_lo = 0.1, double rho_hi = 10.0,
                                 double v_max = 10.0,
                                 double e_lo = 0.1, double e_hi = 50.0);
/// Linear symmetric system f(u) = A u with entropy |u|^2 / 2; genuinely
/// nonlinear it is not -- the audit's negative control.
SystemDescriptor make_linear2(const Mat& A_sym, double u_max = 2.0);

/// Factory by id: "burgers", "isentropic_euler", "full_euler", "linear2".
SystemDescriptor make_system(const std::string& id,
                             const std::map<std::string, double>& params);

}  // namespace acshock
