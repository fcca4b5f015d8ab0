#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "acshock/geometry.hpp"

namespace acshock {

// ---------------------------------------------------------------------------
// Root finding

/// Brent's method on a bracketing interval [a, b] with f(a) f(b) <= 0.
/// Throws std::invalid_argument if the root is not bracketed.
double brent(const std::function<double(double)>& f, double a, double b,
             double xtol = 1e-14, int max_iter = 200);

// ---------------------------------------------------------------------------
// Quadrature

/// Adaptive Simpson integration to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-11, int max_depth = 40);

/// Composite Simpson with a fixed number of panels (panels >= 1).
double fixed_simpson(const std::function<double(double)>& f, double a, double b,
                     int panels);

// ---------------------------------------------------------------------------
// Cubic spline interpolation (not-a-knot end conditions)

class CubicSpline {
 public:
  CubicSpline() = default;
  // xs strictly increasing, xs.size() == ys.size() >= 2.
  CubicSpline(std::vector<double> xs, std::vector<double> ys);

  double eval(double x) const;
  double deriv(double x) const;
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  int find_interval(double x) const;
  std::vector<double> x_, y_, m_;  // m_: second derivatives at the knots
};

// ---------------------------------------------------------------------------
// Stable Bregman remainders (error proportional to the value, not to the
// magnitudes entering the differences; series below |w| = 0.4, direct above)

/// (1+w)^p - 1 - p w
double bregman_pow(double w, double p);
/// (1+w) log1p(w) - w
double bregman_xlogx(double w);
/// w - log1p(w)
double bregman_neglog(double w);
/// (1+w)^p - 1
double pow1p_m1(double w, double p);

// ---------------------------------------------------------------------------
// Finite differences (central, step scaled per component)

Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& u,
                double rel_step = 1e-6);
Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& u,
                double rel_step = 1e-6);
Mat fd_hessian(const std::function<double(const Vec&)>& f, const Vec& u,
               double rel_step = 1e-4);

// ---------------------------------------------------------------------------
// Eigen decomposition of small real matrices

struct EigenDecomp {
  Vec lambda;                    // ascending
  std::array<Vec, kMaxDim> right;
  std::array<Vec, kMaxDim> left;  // rows of the inverse of the right-eigvec matrix, normalized later
};

/// Real eigendecomposition of an n x n matrix, n in {1,2,3}, requiring all
/// eigenvalues real. Returns nullopt when a complex pair is detected.
std::optional<EigenDecomp> eig_real_small(const Mat& A);

/// Eigenvalues of a symmetric matrix (Jacobi rotations), ascending.
Vec sym_eigenvalues(const Mat& A);

// ---------------------------------------------------------------------------
// Least squares

/// Slope/intercept of least-squares line through (x_i, y_i).
struct LineFit {
  double slope = 0, intercept = 0;
};
LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

/// Log-log slope fit; entries with y <= floor are dropped. Returns nullopt if
/// fewer than two usable points remain.
std::optional<LineFit> fit_loglog(const std::vector<double>& xs,
                                  const std::vector<double>& ys,
                                  double y_floor = 0.0);

// ---------------------------------------------------------------------------
// Nelder-Mead simplex minimization (dimensions 1..3)

struct NelderMeadOptions {
  double initial_step = 0.1;
  double ftol = 1e-14;
  double xtol = 1e-12;
  int max_iter = 2000;
};

struct NelderMeadResult {
  Vec x;
  double fmin = 0;
  int iterations = 0;
  bool converged = false;
};

NelderMeadResult nelder_mead(const std::function<double(const Vec&)>& f,
                             const Vec& x0, const NelderMeadOptions& opts = {});

// ---------------------------------------------------------------------------
// Deterministic RNG utilities

class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}
  double uniform(double a, double b) {
    return a + (b - a) * unit_(gen_);
  }
  double normal() { return normal_(gen_); }
  Vec in_box(const Box& box) {
    Vec u(box.lo.n);
    for (int i = 0; i < u.n; ++i) u[i] = uniform(box.lo[i], box.hi[i]);
    return u;
  }
  /// Uniform direction on the unit sphere in dimension n.
  Vec direction(int n) {
    while (true) {
      Vec d(n);
      for (int i = 0; i < n; ++i) d[i] = normal();
      double m = norm(d);
      if (m > 1e-12) return d / m;
    }
  }
  uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace acshock
