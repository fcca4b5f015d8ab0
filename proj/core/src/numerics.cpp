#include "acshock/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace acshock {

bool solve_dense(double* A, double* b, int m) {
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(A[r * m + col]) > std::abs(A[piv * m + col])) piv = r;
    if (A[piv * m + col] == 0.0) return false;
    if (piv != col) {
      for (int j = 0; j < m; ++j) std::swap(A[col * m + j], A[piv * m + j]);
      std::swap(b[col], b[piv]);
    }
    const double d = A[col * m + col];
    for (int r = col + 1; r < m; ++r) {
      const double factor = A[r * m + col] / d;
      if (factor == 0.0) continue;
      for (int j = col; j < m; ++j) A[r * m + j] -= factor * A[col * m + j];
      b[r] -= factor * b[col];
    }
  }
  for (int r = m - 1; r >= 0; --r) {
    double s = b[r];
    for (int j = r + 1; j < m; ++j) s -= A[r * m + j] * b[j];
    b[r] = s / A[r * m + r];
  }
  return true;
}

// ---------------------------------------------------------------------------

double brent(const std::function<double(double)>& f, double a, double b,
             double xtol, int max_iter) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0)
    throw std::invalid_argument("brent: root not bracketed");
  double c = a, fc = fa, d = b - a, e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if (fb * fc > 0.0) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
  }
  return b;
}

// ---------------------------------------------------------------------------

namespace {

double simpson_panel(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                            double b, double fa, double fb, double fm,
                            double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson_panel(a, fa, m, fm, flm);
  const double right = simpson_panel(m, fm, b, fb, frm);
  const double err = left + right - whole;
  if (depth <= 0 || std::abs(err) <= 15.0 * tol)
    return left + right + err / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = simpson_panel(a, fa, b, fb, fm);
  return adaptive_simpson_rec(f, a, b, fa, fb, fm, whole, tol, max_depth);
}

double fixed_simpson(const std::function<double(double)>& f, double a, double b,
                     int panels) {
  if (panels < 1) throw std::invalid_argument("fixed_simpson: panels < 1");
  const double h = (b - a) / panels;
  double total = 0;
  for (int k = 0; k < panels; ++k) {
    const double x0 = a + k * h, x1 = x0 + h;
    total += (h / 6.0) * (f(x0) + 4.0 * f(0.5 * (x0 + x1)) + f(x1));
  }
  return total;
}

// ---------------------------------------------------------------------------

CubicSpline::CubicSpline(std::vector<double> xs, std::vector<double> ys)
    : x_(std::move(xs)), y_(std::move(ys)) {
  const int n = static_cast<int>(x_.size());
  if (n < 2 || y_.size() != x_.size())
    throw std::invalid_argument("CubicSpline: need >= 2 matching points");
  for (int i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1]))
      throw std::invalid_argument("CubicSpline: abscissae not increasing");
  m_.assign(n, 0.0);
  if (n == 2) return;  // linear

  // Tridiagonal-ish system for second derivatives with not-a-knot ends
  // (natural ends for n == 3 where not-a-knot degenerates).
  std::vector<double> a(n, 0), b(n, 0), c(n, 0), d(n, 0);
  for (int i = 1; i < n - 1; ++i) {
    const double hl = x_[i] - x_[i - 1], hr = x_[i + 1] - x_[i];
    a[i] = hl;
    b[i] = 2.0 * (hl + hr);
    c[i] = hr;
    d[i] = 6.0 * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
  }
  if (n == 3) {
    b[0] = 1.0;  // natural
    b[n - 1] = 1.0;
  } else {
    // not-a-knot: m0 (h1+h2) = m1 (h1+2h2)... expressed by continuity of the
    // third derivative across the second and second-to-last knots.
    const double h0 = x_[1] - x_[0], h1 = x_[2] - x_[1];
    b[0] = h1;
    c[0] = -(h0 + h1);
    d[0] = 0.0;
    // row 0 couples m0, m1, m2: h1*m0 - (h0+h1)*m1 + h0*m2 = 0
    const double hm = x_[n - 1] - x_[n - 2], hm1 = x_[n - 2] - x_[n - 3];
    a[n - 1] = -(hm + hm1);
    b[n - 1] = hm1;
    d[n - 1] = 0.0;
    // last row couples m[n-3], m[n-2], m[n-1]: hm*m[n-3] - (hm+hm1)*m[n-2] + hm1*m[n-1] = 0
  }

  // Solve the (almost) tridiagonal system by dense elimination; n is modest
  // (curve nodes, a few hundred) and this runs once per curve.
  const int N = n;
  std::vector<double> M(static_cast<size_t>(N) * N, 0.0);
  std::vector<double> rhs(d);
  auto at = [&](int i, int j) -> double& { return M[static_cast<size_t>(i) * N + j]; };
  for (int i = 1; i < N - 1; ++i) {
    at(i, i - 1) = a[i];
    at(i, i) = b[i];
    at(i, i + 1) = c[i];
  }
  if (n == 3) {
    at(0, 0) = 1.0;
    at(N - 1, N - 1) = 1.0;
  } else {
    const double h0 = x_[1] - x_[0], h1 = x_[2] - x_[1];
    at(0, 0) = h1;
    at(0, 1) = -(h0 + h1);
    at(0, 2) = h0;
    const double hm = x_[N - 1] - x_[N - 2], hm1 = x_[N - 2] - x_[N - 3];
    at(N - 1, N - 3) = hm;
    at(N - 1, N - 2) = -(hm + hm1);
    at(N - 1, N - 1) = hm1;
  }
  // Gaussian elimination with partial pivoting on the banded-ish matrix.
  for (int col = 0; col < N; ++col) {
    int piv = col;
    for (int r = col + 1; r < N; ++r)
      if (std::abs(at(r, col)) > std::abs(at(piv, col))) piv = r;
    if (at(piv, col) == 0.0) throw std::runtime_error("CubicSpline: singular system");
    if (piv != col) {
      for (int j = 0; j < N; ++j) std::swap(at(col, j), at(piv, j));
      std::swap(rhs[col], rhs[piv]);
    }
    for (int r = col + 1; r < N; ++r) {
      const double factor = at(r, col) / at(col, col);
      if (factor == 0.0) continue;
      for (int j = col; j < N; ++j) at(r, j) -= factor * at(col, j);
      rhs[r] -= factor * rhs[col];
    }
  }
  for (int r = N - 1; r >= 0; --r) {
    double s = rhs[r];
    for (int j = r + 1; j < N; ++j) s -= at(r, j) * m_[j];
    m_[r] = s / at(r, r);
  }
}

int CubicSpline::find_interval(double x) const {
  const int n = static_cast<int>(x_.size());
  if (x <= x_.front()) return 0;
  if (x >= x_.back()) return n - 2;
  int lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (x_[mid] <= x ? lo : hi) = mid;
  }
  return lo;
}

double CubicSpline::eval(double x) const {
  const int i = find_interval(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double u = 1.0 - t;
  return u * y_[i] + t * y_[i + 1] +
         h * h / 6.0 * ((u * u * u - u) * m_[i] + (t * t * t - t) * m_[i + 1]);
}

double CubicSpline::deriv(double x) const {
  const int i = find_interval(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double u = 1.0 - t;
  return (y_[i + 1] - y_[i]) / h +
         h / 6.0 * ((3.0 * t * t - 1.0) * m_[i + 1] - (3.0 * u * u - 1.0) * m_[i]);
}

// ---------------------------------------------------------------------------

double bregman_pow(double w, double p) {
  if (std::abs(w) > 0.4)
    return std::expm1(p * std::log1p(w)) - p * w;
  double term = 0.5 * p * (p - 1.0) * w * w;  // c_2 w^2
  double sum = term;
  for (int k = 2; k < 90; ++k) {
    term *= w * (p - k) / (k + 1.0);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double bregman_xlogx(double w) {
  if (std::abs(w) > 0.4) return (1.0 + w) * std::log1p(w) - w;
  double wk = w * w;
  double sum = 0;
  for (int k = 2; k < 80; ++k) {
    const double term = ((k % 2 == 0) ? 1.0 : -1.0) * wk / (k * (k - 1.0));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    wk *= w;
  }
  return sum;
}

double bregman_neglog(double w) {
  if (std::abs(w) > 0.4) return w - std::log1p(w);
  double wk = w * w;
  double sum = 0;
  for (int k = 2; k < 80; ++k) {
    const double term = ((k % 2 == 0) ? 1.0 : -1.0) * wk / k;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    wk *= w;
  }
  return sum;
}

double pow1p_m1(double w, double p) { return std::expm1(p * std::log1p(w)); }

// ---------------------------------------------------------------------------

Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& u,
                double rel_step) {
  Vec g(u.n);
  for (int i = 0; i < u.n; ++i) {
    const double h = rel_step * (1.0 + std::abs(u[i]));
    Vec up = u, um = u;
    up[i] += h;
    um[i] -= h;
    g[i] = (f(up) - f(um)) / (2.0 * h);
  }
  return g;
}

Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& u,
                double rel_step) {
  Mat J(u.n);
  for (int j = 0; j < u.n; ++j) {
    const double h = rel_step * (1.0 + std::abs(u[j]));
    Vec up = u, um = u;
    up[j] += h;
    um[j] -= h;
    const Vec fp = f(up), fm = f(um);
    for (int i = 0; i < u.n; ++i) J(i, j) = (fp[i] - fm[i]) / (2.0 * h);
  }
  return J;
}

Mat fd_hessian(const std::function<double(const Vec&)>& f, const Vec& u,
               double rel_step) {
  Mat H(u.n);
  const double f0 = f(u);
  for (int i = 0; i < u.n; ++i) {
    const double hi = rel_step * (1.0 + std::abs(u[i]));
    Vec up = u, um = u;
    up[i] += hi;
    um[i] -= hi;
    H(i, i) = (f(up) - 2.0 * f0 + f(um)) / (hi * hi);
    for (int j = i + 1; j < u.n; ++j) {
      const double hj = rel_step * (1.0 + std::abs(u[j]));
      Vec upp = u, upm = u, ump = u, umm = u;
      upp[i] += hi; upp[j] += hj;
      upm[i] += hi; upm[j] -= hj;
      ump[i] -= hi; ump[j] += hj;
      umm[i] -= hi; umm[j] -= hj;
      const double v = (f(upp) - f(upm) - f(ump) + f(umm)) / (4.0 * hi * hj);
      H(i, j) = v;
      H(j, i) = v;
    }
  }
  return H;
}

// ---------------------------------------------------------------------------

namespace {

// Characteristic polynomial value and derivative for Newton polish.
void char_poly(const Mat& A, double lam, double& p, double& dp) {
  if (A.n == 1) {
    p = A(0, 0) - lam;
    dp = -1.0;
    return;
  }
  if (A.n == 2) {
    const double tr = A(0, 0) + A(1, 1);
    const double det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    p = lam * lam - tr * lam + det;
    dp = 2.0 * lam - tr;
    return;
  }
  const double c2 = A(0, 0) + A(1, 1) + A(2, 2);
  const double c1 = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0) +
                    A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0) +
                    A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1);
  const double c0 = A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
                    A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
                    A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
  p = ((lam - c2) * lam + c1) * lam - c0;
  p = -p;  // det(A - lam I) = -(lam^3 - c2 lam^2 + c1 lam - c0)
  dp = -(3.0 * lam * lam - 2.0 * c2 * lam + c1);
}

// Null vector of (A - lam I) via row-reduction; assumes rank n-1.
Vec null_vector(Mat B) {
  const int n = B.n;
  if (n == 1) return Vec{1.0};
  // Gaussian elimination with full row pivoting, keep track of free column.
  std::array<int, kMaxDim> colperm{0, 1, 2};
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int pr = -1;
    double best = 0;
    for (int r = rank; r < n; ++r)
      if (std::abs(B(r, col)) > best) {
        best = std::abs(B(r, col));
        pr = r;
      }
    if (pr < 0 || best < 1e-13 * (1.0 + max_abs(B))) continue;  // (near) free column
    if (pr != rank)
      for (int j = 0; j < n; ++j) std::swap(B(rank, j), B(pr, j));
    for (int r = 0; r < n; ++r) {
      if (r == rank) continue;
      const double factor = B(r, col) / B(rank, col);
      for (int j = 0; j < n; ++j) B(r, j) -= factor * B(rank, j);
    }
    colperm[rank] = col;
    ++rank;
  }
  // Free column = the one not pivoted.
  bool pivoted[kMaxDim] = {false, false, false};
  for (int r = 0; r < rank; ++r) pivoted[colperm[r]] = true;
  int free_col = -1;
  for (int c = 0; c < n; ++c)
    if (!pivoted[c]) {
      free_col = c;
      break;
    }
  if (free_col < 0) free_col = n - 1;
  Vec v(n);
  v[free_col] = 1.0;
  for (int r = rank - 1; r >= 0; --r) {
    const int pc = colperm[r];
    v[pc] = -B(r, free_col) / B(r, pc);
  }
  return normalized(v);
}

}  // namespace

std::optional<EigenDecomp> eig_real_small(const Mat& A) {
  const int n = A.n;
  EigenDecomp out;
  out.lambda = Vec(n);
  const double scale = std::max(1.0, max_abs(A));

  if (n == 1) {
    out.lambda[0] = A(0, 0);
  } else if (n == 2) {
    const double tr = A(0, 0) + A(1, 1);
    const double det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    double disc = tr * tr - 4.0 * det;
    if (disc < -1e-12 * scale * scale) return std::nullopt;
    disc = std::max(disc, 0.0);
    const double sq = std::sqrt(disc);
    out.lambda[0] = 0.5 * (tr - sq);
    out.lambda[1] = 0.5 * (tr + sq);
  } else {
    // Real roots of the characteristic cubic via the trigonometric method.
    const double c2 = A(0, 0) + A(1, 1) + A(2, 2);
    const double c1 = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0) +
                      A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0) +
                      A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1);
    const double c0 = A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
                      A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
                      A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
    // lam^3 - c2 lam^2 + c1 lam - c0 = 0; depressed: t^3 + p t + q = 0
    const double p = c1 - c2 * c2 / 3.0;
    const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    const double discr = 4.0 * p * p * p + 27.0 * q * q;
    if (discr > 1e-10 * std::pow(scale, 6)) return std::nullopt;  // complex pair
    double roots[3];
    if (p >= -1e-300) {
      // Triple/near-triple root.
      roots[0] = roots[1] = roots[2] = c2 / 3.0;
    } else {
      const double r = std::sqrt(-p / 3.0);
      double arg = 3.0 * q / (2.0 * p * r);
      arg = std::clamp(arg, -1.0, 1.0);
      const double phi = std::acos(arg) / 3.0;
      for (int k = 0; k < 3; ++k)
        roots[k] = 2.0 * r * std::cos(phi - 2.0 * M_PI * k / 3.0) + c2 / 3.0;
    }
    std::sort(roots, roots + 3);
    for (int k = 0; k < 3; ++k) out.lambda[k] = roots[k];
  }

  // Newton polish on the characteristic polynomial.
  for (int k = 0; k < n; ++k) {
    double lam = out.lambda[k];
    for (int it = 0; it < 3; ++it) {
      double pv, dpv;
      char_poly(A, lam, pv, dpv);
      if (dpv == 0.0) break;
      const double step = pv / dpv;
      if (!std::isfinite(step)) break;
      lam -= step;
    }
    out.lambda[k] = lam;
  }
  std::sort(out.lambda.a.begin(), out.lambda.a.begin() + n);

  const Mat At = transpose(A);
  for (int k = 0; k < n; ++k) {
    Mat B = A, Bt = At;
    for (int i = 0; i < n; ++i) {
      B(i, i) -= out.lambda[k];
      Bt(i, i) -= out.lambda[k];
    }
    out.right[k] = null_vector(B);
    out.left[k] = null_vector(Bt);
  }
  return out;
}

Vec sym_eigenvalues(const Mat& A) {
  Mat B = A;
  const int n = B.n;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += B(i, j) * B(i, j);
    if (off < 1e-30 * (1.0 + max_abs(B) * max_abs(B))) break;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (std::abs(B(i, j)) < 1e-300) continue;
        const double theta = 0.5 * (B(j, j) - B(i, i)) / B(i, j);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          const double bik = B(i, k), bjk = B(j, k);
          B(i, k) = c * bik - s * bjk;
          B(j, k) = s * bik + c * bjk;
        }
        for (int k = 0; k < n; ++k) {
          const double bki = B(k, i), bkj = B(k, j);
          B(k, i) = c * bki - s * bkj;
          B(k, j) = s * bki + c * bkj;
        }
      }
  }
  Vec ev(n);
  for (int i = 0; i < n; ++i) ev[i] = B(i, i);
  std::sort(ev.a.begin(), ev.a.begin() + n);
  return ev;
}

// ---------------------------------------------------------------------------

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  const size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  LineFit fit;
  if (denom == 0.0 || n < 2) return fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

std::optional<LineFit> fit_loglog(const std::vector<double>& xs,
                                  const std::vector<double>& ys, double y_floor) {
  std::vector<double> lx, ly;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (ys[i] > y_floor && xs[i] > 0) {
      lx.push_back(std::log(xs[i]));
      ly.push_back(std::log(ys[i]));
    }
  }
  if (lx.size() < 2) return std::nullopt;
  return fit_line(lx, ly);
}

// ---------------------------------------------------------------------------

NelderMeadResult nelder_mead(const std::function<double(const Vec&)>& f,
                             const Vec& x0, const NelderMeadOptions& opts) {
  const int n = x0.n;
  struct Pt {
    Vec x;
    double fx;
  };
  std::vector<Pt> simplex;
  simplex.push_back({x0, f(x0)});
  for (int i = 0; i < n; ++i) {
    Vec xi = x0;
    xi[i] += opts.initial_step;
    simplex.push_back({xi, f(xi)});
  }
  auto by_f = [](const Pt& a, const Pt& b) { return a.fx < b.fx; };

  NelderMeadResult res;
  int iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    std::sort(simplex.begin(), simplex.end(), by_f);
    const Pt& best = simplex.front();
    const Pt& worst = simplex.back();
    double spread = 0;
    for (int i = 0; i < n; ++i)
      spread = std::max(spread, std::abs(worst.x[i] - best.x[i]));
    if (std::abs(worst.fx - best.fx) <= opts.ftol * (1.0 + std::abs(best.fx)) &&
        spread <= opts.xtol) {
      res.converged = true;
      break;
    }
    Vec centroid(n);
    for (int k = 0; k < n; ++k) centroid += simplex[k].x;
    centroid *= 1.0 / n;

    const Vec xr = centroid + (centroid - worst.x);
    const double fr = f(xr);
    if (fr < best.fx) {
      const Vec xe = centroid + 2.0 * (centroid - worst.x);
      const double fe = f(xe);
      simplex.back() = fe < fr ? Pt{xe, fe} : Pt{xr, fr};
    } else if (fr < simplex[n - 1].fx) {
      simplex.back() = {xr, fr};
    } else {
      const Vec xc = centroid + 0.5 * ((fr < worst.fx ? xr : worst.x) - centroid);
      const double fc = f(xc);
      if (fc < std::min(fr, worst.fx)) {
        simplex.back() = {xc, fc};
      } else {
        for (int k = 1; k <= n; ++k) {
          simplex[k].x = simplex[0].x + 0.5 * (simplex[k].x - simplex[0].x);
          simplex[k].fx = f(simplex[k].x);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(), by_f);
  res.x = simplex.front().x;
  res.fmin = simplex.front().fx;
  res.iterations = iter;
  return res;
}

}  // namespace acshock
