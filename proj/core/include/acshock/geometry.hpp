#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <initializer_list>
#include <stdexcept>

// Fixed-capacity vectors and matrices for state spaces of dimension 1..3.
// Everything is by value; no allocation.

namespace acshock {

inline constexpr int kMaxDim = 3;

struct Vec {
  std::array<double, kMaxDim> a{};
  int n = 0;

  Vec() = default;
  explicit Vec(int dim) : n(dim) { assert(dim >= 1 && dim <= kMaxDim); }
  Vec(std::initializer_list<double> xs) : n(static_cast<int>(xs.size())) {
    assert(n >= 1 && n <= kMaxDim);
    int i = 0;
    for (double x : xs) a[i++] = x;
  }
  static Vec zero(int dim) { return Vec(dim); }

  double& operator[](int i) { return a[static_cast<size_t>(i)]; }
  double operator[](int i) const { return a[static_cast<size_t>(i)]; }
  int size() const { return n; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < n; ++i) a[i] += o.a[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < n; ++i) a[i] -= o.a[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < n; ++i) a[i] *= s;
    return *this;
  }
};

inline Vec operator+(Vec x, const Vec& y) { return x += y; }
inline Vec operator-(Vec x, const Vec& y) { return x -= y; }
inline Vec operator*(double s, Vec x) { return x *= s; }
inline Vec operator*(Vec x, double s) { return x *= s; }
inline Vec operator/(Vec x, double s) { return x *= (1.0 / s); }
inline Vec operator-(Vec x) { return x *= -1.0; }

inline double dot(const Vec& x, const Vec& y) {
  double s = 0;
  for (int i = 0; i < x.n; ++i) s += x[i] * y[i];
  return s;
}
inline double norm2(const Vec& x) { return dot(x, x); }
inline double norm(const Vec& x) { return std::sqrt(norm2(x)); }
inline Vec normalized(const Vec& x) {
  double m = norm(x);
  if (m == 0.0) throw std::domain_error("normalized: zero vector");
  return x / m;
}
inline bool all_finite(const Vec& x) {
  for (int i = 0; i < x.n; ++i)
    if (!std::isfinite(x[i])) return false;
  return true;
}

struct Mat {
  std::array<double, kMaxDim * kMaxDim> a{};
  int n = 0;

  Mat() = default;
  explicit Mat(int dim) : n(dim) { assert(dim >= 1 && dim <= kMaxDim); }
  static Mat identity(int dim) {
    Mat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  double& operator()(int i, int j) { return a[static_cast<size_t>(i * kMaxDim + j)]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i * kMaxDim + j)]; }

  Mat& operator+=(const Mat& o) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) (*this)(i, j) += o(i, j);
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) (*this)(i, j) -= o(i, j);
    return *this;
  }
  Mat& operator*=(double s) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) (*this)(i, j) *= s;
    return *this;
  }
};

inline Mat operator+(Mat x, const Mat& y) { return x += y; }
inline Mat operator-(Mat x, const Mat& y) { return x -= y; }
inline Mat operator*(double s, Mat x) { return x *= s; }
inline Mat operator*(Mat x, double s) { return x *= s; }

inline Vec operator*(const Mat& m, const Vec& x) {
  Vec y(x.n);
  for (int i = 0; i < m.n; ++i) {
    double s = 0;
    for (int j = 0; j < m.n; ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

// row vector times matrix: (x^T M)^T
inline Vec left_mul(const Vec& x, const Mat& m) {
  Vec y(x.n);
  for (int j = 0; j < m.n; ++j) {
    double s = 0;
    for (int i = 0; i < m.n; ++i) s += x[i] * m(i, j);
    y[j] = s;
  }
  return y;
}

inline Mat operator*(const Mat& x, const Mat& y) {
  Mat z(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) {
      double s = 0;
      for (int k = 0; k < x.n; ++k) s += x(i, k) * y(k, j);
      z(i, j) = s;
    }
  return z;
}

inline Mat transpose(const Mat& m) {
  Mat t(m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) t(i, j) = m(j, i);
  return t;
}

inline Mat outer(const Vec& x, const Vec& y) {
  Mat m(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) m(i, j) = x[i] * y[j];
  return m;
}

inline double max_abs(const Mat& m) {
  double v = 0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) v = std::max(v, std::abs(m(i, j)));
  return v;
}

// Dense Gaussian elimination with partial pivoting, up to 4x4 (used by the
// pseudo-arclength continuation which solves an (n+1)-dimensional system).
// A is row-major m x m, overwritten; b overwritten with the solution.
bool solve_dense(double* A, double* b, int m);

inline Vec solve(Mat m, Vec b) {
  double A[kMaxDim * kMaxDim];
  double rhs[kMaxDim];
  for (int i = 0; i < m.n; ++i) {
    rhs[i] = b[i];
    for (int j = 0; j < m.n; ++j) A[i * m.n + j] = m(i, j);
  }
  if (!solve_dense(A, rhs, m.n)) throw std::runtime_error("solve: singular matrix");
  Vec x(m.n);
  for (int i = 0; i < m.n; ++i) x[i] = rhs[i];
  return x;
}

struct Box {
  Vec lo, hi;
  bool contains(const Vec& u, double margin = 0.0) const {
    for (int i = 0; i < u.n; ++i)
      if (u[i] < lo[i] + margin || u[i] > hi[i] - margin) return false;
    return true;
  }
  Vec center() const { return 0.5 * (lo + hi); }
};

}  // namespace acshock
