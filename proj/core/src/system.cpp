#include "acshock/system.hpp"

#include <cmath>

namespace acshock {

Vec flux(const SystemDescriptor& sys, const Vec& u) {
  if (!all_finite(u) || !sys.admissible(u))
    throw DomainError(sys.id + ": state outside admissible region");
  return sys.flux(u);
}

Mat flux_jacobian(const SystemDescriptor& sys, const Vec& u) {
  if (!all_finite(u) || !sys.admissible(u))
    throw DomainError(sys.id + ": state outside admissible region");
  if (sys.flux_jacobian_fn) return sys.flux_jacobian_fn(u);
  return fd_jacobian(sys.flux, u);
}

std::pair<double, double> entropy_pair(const SystemDescriptor& sys, const Vec& u) {
  if (!all_finite(u) || !sys.admissible(u))
    throw DomainError(sys.id + ": state outside admissible region");
  return {sys.entropy(u), sys.entropy_flux(u)};
}

Vec entropy_gradient(const SystemDescriptor& sys, const Vec& u) {
  if (sys.entropy_gradient_fn) return sys.entropy_gradient_fn(u);
  return fd_gradient(sys.entropy, u);
}

Mat entropy_hessian(const SystemDescriptor& sys, const Vec& u) {
  if (sys.entropy_hessian_fn) return sys.entropy_hessian_fn(u);
  if (sys.entropy_gradient_fn) return fd_jacobian(sys.entropy_gradient_fn, u);
  return fd_hessian(sys.entropy, u);
}

double max_abs_eigen(const SystemDescriptor& sys, const Vec& u) {
  if (sys.max_abs_eigen_fn) return sys.max_abs_eigen_fn(u);
  const Vec lam = eigenvalues(sys, u);
  double m = 0;
  for (int i = 0; i < lam.n; ++i) m = std::max(m, std::abs(lam[i]));
  return m;
}

Vec eigenvalues(const SystemDescriptor& sys, const Vec& u) {
  if (sys.eigen_fn) return sys.eigen_fn(u).lambda;
  auto dec = eig_real_small(flux_jacobian(sys, u));
  if (!dec) throw DegeneracyError(sys.id + ": complex eigenvalues");
  return dec->lambda;
}

double eigenvalue_directional(const SystemDescriptor& sys, const Vec& u, int family,
                              const Vec& dir, double rel_step) {
  const double h = rel_step * (1.0 + norm(u));
  const Vec lp = eigenvalues(sys, u + h * dir);
  const Vec lm = eigenvalues(sys, u - h * dir);
  const int i = family - 1;
  return (lp[i] - lm[i]) / (2.0 * h);
}

namespace {

EigenBasis numeric_eigen(const SystemDescriptor& sys, const Vec& u) {
  auto dec = eig_real_small(flux_jacobian(sys, u));
  if (!dec) throw DegeneracyError(sys.id + ": complex eigenvalues at state");
  EigenBasis basis;
  basis.n = sys.n;
  basis.lambda = dec->lambda;
  for (int i = 0; i < sys.n; ++i) {
    basis.right[i] = dec->right[i];
    basis.left[i] = dec->left[i];
  }
  return basis;
}

void renormalize(EigenBasis& b) {
  for (int i = 0; i < b.n; ++i) {
    b.right[i] = normalized(b.right[i]);
    b.left[i] = normalized(b.left[i]);
    if (dot(b.left[i], b.right[i]) < 0) b.left[i] *= -1.0;
  }
}

// Flip r_i and l^i together (keeps l.r > 0).
void flip(EigenBasis& b, int i) {
  b.right[i] *= -1.0;
  b.left[i] *= -1.0;
}

}  // namespace

EigenBasis eigenstructure(const SystemDescriptor& sys, const Vec& u,
                          const EigenBasis* prev) {
  if (!all_finite(u) || !sys.admissible(u))
    throw DomainError(sys.id + ": state outside admissible region");

  EigenBasis basis = sys.eigen_fn ? sys.eigen_fn(u) : numeric_eigen(sys, u);
  renormalize(basis);

  const int n = basis.n;
  double lam_scale = 0;
  for (int i = 0; i < n; ++i) lam_scale = std::max(lam_scale, std::abs(basis.lambda[i]));
  if (n >= 2) {
    const double gap_lo = basis.lambda[1] - basis.lambda[0];
    const double gap_hi = basis.lambda[n - 1] - basis.lambda[n - 2];
    if (std::min(gap_lo, gap_hi) < 1e-8 * std::max(lam_scale, 1e-300))
      throw DegeneracyError(sys.id + ": extremal eigenvalue gap below threshold");
  }

  if (prev) {
    for (int i = 0; i < n; ++i)
      if (dot(basis.right[i], prev->right[i]) < 0) flip(basis, i);
    return basis;
  }

  // First family: grad(lambda_1) . r_1 < 0 where the field is genuinely
  // nonlinear; last family mirrored. Middle family oriented deterministically.
  const double g1 = eigenvalue_directional(sys, u, 1, basis.right[0]);
  if (g1 > 0) flip(basis, 0);
  if (n >= 2) {
    const double gn = eigenvalue_directional(sys, u, n, basis.right[n - 1]);
    if (gn < 0) flip(basis, n - 1);
  }
  if (n == 3) {
    const Vec& r = basis.right[1];
    int imax = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(r[i]) > std::abs(r[imax])) imax = i;
    if (r[imax] < 0) flip(basis, 1);
  }
  return basis;
}

SystemDescriptor mirror_system(const SystemDescriptor& sys) {
  SystemDescriptor m = sys;
  m.id = sys.id + "_mirror";
  const SystemDescriptor base = sys;  // capture by value: descriptors are immutable
  m.flux = [base](const Vec& u) { return -base.flux(u); };
  m.entropy_flux = [base](const Vec& u) { return -base.entropy_flux(u); };
  if (base.rel_entropy_flux_fn)
    m.rel_entropy_flux_fn = [base](const Vec& a, const Vec& b) {
      return -base.rel_entropy_flux_fn(a, b);
    };
  if (base.flux_jacobian_fn)
    m.flux_jacobian_fn = [base](const Vec& u) { return -1.0 * base.flux_jacobian_fn(u); };
  else
    m.flux_jacobian_fn = nullptr;
  if (base.eigen_fn) {
    const int n = base.n;
    m.eigen_fn = [base, n](const Vec& u) {
      const EigenBasis e = base.eigen_fn(u);
      EigenBasis out = e;
      for (int i = 0; i < kMaxDim; ++i) {
        const int j = i < n ? n - 1 - i : i;
        if (i < n) out.lambda[i] = -e.lambda[j];
        out.right[i] = e.right[j];
        out.left[i] = e.left[j];
      }
      return out;
    };
  } else {
    m.eigen_fn = nullptr;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Built-ins

SystemDescriptor make_burgers(double u_lo, double u_hi) {
  SystemDescriptor s;
  s.id = "burgers";
  s.n = 1;
  s.flux = [](const Vec& u) { return Vec{0.5 * u[0] * u[0]}; };
  s.entropy = [](const Vec& u) { return u[0] * u[0]; };
  s.entropy_flux = [](const Vec& u) { return (2.0 / 3.0) * u[0] * u[0] * u[0]; };
  s.admissible = [](const Vec& u) { return all_finite(u); };
  s.working_box = Box{Vec{u_lo}, Vec{u_hi}};
  s.to_conserved = [](const Vec& p) { return p; };
  s.to_primitive = [](const Vec& u) { return u; };
  s.flux_jacobian_fn = [](const Vec& u) {
    Mat J(1);
    J(0, 0) = u[0];
    return J;
  };
  s.entropy_gradient_fn = [](const Vec& u) { return Vec{2.0 * u[0]}; };
  s.entropy_hessian_fn = [](const Vec&) {
    Mat H(1);
    H(0, 0) = 2.0;
    return H;
  };
  s.eigen_fn = [](const Vec& u) {
    EigenBasis b;
    b.n = 1;
    b.lambda = Vec{u[0]};
    b.right[0] = Vec{1.0};
    b.left[0] = Vec{1.0};
    return b;
  };
  s.max_abs_eigen_fn = [](const Vec& u) { return std::abs(u[0]); };
  s.rel_entropy_fn = [](const Vec& a, const Vec& b) {
    const double d = a[0] - b[0];
    return d * d;
  };
  s.rel_entropy_flux_fn = [](const Vec& a, const Vec& b) {
    const double d = a[0] - b[0];
    return d * d * (2.0 * a[0] + b[0]) / 3.0;
  };
  s.reference_chart = Vec{0.5 * (u_lo + u_hi) == 0.0 ? 1.0 : 0.5 * (u_lo + u_hi)};
  if (u_lo <= 1.0 && u_hi >= 1.0) s.reference_chart = Vec{1.0};
  return s;
}

SystemDescriptor make_isentropic_euler(double gamma, double rho_lo, double rho_hi,
                                       double v_max) {
  SystemDescriptor s;
  s.id = "isentropic_euler";
  s.n = 2;
  s.params["gamma"] = gamma;
  const double g = gamma;
  // u = (rho, m), m = rho v, pressure p = rho^gamma
  s.flux = [g](const Vec& u) {
    const double rho = u[0], m = u[1];
    return Vec{m, m * m / rho + std::pow(rho, g)};
  };
  s.entropy = [g](const Vec& u) {
    const double rho = u[0], m = u[1];
    return 0.5 * m * m / rho + std::pow(rho, g) / (g - 1.0);
  };
  s.entropy_flux = [g](const Vec& u) {
    const double rho = u[0], m = u[1];
    const double v = m / rho;
    return 0.5 * m * m * v / rho + g / (g - 1.0) * v * std::pow(rho, g);
  };
  s.admissible = [](const Vec& u) { return all_finite(u) && u[0] > 0.0; };
  s.working_box = Box{Vec{rho_lo, -v_max}, Vec{rho_hi, v_max}};
  s.to_conserved = [](const Vec& p) { return Vec{p[0], p[0] * p[1]}; };
  s.to_primitive = [](const Vec& u) { return Vec{u[0], u[1] / u[0]}; };
  s.flux_jacobian_fn = [g](const Vec& u) {
    const double rho = u[0], v = u[1] / u[0];
    const double c2 = g * std::pow(rho, g - 1.0);
    Mat J(2);
    J(0, 0) = 0.0;
    J(0, 1) = 1.0;
    J(1, 0) = c2 - v * v;
    J(1, 1) = 2.0 * v;
    return J;
  };
  s.entropy_gradient_fn = [g](const Vec& u) {
    const double rho = u[0], v = u[1] / u[0];
    return Vec{-0.5 * v * v + g / (g - 1.0) * std::pow(rho, g - 1.0), v};
  };
  s.entropy_hessian_fn = [g](const Vec& u) {
    const double rho = u[0], v = u[1] / u[0];
    Mat H(2);
    H(0, 0) = v * v / rho + g * std::pow(rho, g - 2.0);
    H(0, 1) = -v / rho;
    H(1, 0) = -v / rho;
    H(1, 1) = 1.0 / rho;
    return H;
  };
  s.eigen_fn = [g](const Vec& u) {
    const double rho = u[0], v = u[1] / u[0];
    const double c = std::sqrt(g * std::pow(rho, g - 1.0));
    EigenBasis b;
    b.n = 2;
    b.lambda = Vec{v - c, v + c};
    b.right[0] = Vec{1.0, v - c};
    b.right[1] = Vec{1.0, v + c};
    b.left[0] = Vec{(v + c) / (2.0 * c), -1.0 / (2.0 * c)};
    b.left[1] = Vec{-(v - c) / (2.0 * c), 1.0 / (2.0 * c)};
    return b;
  };
  s.max_abs_eigen_fn = [g](const Vec& u) {
    const double rho = u[0], v = u[1] / u[0];
    return std::abs(v) + std::sqrt(g * std::pow(rho, g - 1.0));
  };
  // eta(a|b) = rho_a (v_a - v_b)^2 / 2 + Bregman of rho^g/(g-1);
  // q(a;b) = rho_a v_a (v_a - v_b)^2 / 2 + v_a B + (v_a - v_b)(p_a - p_b).
  s.rel_entropy_fn = [g](const Vec& a, const Vec& b) {
    const double ra = a[0], va = a[1] / a[0];
    const double rb = b[0], vb = b[1] / b[0];
    const double w = (ra - rb) / rb;
    return 0.5 * ra * (va - vb) * (va - vb) +
           std::pow(rb, g) / (g - 1.0) * bregman_pow(w, g);
  };
  s.rel_entropy_flux_fn = [g](const Vec& a, const Vec& b) {
    const double ra = a[0], va = a[1] / a[0];
    const double rb = b[0], vb = b[1] / b[0];
    const double w = (ra - rb) / rb;
    const double B = std::pow(rb, g) / (g - 1.0) * bregman_pow(w, g);
    const double dp = std::pow(rb, g) * pow1p_m1(w, g);
    return 0.5 * ra * va * (va - vb) * (va - vb) + va * B + (va - vb) * dp;
  };
  s.reference_chart = Vec{1.0, 0.0};
  return s;
}

SystemDescriptor make_full_euler(double gamma, double rho_lo, double rho_hi,
                                 double v_max, double e_lo, double e_hi) {
  SystemDescriptor s;
  s.id = "full_euler";
  s.n = 3;
  s.params["gamma"] = gamma;
  const double g = gamma;
  // u = (rho, m, Et) = (rho, rho v, rho E); e = E - v^2/2; P = (g-1) rho e
  auto internal_energy = [](const Vec& u) {
    return u[2] / u[0] - 0.5 * (u[1] / u[0]) * (u[1] / u[0]);
  };
  s.flux = [g, internal_energy](const Vec& u) {
    const double rho = u[0], m = u[1], Et = u[2];
    const double v = m / rho;
    const double P = (g - 1.0) * rho * internal_energy(u);
    return Vec{m, m * v + P, (Et + P) * v};
  };
  s.entropy = [g, internal_energy](const Vec& u) {
    const double rho = u[0];
    return (g - 1.0) * rho * std::log(rho) - rho * std::log(internal_energy(u));
  };
  s.entropy_flux = [g, internal_energy](const Vec& u) {
    const double rho = u[0], m = u[1];
    return (g - 1.0) * m * std::log(rho) - m * std::log(internal_energy(u));
  };
  s.admissible = [internal_energy](const Vec& u) {
    return all_finite(u) && u[0] > 0.0 && internal_energy(u) > 0.0;
  };
  s.working_box = Box{Vec{rho_lo, -v_max, e_lo}, Vec{rho_hi, v_max, e_hi}};
  s.to_conserved = [](const Vec& p) {
    // chart (rho, v, e)
    return Vec{p[0], p[0] * p[1], p[0] * (p[2] + 0.5 * p[1] * p[1])};
  };
  s.to_primitive = [internal_energy](const Vec& u) {
    return Vec{u[0], u[1] / u[0], internal_energy(u)};
  };
  s.flux_jacobian_fn = [g](const Vec& u) {
    const double rho = u[0], v = u[1] / u[0], Et = u[2];
    const double E = Et / rho;
    Mat J(3);
    J(0, 0) = 0.0;
    J(0, 1) = 1.0;
    J(0, 2) = 0.0;
    J(1, 0) = 0.5 * (g - 3.0) * v * v;
    J(1, 1) = (3.0 - g) * v;
    J(1, 2) = g - 1.0;
    J(2, 0) = (g - 1.0) * v * v * v - g * v * E;
    J(2, 1) = g * E - 1.5 * (g - 1.0) * v * v;
    J(2, 2) = g * v;
    return J;
  };
  s.entropy_gradient_fn = [g, internal_energy](const Vec& u) {
    const double rho = u[0], v = u[1] / u[0];
    const double e = internal_energy(u);
    // eta = (g-1) rho ln(rho) - rho ln(e), e = Et/rho - v^2/2
    Vec grad(3);
    grad[0] = (g - 1.0) * (std::log(rho) + 1.0) - std::log(e) - (0.5 * v * v - e) / e;
    grad[1] = v / e;
    grad[2] = -1.0 / e;
    return grad;
  };
  s.eigen_fn = [g, internal_energy](const Vec& u) {
    const double rho = u[0], v = u[1] / u[0];
    const double e = internal_energy(u);
    const double P = (g - 1.0) * rho * e;
    const double c = std::sqrt(g * P / rho);
    const double H = (u[2] + P) / rho;
    const double b1 = (g - 1.0) / (c * c);
    const double b2 = 0.5 * b1 * v * v;
    EigenBasis b;
    b.n = 3;
    b.lambda = Vec{v - c, v, v + c};
    b.right[0] = Vec{1.0, v - c, H - v * c};
    b.right[1] = Vec{1.0, v, 0.5 * v * v};
    b.right[2] = Vec{1.0, v + c, H + v * c};
    b.left[0] = Vec{0.5 * (b2 + v / c), -0.5 * (b1 * v + 1.0 / c), 0.5 * b1};
    b.left[1] = Vec{1.0 - b2, b1 * v, -b1};
    b.left[2] = Vec{0.5 * (b2 - v / c), -0.5 * (b1 * v - 1.0 / c), 0.5 * b1};
    return b;
  };
  s.max_abs_eigen_fn = [g, internal_energy](const Vec& u) {
    const double v = u[1] / u[0];
    return std::abs(v) + std::sqrt(g * (g - 1.0) * internal_energy(u));
  };
  // eta(a|b) = (g-1) rho_b G(drho/rho_b) + rho_a (dv)^2/(2 e_b) + rho_a H(de/e_b)
  // with G(w) = (1+w)log1p(w) - w, H(z) = z - log1p(z);
  // q(a;b) = v_a eta(a|b) + (v_a - v_b)(P_a - P_b)/e_b.
  s.rel_entropy_fn = [g, internal_energy](const Vec& a, const Vec& b) {
    const double ra = a[0], va = a[1] / a[0], ea = internal_energy(a);
    const double rb = b[0], vb = b[1] / b[0], eb = internal_energy(b);
    const double w = (ra - rb) / rb, z = (ea - eb) / eb;
    return (g - 1.0) * rb * bregman_xlogx(w) +
           0.5 * ra * (va - vb) * (va - vb) / eb + ra * bregman_neglog(z);
  };
  s.rel_entropy_flux_fn = [g, internal_energy](const Vec& a, const Vec& b) {
    const double ra = a[0], va = a[1] / a[0], ea = internal_energy(a);
    const double rb = b[0], vb = b[1] / b[0], eb = internal_energy(b);
    const double w = (ra - rb) / rb, z = (ea - eb) / eb;
    const double eta_rel = (g - 1.0) * rb * bregman_xlogx(w) +
                           0.5 * ra * (va - vb) * (va - vb) / eb +
                           ra * bregman_neglog(z);
    const double dP = (g - 1.0) * (ra * ea - rb * eb);
    return va * eta_rel + (va - vb) * dP / eb;
  };
  s.reference_chart = Vec{1.0, 0.0, 2.5};
  return s;
}

SystemDescriptor make_linear2(const Mat& A_sym, double u_max) {
  SystemDescriptor s;
  s.id = "linear2";
  s.n = 2;
  const Mat A = A_sym;
  s.flux = [A](const Vec& u) { return A * u; };
  s.entropy = [](const Vec& u) { return 0.5 * norm2(u); };
  s.entropy_flux = [A](const Vec& u) { return 0.5 * dot(u, A * u); };
  s.admissible = [](const Vec& u) { return all_finite(u); };
  s.working_box = Box{Vec{-u_max, -u_max}, Vec{u_max, u_max}};
  s.to_conserved = [](const Vec& p) { return p; };
  s.to_primitive = [](const Vec& u) { return u; };
  s.flux_jacobian_fn = [A](const Vec&) { return A; };
  s.entropy_gradient_fn = [](const Vec& u) { return u; };
  s.entropy_hessian_fn = [](const Vec& u) {
    (void)u;
    return Mat::identity(2);
  };
  s.rel_entropy_fn = [](const Vec& a, const Vec& b) { return 0.5 * norm2(a - b); };
  s.rel_entropy_flux_fn = [A](const Vec& a, const Vec& b) {
    const Vec d = a - b;
    return 0.5 * dot(d, A * d);
  };
  s.reference_chart = Vec{0.3, 0.2};
  return s;
}

SystemDescriptor make_system(const std::string& id,
                             const std::map<std::string, double>& params) {
  auto get = [&params](const std::string& key, double dflt) {
    auto it = params.find(key);
    return it == params.end() ? dflt : it->second;
  };
  if (id == "burgers")
    return make_burgers(get("u_lo", -3.0), get("u_hi", 3.0));
  if (id == "isentropic_euler")
    return make_isentropic_euler(get("gamma", 1.4), get("rho_lo", 0.1),
                                 get("rho_hi", 10.0), get("v_max", 10.0));
  if (id == "full_euler")
    return make_full_euler(get("gamma", 1.4), get("rho_lo", 0.1), get("rho_hi", 10.0),
                           get("v_max", 10.0), get("e_lo", 0.1), get("e_hi", 50.0));
  if (id == "linear2") {
    Mat A(2);
    A(0, 0) = get("a11", 0.0);
    A(0, 1) = get("a12", 1.0);
    A(1, 0) = get("a21", 1.0);
    A(1, 1) = get("a22", 0.0);
    return make_linear2(A, get("u_max", 2.0));
  }
  throw ConfigError("unknown system id: " + id);
}

}  // namespace acshock
