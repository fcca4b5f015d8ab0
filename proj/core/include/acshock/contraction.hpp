#pragma once

#include <vector>

#include "acshock/fv.hpp"
#include "acshock/relent.hpp"

namespace acshock {

/// Numeric stand-ins for the constants fixed existentially in the theory:
/// alpha_1 separates the first two wave families on the working ball, L bounds
/// the extremal wave speeds, C* controls q_tilde by eta_tilde outside Pi, and
/// lambda_hat = 2 (C* + 3L) bounds the shift speed window.
struct ContractionConstants {
  double alpha1 = 0;
  double L = 0;
  double Cstar = 0;
  double lambda_hat = 0;
  double sup_lambda1 = 0;
  double inf_lambda2 = 0;
  bool alpha_ok = false;  // sup lambda_1 < alpha_1 < inf lambda_2 on the ball
  double v_bound = 0;     // ||V||_inf <= lambda_hat / 2
};

ContractionConstants compute_constants(const ShockContext& ctx, int n_samples,
                                       Rng& rng);

/// V(u) = lambda_1(u) - (C* + 2L) 1{a1 eta(u|u_L) > a2 eta(u|u_R)};
/// lambda_1 extended by L outside the admissible region.
double velocity_functional(const ShockContext& ctx, const Vec& u,
                           const ContractionConstants& consts);

enum class InterfaceCase { Case1 = 1, Case2 = 2, Case3 = 3, Case4 = 4 };

struct FilippovStep {
  double h_next = 0;
  double h_dot = 0;
  InterfaceCase label = InterfaceCase::Case4;
  double dissipation = 0;  // left side of the interface inequality, per unit a2
  Vec u_minus, u_plus;
  bool in_window = true;       // h_dot within [-lambda_hat/2, alpha1] before clamping
  bool boundary_hit = false;   // h left the grid interior: terminate the run
};

/// One explicit step of the shift ODE in the Filippov sense: one-sided traces
/// are read `1 + trace_offset` cells away from the cell containing h; when the
/// traces differ, the local least-squares RH speed is selected inside the
/// containment interval I[V(u+), V(u-)] (the choice keeping the discrete
/// crossing stationary); otherwise h rides V. The step is classified into the
/// four interface cases by the signs of a1 eta(u±|u_L) - a2 eta(u±|u_R).
FilippovStep filippov_step(const ShockContext& ctx, const FVField& field, double h,
                           double dt, const ContractionConstants& consts,
                           int trace_offset = 1);

/// E = a1 int_{x<h} eta(u|u_L) dx + a2 int_{x>h} eta(u|u_R) dx, midpoint rule
/// with the cell containing h split exactly at h.
double pseudo_distance(const ShockContext& ctx, const FVField& field, double h);

struct ShiftPath {
  std::vector<double> t, h, h_dot, dissipation;
  std::vector<int> label;
};

struct ContractionRun {
  ContractionConstants constants;
  ShiftPath path;
  std::vector<double> E;           // E at path.t
  double E0 = 0, E_end = 0;
  double min_E = 0;
  double K_tol = 0;                // max over t of (E_t - min_{tau<=t} E_tau) / (dx t)
  double max_drift = 0;            // max of E_t - running min
  int case_counts[4] = {0, 0, 0, 0};
  int label_switches = 0;          // chatter: case-label changes between steps
  int case2_strict = 0;            // Case 2 beyond trace tolerance
  int window_violations = 0;
  int entropy_flags = 0;
  double max_entropy_residual = 0;
  double max_dissipation = -1e300; // max recorded interface dissipation
  int steps = 0;
  std::string status;              // "completed" | "terminated_boundary" | "blowup"
  FVField final_field;
  bool h_dot_in_window = true;
};

struct RunOptions {
  int trace_offset = 1;
  double tol_entropy = 1e-12;
  double trace_tol = 1e-9;   // strict-case-2 threshold on eta_tilde, scaled by s0^2
  int record_every = 1;
};

/// Co-evolves the field and the Filippov shift from `ic`, starting the shift
/// at h0, and tracks the weighted pseudo-distance E_t at every step.
ContractionRun run_contraction(const ShockContext& ctx, FVField ic, double h0,
                               double t_end, const ContractionConstants& consts,
                               const RunOptions& opts = {});

}  // namespace acshock
