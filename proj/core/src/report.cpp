#include "acshock/report.hpp"

#include <cstdio>
#include <fstream>

#include "acshock/version.hpp"

namespace acshock {

using nlohmann::ordered_json;

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

ordered_json to_json(const Vec& v) {
  ordered_json arr = ordered_json::array();
  for (int i = 0; i < v.n; ++i) arr.push_back(v[i]);
  return arr;
}

ordered_json to_json(const AssumptionReport& rep) {
  ordered_json j;
  j["pass"] = rep.pass;
  j["region"] = rep.region;
  j["n_samples"] = rep.n_samples;
  j["L"] = rep.L;
  ordered_json items = ordered_json::array();
  for (const auto& it : rep.items) {
    ordered_json item;
    item["key"] = it.key;
    item["pass"] = it.pass;
    item["margin"] = it.margin;
    item["note"] = it.note;
    items.push_back(item);
  }
  j["assumptions"] = items;
  return j;
}

ordered_json to_json(const PiDiagnostics& diag) {
  ordered_json j;
  j["diameter"] = diag.diameter;
  j["min_grad_norm"] = diag.min_grad_norm;
  j["min_grad_over_s0"] = diag.min_grad_over_s0;
  j["max_eta_over_dist"] = diag.max_eta_over_dist;
  j["normal_lipschitz_lo"] = diag.normal_lipschitz_lo;
  j["normal_lipschitz_hi"] = diag.normal_lipschitz_hi;
  j["cstar_estimate"] = diag.cstar_estimate;
  j["n_boundary"] = diag.n_boundary;
  j["n_interior"] = diag.n_interior;
  j["partial"] = diag.partial;
  return j;
}

ordered_json to_json(const NegativityReport& rep) {
  ordered_json j;
  j["pass"] = rep.pass();
  j["n_samples"] = rep.n_samples;
  j["max_dcont"] = rep.max_dcont;
  j["argmax_dcont"] = to_json(rep.argmax_dcont);
  j["max_dmax"] = rep.max_dmax;
  j["argmax_dmax"] = to_json(rep.argmax_dmax);
  j["dmax_at_uleft"] = rep.dmax_at_uleft;
  j["argmax_dmax_dist_uleft"] = rep.argmax_dmax_dist_uleft;
  j["tol_zero"] = rep.tol_zero;
  j["n_dcont_positive"] = rep.n_dcont_positive;
  j["n_dmax_positive"] = rep.n_dmax_positive;
  j["n_maximality_violations"] = rep.n_maximality_violations;
  j["n_dmax_failures"] = rep.n_dmax_failures;
  j["fitted_K"] = rep.fitted_K;
  j["dcont_at_u0"] = rep.dcont_at_u0;
  j["pass_dcont"] = rep.pass_dcont;
  j["pass_dmax"] = rep.pass_dmax;
  j["pass_argmax_near_uleft"] = rep.pass_argmax_near_uleft;
  j["pass_maximality"] = rep.pass_maximality;
  return j;
}

ordered_json to_json(const DcontMaxResult& res) {
  ordered_json j;
  j["u_star"] = to_json(res.u_star);
  j["value"] = res.value;
  j["eta_residual"] = res.eta_residual;
  j["angle_nu_l1"] = res.angle_nu_l1;
  j["r1_dot_nu"] = res.r1_dot_nu;
  j["unique_ok"] = res.unique_ok;
  j["multistart_spread"] = res.multistart_spread;
  j["n_starts"] = res.n_starts;
  return j;
}

ordered_json to_json(const ScalingFit& fit) {
  ordered_json j;
  ordered_json cells = ordered_json::array();
  for (const auto& c : fit.cells) {
    ordered_json cell;
    cell["C"] = c.C;
    cell["s0"] = c.s0;
    cell["max_dcont"] = c.max_dcont;
    cell["diam_times_C"] = c.diam_times_C;
    cell["min_grad_over_s0"] = c.min_grad_over_s0;
    cell["ustar_u0_scaled"] = c.ustar_u0_scaled;
    cell["hessian_max_eig"] = c.hessian_max_eig;
    cell["hessian_negdef"] = c.hessian_negdef;
    cell["sweep_pass"] = c.sweep_pass;
    if (!c.error.empty()) cell["error"] = c.error;
    cells.push_back(cell);
  }
  j["cells"] = cells;
  j["slopes"] = fit.slopes;
  j["diam_ratio"] = fit.diam_ratio;
  j["ustar_ratio"] = fit.ustar_ratio;
  return j;
}

ordered_json to_json(const ContractionConstants& c) {
  ordered_json j;
  j["alpha1"] = c.alpha1;
  j["L"] = c.L;
  j["Cstar"] = c.Cstar;
  j["lambda_hat"] = c.lambda_hat;
  j["sup_lambda1"] = c.sup_lambda1;
  j["inf_lambda2"] = c.inf_lambda2;
  j["alpha_ok"] = c.alpha_ok;
  j["v_bound"] = c.v_bound;
  return j;
}

ordered_json to_json(const ContractionRun& run) {
  ordered_json j;
  j["status"] = run.status;
  j["steps"] = run.steps;
  j["E0"] = run.E0;
  j["E_end"] = run.E_end;
  j["min_E"] = run.min_E;
  j["K_tol_measured"] = run.K_tol;
  j["max_drift"] = run.max_drift;
  j["case_counts"] = {run.case_counts[0], run.case_counts[1], run.case_counts[2],
                      run.case_counts[3]};
  j["case2_strict"] = run.case2_strict;
  j["label_switches"] = run.label_switches;
  j["window_violations"] = run.window_violations;
  j["entropy_flags"] = run.entropy_flags;
  j["max_entropy_residual"] = run.max_entropy_residual;
  j["max_dissipation"] = run.max_dissipation;
  j["constants"] = to_json(run.constants);
  return j;
}

ordered_json report_header(const RunConfig& cfg) {
  ordered_json j;
  j["tool"] = "acshock";
  j["version"] = kVersion;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  j["config_hash"] = buf;
  j["seed"] = cfg.seed;
  return j;
}

std::string curve_csv(const ShockCurve& curve) {
  std::string out = "s";
  for (int i = 0; i < curve.base.n; ++i) out += ",S" + std::to_string(i);
  out += ",sigma\n";
  for (const auto& node : curve.nodes) {
    out += fmt(node.s);
    for (int i = 0; i < curve.base.n; ++i) out += "," + fmt(node.S[i]);
    out += "," + fmt(node.sigma) + "\n";
  }
  return out;
}

std::string negativity_samples_csv(const NegativityReport& rep) {
  const int dim = rep.rows.empty() ? 0 : rep.rows.front().u.n;
  std::string out;
  for (int i = 0; i < dim; ++i) out += "u" + std::to_string(i) + ",";
  out += "eta_tilde,dcont,dmax,s_star\n";
  for (const auto& row : rep.rows) {
    for (int i = 0; i < dim; ++i) out += fmt(row.u[i]) + ",";
    out += fmt(row.eta_tilde) + "," + fmt(row.dcont) + "," + fmt(row.dmax) + "," +
           fmt(row.s_star) + "\n";
  }
  return out;
}

std::string contraction_csv(const ContractionRun& run) {
  std::string out = "t,h,h_dot,E,case,dissipation\n";
  for (size_t k = 0; k < run.path.t.size(); ++k) {
    out += fmt(run.path.t[k]) + "," + fmt(run.path.h[k]) + "," +
           fmt(run.path.h_dot[k]) + "," + fmt(run.E[k]) + "," +
           std::to_string(run.path.label[k]) + "," + fmt(run.path.dissipation[k]) +
           "\n";
  }
  return out;
}

std::string field_csv(const FVField& field) {
  std::string out = "x";
  const int dim = field.u.empty() ? 0 : field.u[0].n;
  for (int i = 0; i < dim; ++i) out += ",u" + std::to_string(i);
  out += "\n";
  for (int j = 0; j < field.ncells; ++j) {
    out += fmt(field.x_center(j));
    for (int i = 0; i < dim; ++i) out += "," + fmt(field.u[j][i]);
    out += "\n";
  }
  return out;
}

std::string scaling_csv(const ScalingFit& fit) {
  std::string out =
      "C,s0,max_dcont,diam_times_C,min_grad_over_s0,ustar_u0_scaled,"
      "hessian_max_eig,sweep_pass\n";
  for (const auto& c : fit.cells) {
    out += fmt(c.C) + "," + fmt(c.s0) + "," + fmt(c.max_dcont) + "," +
           fmt(c.diam_times_C) + "," + fmt(c.min_grad_over_s0) + "," +
           fmt(c.ustar_u0_scaled) + "," + fmt(c.hessian_max_eig) + "," +
           (c.sweep_pass ? "1" : "0") + "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace acshock
