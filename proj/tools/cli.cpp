#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "acshock/report.hpp"
#include "acshock/version.hpp"

namespace acshock::cli {

namespace {

using nlohmann::ordered_json;

uint64_t stage_seed(const RunConfig& cfg, const std::string& stage) {
  uint64_t h = cfg.seed ^ 0x9e3779b97f4a7c15ull;
  for (unsigned char c : stage) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

SystemDescriptor system_from(const RunConfig& cfg) {
  return make_system(cfg.system_id, cfg.system_params);
}

Vec base_state_from(const RunConfig& cfg, const SystemDescriptor& sys) {
  if (cfg.base_state) {
    const Vec u = sys.to_conserved(*cfg.base_state);
    if (!sys.admissible(u)) throw ConfigError("base_state is not admissible");
    return u;
  }
  return sys.default_basepoint();
}

ShockContext context_from(const RunConfig& cfg, const SystemDescriptor& sys) {
  const Vec base = base_state_from(cfg, sys);
  if (cfg.ratio)
    return make_shock_context_ratio(sys, cfg.family, base, cfg.s0, *cfg.ratio);
  const double C = cfg.C ? *cfg.C : (cfg.C1 ? *cfg.C1 : 100.0);
  return make_shock_context(sys, cfg.family, base, cfg.s0, C);
}

void write_report(const RunConfig& cfg, const std::string& stage,
                  const ordered_json& body) {
  std::filesystem::create_directories(cfg.out_dir);
  ordered_json j = report_header(cfg);
  j["stage"] = stage;
  j["report"] = body;
  write_text_file(cfg.out_dir + "/" + stage + ".json", j.dump(2) + "\n");
}

int cmd_verify_assumptions(const RunConfig& cfg) {
  const SystemDescriptor sys = system_from(cfg);
  Rng rng(stage_seed(cfg, "verify-assumptions"));
  AssumptionThresholds thr;
  const AssumptionReport rep =
      verify_assumptions(sys, sys.working_box, cfg.n_assumption, thr, rng);
  write_report(cfg, "verify-assumptions", to_json(rep));
  std::cout << "verify-assumptions: " << (rep.pass ? "pass" : "FAIL") << "\n";
  for (const auto& item : rep.items)
    if (!item.pass)
      std::cout << "  assumption (" << item.key << ") failed, margin " << item.margin
                << "\n";
  return rep.pass ? kExitPass : kExitFail;
}

int cmd_verify_dissipation(const RunConfig& cfg) {
  const SystemDescriptor sys = system_from(cfg);
  Rng rng(stage_seed(cfg, "verify-dissipation"));
  ShockContext ctx;
  try {
    ctx = context_from(cfg, sys);
  } catch (const InconsistentShockError& e) {
    std::cerr << "context construction failed: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContinuationError& e) {
    std::cerr << "context construction failed: " << e.what() << "\n";
    return kExitUsage;
  }

  SweepOptions sweep_opts;
  sweep_opts.collect_samples = cfg.format == "csv";
  const NegativityReport rep = sweep_negativity(ctx, cfg.n_samples, rng, sweep_opts);
  const DcontMaxResult dm = find_dcont_max(ctx, rng);
  const PiDiagnostics diag = pi_diagnostics(ctx, std::min(cfg.n_samples, 2000), rng);

  ordered_json body;
  body["negativity"] = to_json(rep);
  body["dcont_max"] = to_json(dm);
  body["pi_diagnostics"] = to_json(diag);

  if (cfg.format == "csv") {
    std::filesystem::create_directories(cfg.out_dir);
    write_text_file(cfg.out_dir + "/dissipation_samples.csv",
                    negativity_samples_csv(rep));
    write_text_file(cfg.out_dir + "/base_curve.csv", curve_csv(ctx.base_curve));
  }

  // Optional grid sweep: one CSV row per (C, s0).
  bool grid_pass = true;
  if (!cfg.C_list.empty() && !cfg.s0_list.empty()) {
    std::string csv = "C,s0,max_dcont,max_dmax,diameter,min_normal,cstar,n_samples,pass\n";
    const Vec base = base_state_from(cfg, sys);
    const int n_cell = std::max(cfg.n_samples / 4, 500);
    for (double C : cfg.C_list)
      for (double s0 : cfg.s0_list) {
        const ShockContext cell_ctx = make_shock_context(sys, cfg.family, base, s0, C);
        const NegativityReport cell = sweep_negativity(cell_ctx, n_cell, rng);
        grid_pass = grid_pass && cell.pass();
        std::vector<Vec> boundary;
        const double diameter =
            pi_diameter_estimate(cell_ctx, sys.n >= 3 ? 32 : 16, rng, &boundary);
        double min_normal = std::numeric_limits<double>::infinity();
        for (const auto& b : boundary)
          min_normal = std::min(min_normal, norm(tilde_eta_gradient(cell_ctx, b)));
        const double cstar = estimate_cstar(cell_ctx, n_cell, rng).value;
        char row[320];
        std::snprintf(row, sizeof(row),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d\n", C, s0,
                      cell.max_dcont, cell.max_dmax, diameter, min_normal, cstar,
                      cell.n_samples, cell.pass() ? 1 : 0);
        csv += row;
      }
    std::filesystem::create_directories(cfg.out_dir);
    write_text_file(cfg.out_dir + "/dissipation_grid.csv", csv);
    body["grid_pass"] = grid_pass;
  }
  write_report(cfg, "verify-dissipation", body);

  const bool pass = rep.pass() && grid_pass;
  std::cout << "verify-dissipation: " << (pass ? "pass" : "FAIL")
            << "  max D_cont = " << rep.max_dcont << ", max D_max = " << rep.max_dmax
            << "\n";
  if (rep.n_dcont_positive > 0)
    std::cout << "  " << rep.n_dcont_positive << " samples with D_cont >= 0\n";
  if (rep.n_dmax_positive > 0)
    std::cout << "  " << rep.n_dmax_positive << " samples with D_max beyond tol\n";
  return pass ? kExitPass : kExitFail;
}

int cmd_scaling_study(const RunConfig& cfg) {
  const SystemDescriptor sys = system_from(cfg);
  Rng rng(stage_seed(cfg, "scaling-study"));
  const Vec base = base_state_from(cfg, sys);
  const std::vector<double> Cs = cfg.C_list.empty() ? std::vector<double>{50, 100, 200}
                                                    : cfg.C_list;
  const std::vector<double> s0s =
      cfg.s0_list.empty() ? std::vector<double>{1e-3, 3e-3, 1e-2} : cfg.s0_list;
  const int n_cell = std::max(cfg.n_samples / 4, 500);
  const ScalingFit fit = scaling_study(sys, base, cfg.family, Cs, s0s, n_cell, rng);

  write_report(cfg, "scaling-study", to_json(fit));
  if (cfg.format == "csv") {
    std::filesystem::create_directories(cfg.out_dir);
    write_text_file(cfg.out_dir + "/scaling.csv", scaling_csv(fit));
  }

  bool pass = !fit.slopes.empty();
  for (double slope : fit.slopes) pass = pass && slope >= 2.7 && slope <= 3.3;
  for (const auto& cell : fit.cells)
    pass = pass && cell.error.empty() && cell.sweep_pass && cell.hessian_negdef;
  std::cout << "scaling-study: " << (pass ? "pass" : "FAIL") << "  slopes:";
  for (double s : fit.slopes) std::cout << " " << s;
  std::cout << "\n";
  return pass ? kExitPass : kExitFail;
}

int cmd_contract(const RunConfig& cfg) {
  const SystemDescriptor sys = system_from(cfg);
  Rng rng(stage_seed(cfg, "contract"));
  ShockContext ctx = context_from(cfg, sys);
  const ContractionConstants consts = compute_constants(ctx, cfg.n_constants, rng);

  ICParams ic;
  ic.kind = cfg.ic_kind;
  ic.left_state = ctx.u_left;
  ic.right_state = ctx.u_right;
  ic.x0 = cfg.shock_x0;
  ic.amplitude = cfg.ic_amplitude_rel * ctx.s0;
  ic.support_lo = cfg.support_lo;
  ic.support_hi = cfg.support_hi;
  ic.n_modes = cfg.ic_modes;

  FVField field;
  try {
    field = make_ic(ctx.sys, ic, cfg.domain_lo, cfg.domain_hi, cfg.cells, cfg.cfl,
                    cfg.scheme, rng);
  } catch (const DomainError& e) {
    std::cerr << "initial data rejected: " << e.what() << "\n";
    return kExitFail;
  }

  RunOptions opts;
  opts.trace_offset = cfg.trace_offset;
  opts.tol_entropy = cfg.tol_entropy;
  opts.trace_tol = cfg.trace_tol;
  opts.record_every = std::max(1, cfg.cells / 1000);

  const ContractionRun run =
      run_contraction(ctx, std::move(field), cfg.shock_x0, cfg.t_end, consts, opts);

  write_report(cfg, "contract", to_json(run));
  if (cfg.format == "csv") {
    std::filesystem::create_directories(cfg.out_dir);
    write_text_file(cfg.out_dir + "/contract_series.csv", contraction_csv(run));
    write_text_file(cfg.out_dir + "/contract_final_field.csv",
                    field_csv(run.final_field));
  }

  bool pass = run.status == "completed";
  pass = pass && run.window_violations == 0;
  pass = pass && run.case2_strict == 0;
  pass = pass && run.K_tol <= cfg.k_tol_drift;
  if (cfg.ic_kind == "perturbed-shock") pass = pass && run.E_end < run.E0;

  std::cout << "contract: " << (pass ? "pass" : "FAIL") << "  E0 = " << run.E0
            << ", E_end = " << run.E_end << ", K_tol = " << run.K_tol
            << ", status = " << run.status << "\n";
  return pass ? kExitPass : kExitFail;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"a-contraction verification engine for 1-D conservation laws"};
  app.set_version_flag("--version", std::string("acshock ") + kVersion);

  std::string config_path;
  std::string out_override, format_override, stage = "all";
  std::optional<uint64_t> seed_override;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--stage", stage,
                 "verify-assumptions | verify-dissipation | scaling-study | "
                 "contract | all");
  app.add_option("--out", out_override, "output directory override");
  app.add_option("--seed", seed_override, "RNG seed override");
  app.add_option("--format", format_override, "json | csv");

  std::vector<const char*> argv;
  argv.push_back("acshock");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  RunConfig cfg;
  try {
    cfg = load_config(config_path);
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (seed_override) cfg.seed = *seed_override;
    if (!format_override.empty()) {
      if (format_override != "json" && format_override != "csv")
        throw ConfigError("--format must be json or csv");
      cfg.format = format_override;
    }
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (stage == "verify-assumptions") return cmd_verify_assumptions(cfg);
    if (stage == "verify-dissipation") return cmd_verify_dissipation(cfg);
    if (stage == "scaling-study") return cmd_scaling_study(cfg);
    if (stage == "contract") return cmd_contract(cfg);
    if (stage == "all") {
      const int a = cmd_verify_assumptions(cfg);
      if (a == kExitUsage) return a;
      const int b = cmd_verify_dissipation(cfg);
      if (b == kExitUsage) return b;
      const int c = cmd_scaling_study(cfg);
      if (c == kExitUsage) return c;
      const int d = cmd_contract(cfg);
      if (d == kExitUsage) return d;
      const int worst = std::max({a, b, c, d});
      // bundle: the four stage reports plus the overall verdict
      ordered_json bundle = report_header(cfg);
      for (const char* name : {"verify-assumptions", "verify-dissipation",
                               "scaling-study", "contract"}) {
        std::ifstream in(cfg.out_dir + "/" + name + ".json");
        if (in) bundle["stages"][name] = ordered_json::parse(in);
      }
      bundle["overall_pass"] = worst == 0;
      write_text_file(cfg.out_dir + "/bundle.json", bundle.dump(2) + "\n");
      std::cout << "all stages: " << (worst == 0 ? "pass" : "FAIL") << "\n";
      return worst;
    }
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  std::cerr << "unknown stage '" << stage << "'\n";
  return kExitUsage;
}

}  // namespace acshock::cli
