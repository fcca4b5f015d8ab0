#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "acshock/geometry.hpp"

namespace acshock {

/// One deterministic run: system + shock + weights + sampler sizes + FV setup.
/// Parsed strictly from JSON: unknown keys are rejected.
struct RunConfig {
  // system
  std::string system_id = "isentropic_euler";
  std::map<std::string, double> system_params;  // e.g. gamma, rho_lo, ...

  // shock
  int family = 1;
  std::optional<Vec> base_state;  // chart coordinates; default: box center
  double s0 = 1e-2;

  // weights: exactly one of C / ratio drives the context; C1 enables the
  // admissible-window validation.
  std::optional<double> C;
  std::optional<double> ratio;
  std::optional<double> C1;

  // sweep grids
  std::vector<double> C_list;
  std::vector<double> s0_list;

  // sampler sizes
  int n_samples = 10000;
  int n_assumption = 1000;
  int n_constants = 4000;

  // finite volume
  int cells = 2000;
  double cfl = 0.45;
  double t_end = 0.1;
  double domain_lo = -0.5, domain_hi = 0.5;
  std::string scheme = "rusanov";
  int trace_offset = 1;
  std::string ic_kind = "perturbed-shock";
  double ic_amplitude_rel = 0.1;  // perturbation L2 norm relative to s0
  double shock_x0 = 0.0;
  double support_lo = -0.35, support_hi = -0.05;
  int ic_modes = 3;

  // tolerances (strict name set; all positive)
  double tol_entropy = 1e-12;
  double tol_rh_check = 1e-7;
  double tol_dissipation = 1e-5;
  double trace_tol = 1e-6;
  double k_tol_drift = 50.0;  // allowed E drift coefficient: E - E0 <= K dx t

  uint64_t seed = 20240801;
  std::string out_dir = "out";
  std::string format = "json";  // "json" | "csv" (csv adds series artifacts)
};

/// Throws ConfigError on unknown keys, malformed values, or inconsistent
/// weights (ratio outside the admissible window when C1 is given).
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Canonical JSON round-trip (stable key order) used for hashing and report
/// embedding.
nlohmann::ordered_json config_to_json(const RunConfig& cfg);

/// FNV-1a over the canonical dump.
uint64_t config_hash(const RunConfig& cfg);

}  // namespace acshock
