#include "acshock/config.hpp"

#include <fstream>
#include <set>

#include "acshock/errors.hpp"
#include "acshock/relent.hpp"

namespace acshock {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
}

double get_num(const json& obj, const std::string& key, double dflt) {
  if (!obj.contains(key)) return dflt;
  if (!obj[key].is_number()) throw ConfigError("config: '" + key + "' must be a number");
  return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& key, int dflt) {
  if (!obj.contains(key)) return dflt;
  if (!obj[key].is_number_integer())
    throw ConfigError("config: '" + key + "' must be an integer");
  return obj[key].get<int>();
}

std::string get_str(const json& obj, const std::string& key, const std::string& dflt) {
  if (!obj.contains(key)) return dflt;
  if (!obj[key].is_string()) throw ConfigError("config: '" + key + "' must be a string");
  return obj[key].get<std::string>();
}

std::vector<double> get_list(const json& obj, const std::string& key) {
  std::vector<double> out;
  if (!obj.contains(key)) return out;
  if (!obj[key].is_array()) throw ConfigError("config: '" + key + "' must be an array");
  for (const auto& v : obj[key]) {
    if (!v.is_number()) throw ConfigError("config: '" + key + "' entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  require_keys(j, "top level",
               {"system", "shock", "weights", "sweep", "sampling", "fv",
                "tolerances", "seed", "output"});
  RunConfig cfg;

  if (j.contains("system")) {
    const auto& s = j["system"];
    require_keys(s, "system",
                 {"id", "gamma", "rho_lo", "rho_hi", "v_max", "e_lo", "e_hi",
                  "u_lo", "u_hi", "u_max", "a11", "a12", "a21", "a22"});
    cfg.system_id = get_str(s, "id", cfg.system_id);
    for (auto it = s.begin(); it != s.end(); ++it)
      if (it.key() != "id") cfg.system_params[it.key()] = it.value().get<double>();
  }

  if (j.contains("shock")) {
    const auto& s = j["shock"];
    require_keys(s, "shock", {"family", "s0", "base_state"});
    cfg.family = get_int(s, "family", 1);
    cfg.s0 = get_num(s, "s0", cfg.s0);
    if (s.contains("base_state")) {
      const auto arr = get_list(s, "base_state");
      if (arr.empty() || arr.size() > kMaxDim)
        throw ConfigError("config: base_state must have 1..3 entries");
      Vec b(static_cast<int>(arr.size()));
      for (size_t i = 0; i < arr.size(); ++i) b[static_cast<int>(i)] = arr[i];
      cfg.base_state = b;
    }
  }

  if (j.contains("weights")) {
    const auto& w = j["weights"];
    require_keys(w, "weights", {"C", "ratio", "C1"});
    if (w.contains("C")) cfg.C = get_num(w, "C", 0);
    if (w.contains("ratio")) cfg.ratio = get_num(w, "ratio", 1);
    if (w.contains("C1")) cfg.C1 = get_num(w, "C1", 0);
    if (cfg.C && cfg.ratio)
      throw ConfigError("config: give either weights.C or weights.ratio, not both");
  }

  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    require_keys(s, "sweep", {"C_list", "s0_list"});
    cfg.C_list = get_list(s, "C_list");
    cfg.s0_list = get_list(s, "s0_list");
  }

  if (j.contains("sampling")) {
    const auto& s = j["sampling"];
    require_keys(s, "sampling", {"n_samples", "n_assumption", "n_constants"});
    cfg.n_samples = get_int(s, "n_samples", cfg.n_samples);
    cfg.n_assumption = get_int(s, "n_assumption", cfg.n_assumption);
    cfg.n_constants = get_int(s, "n_constants", cfg.n_constants);
  }

  if (j.contains("fv")) {
    const auto& f = j["fv"];
    require_keys(f, "fv",
                 {"cells", "cfl", "t_end", "domain", "scheme", "trace_offset", "ic"});
    cfg.cells = get_int(f, "cells", cfg.cells);
    cfg.cfl = get_num(f, "cfl", cfg.cfl);
    cfg.t_end = get_num(f, "t_end", cfg.t_end);
    if (f.contains("domain")) {
      const auto d = get_list(f, "domain");
      if (d.size() != 2 || d[0] >= d[1])
        throw ConfigError("config: fv.domain must be [lo, hi] with lo < hi");
      cfg.domain_lo = d[0];
      cfg.domain_hi = d[1];
    }
    cfg.scheme = get_str(f, "scheme", cfg.scheme);
    if (cfg.scheme != "rusanov" && cfg.scheme != "muscl")
      throw ConfigError("config: fv.scheme must be rusanov or muscl");
    cfg.trace_offset = get_int(f, "trace_offset", cfg.trace_offset);
    if (f.contains("ic")) {
      const auto& ic = f["ic"];
      require_keys(ic, "fv.ic", {"kind", "amplitude_rel", "x0", "support", "n_modes"});
      cfg.ic_kind = get_str(ic, "kind", cfg.ic_kind);
      cfg.ic_amplitude_rel = get_num(ic, "amplitude_rel", cfg.ic_amplitude_rel);
      cfg.shock_x0 = get_num(ic, "x0", cfg.shock_x0);
      if (ic.contains("support")) {
        const auto sup = get_list(ic, "support");
        if (sup.size() != 2) throw ConfigError("config: fv.ic.support must be [lo, hi]");
        cfg.support_lo = sup[0];
        cfg.support_hi = sup[1];
      }
      cfg.ic_modes = get_int(ic, "n_modes", cfg.ic_modes);
    }
  }

  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    require_keys(t, "tolerances",
                 {"tol_entropy", "tol_rh_check", "tol_dissipation", "trace_tol",
                  "k_tol_drift"});
    cfg.tol_entropy = get_num(t, "tol_entropy", cfg.tol_entropy);
    cfg.tol_rh_check = get_num(t, "tol_rh_check", cfg.tol_rh_check);
    cfg.tol_dissipation = get_num(t, "tol_dissipation", cfg.tol_dissipation);
    cfg.trace_tol = get_num(t, "trace_tol", cfg.trace_tol);
    cfg.k_tol_drift = get_num(t, "k_tol_drift", cfg.k_tol_drift);
    for (double tol : {cfg.tol_entropy, cfg.tol_rh_check, cfg.tol_dissipation,
                       cfg.trace_tol, cfg.k_tol_drift})
      if (!(tol > 0)) throw ConfigError("config: tolerances must be positive");
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      throw ConfigError("config: seed must be an integer");
    cfg.seed = j["seed"].get<uint64_t>();
  }

  if (j.contains("output")) {
    const auto& o = j["output"];
    require_keys(o, "output", {"dir", "format"});
    cfg.out_dir = get_str(o, "dir", cfg.out_dir);
    cfg.format = get_str(o, "format", cfg.format);
    if (cfg.format != "json" && cfg.format != "csv")
      throw ConfigError("config: output.format must be json or csv");
  }

  // Cross-field validation.
  if (!(cfg.s0 > 0)) throw ConfigError("config: shock.s0 must be positive");
  if (cfg.cells < 8) throw ConfigError("config: fv.cells too small");
  if (!(cfg.cfl > 0 && cfg.cfl < 1)) throw ConfigError("config: fv.cfl must be in (0,1)");
  if (cfg.C1) {
    const double ratio = cfg.ratio ? *cfg.ratio
                                   : (cfg.C ? 1.0 + *cfg.C * cfg.s0 : 1.0 + *cfg.C1 * cfg.s0);
    if (!weight_window_ok(*cfg.C1, cfg.s0, ratio))
      throw ConfigError("config: weight ratio outside the admissible window for C1");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  return parse_config(j);
}

ordered_json config_to_json(const RunConfig& cfg) {
  ordered_json j;
  j["system"]["id"] = cfg.system_id;
  for (const auto& [k, v] : cfg.system_params) j["system"][k] = v;
  j["shock"]["family"] = cfg.family;
  j["shock"]["s0"] = cfg.s0;
  if (cfg.base_state) {
    ordered_json arr = ordered_json::array();
    for (int i = 0; i < cfg.base_state->n; ++i) arr.push_back((*cfg.base_state)[i]);
    j["shock"]["base_state"] = arr;
  }
  if (cfg.C) j["weights"]["C"] = *cfg.C;
  if (cfg.ratio) j["weights"]["ratio"] = *cfg.ratio;
  if (cfg.C1) j["weights"]["C1"] = *cfg.C1;
  j["sweep"]["C_list"] = cfg.C_list;
  j["sweep"]["s0_list"] = cfg.s0_list;
  j["sampling"]["n_samples"] = cfg.n_samples;
  j["sampling"]["n_assumption"] = cfg.n_assumption;
  j["sampling"]["n_constants"] = cfg.n_constants;
  j["fv"]["cells"] = cfg.cells;
  j["fv"]["cfl"] = cfg.cfl;
  j["fv"]["t_end"] = cfg.t_end;
  j["fv"]["domain"] = {cfg.domain_lo, cfg.domain_hi};
  j["fv"]["scheme"] = cfg.scheme;
  j["fv"]["trace_offset"] = cfg.trace_offset;
  j["fv"]["ic"]["kind"] = cfg.ic_kind;
  j["fv"]["ic"]["amplitude_rel"] = cfg.ic_amplitude_rel;
  j["fv"]["ic"]["x0"] = cfg.shock_x0;
  j["fv"]["ic"]["support"] = {cfg.support_lo, cfg.support_hi};
  j["fv"]["ic"]["n_modes"] = cfg.ic_modes;
  j["tolerances"]["tol_entropy"] = cfg.tol_entropy;
  j["tolerances"]["tol_rh_check"] = cfg.tol_rh_check;
  j["tolerances"]["tol_dissipation"] = cfg.tol_dissipation;
  j["tolerances"]["trace_tol"] = cfg.trace_tol;
  j["tolerances"]["k_tol_drift"] = cfg.k_tol_drift;
  j["seed"] = cfg.seed;
  j["output"]["dir"] = cfg.out_dir;
  j["output"]["format"] = cfg.format;
  return j;
}

uint64_t config_hash(const RunConfig& cfg) {
  // The hash identifies the scientific run; output routing is presentation.
  ordered_json j = config_to_json(cfg);
  j.erase("output");
  const std::string dump = j.dump();
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace acshock
