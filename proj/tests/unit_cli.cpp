#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "acshock/config.hpp"
#include "acshock/errors.hpp"
#include "cli.hpp"

using namespace acshock;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path dir = fs::temp_directory_path() / "acshock_cli_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream out(p);
  out << body;
  return p;
}

const char* kSmallDissipation = R"({
  "system": {"id": "burgers"},
  "shock": {"family": 1, "s0": 0.01, "base_state": [1.0]},
  "weights": {"C": 50.0, "C1": 50.0},
  "sampling": {"n_samples": 600, "n_constants": 500},
  "seed": 7
})";

}  // namespace

TEST_CASE("config parsing: defaults, strictness, weight window") {
  const auto j = nlohmann::json::parse(kSmallDissipation);
  const RunConfig cfg = parse_config(j);
  CHECK(cfg.system_id == "burgers");
  CHECK(cfg.s0 == 0.01);
  CHECK(cfg.C.has_value());
  CHECK(cfg.seed == 7);
  CHECK(cfg.tol_entropy > 0);

  // unknown keys rejected (typo protection)
  auto bad = j;
  bad["tolerances"] = {{"tol_entropy_typo", 1e-12}};
  CHECK_THROWS_AS(parse_config(bad), ConfigError);
  auto bad2 = j;
  bad2["unknown_section"] = 1;
  CHECK_THROWS_AS(parse_config(bad2), ConfigError);

  // weight ratio outside the admissible window for the given C1
  auto bad3 = j;
  bad3["weights"] = {{"ratio", 1.0}, {"C1", 50.0}};
  CHECK_THROWS_AS(parse_config(bad3), ConfigError);

  // both C and ratio is ambiguous
  auto bad4 = j;
  bad4["weights"] = {{"C", 50.0}, {"ratio", 1.5}};
  CHECK_THROWS_AS(parse_config(bad4), ConfigError);

  // non-positive tolerance
  auto bad5 = j;
  bad5["tolerances"] = {{"tol_entropy", 0.0}};
  CHECK_THROWS_AS(parse_config(bad5), ConfigError);
}

TEST_CASE("config hash is stable and order-insensitive on round trips") {
  const auto j = nlohmann::json::parse(kSmallDissipation);
  const RunConfig a = parse_config(j);
  const RunConfig b = parse_config(config_to_json(a));
  CHECK(config_hash(a) == config_hash(b));
}

TEST_CASE("cli: malformed config exits 2, missing stage exits 2") {
  const auto cfg = write_config("bad.json", "{ not json");
  CHECK(cli::run({"--config", cfg.string(), "--stage", "verify-dissipation"}) == 2);
  const auto ok = write_config("ok.json", kSmallDissipation);
  CHECK(cli::run({"--config", ok.string(), "--stage", "no-such-stage"}) == 2);
}

TEST_CASE("cli: dissipation stage passes for Burgers and is byte-deterministic") {
  const auto cfg = write_config("diss.json", kSmallDissipation);
  const fs::path out1 = fs::temp_directory_path() / "acshock_out1";
  const fs::path out2 = fs::temp_directory_path() / "acshock_out2";
  fs::remove_all(out1);
  fs::remove_all(out2);

  CHECK(cli::run({"--config", cfg.string(), "--stage", "verify-dissipation",
                  "--out", out1.string()}) == 0);
  CHECK(cli::run({"--config", cfg.string(), "--stage", "verify-dissipation",
                  "--out", out2.string()}) == 0);

  const std::string r1 = slurp(out1 / "verify-dissipation.json");
  const std::string r2 = slurp(out2 / "verify-dissipation.json");
  REQUIRE_FALSE(r1.empty());
  CHECK(r1 == r2);  // identical config + seed -> byte-identical report

  // report embeds the config hash and tool version
  const auto rep = nlohmann::json::parse(r1);
  CHECK(rep.contains("config_hash"));
  CHECK(rep.contains("version"));
  CHECK(rep["seed"] == 7);

  // a different seed changes sampling but not validity
  const fs::path out3 = fs::temp_directory_path() / "acshock_out3";
  fs::remove_all(out3);
  CHECK(cli::run({"--config", cfg.string(), "--stage", "verify-dissipation",
                  "--out", out3.string(), "--seed", "8"}) == 0);
  CHECK(slurp(out3 / "verify-dissipation.json") != r1);
}

TEST_CASE("cli: assumption audit exit codes (pass and linear-flux failure)") {
  const auto good = write_config("audit.json", R"({
    "system": {"id": "burgers", "u_lo": -1.0, "u_hi": 1.0},
    "sampling": {"n_assumption": 300},
    "seed": 3
  })");
  const fs::path out = fs::temp_directory_path() / "acshock_out_audit";
  fs::remove_all(out);
  CHECK(cli::run({"--config", good.string(), "--stage", "verify-assumptions",
                  "--out", out.string()}) == 0);

  const auto linear = write_config("linear.json", R"({
    "system": {"id": "linear2"},
    "sampling": {"n_assumption": 200},
    "seed": 3
  })");
  CHECK(cli::run({"--config", linear.string(), "--stage", "verify-assumptions",
                  "--out", out.string()}) == 1);
  const auto rep = nlohmann::json::parse(slurp(out / "verify-assumptions.json"));
  bool b_flagged = false;
  for (const auto& item : rep["report"]["assumptions"])
    if (item["key"] == "b" && item["pass"] == false) b_flagged = true;
  CHECK(b_flagged);
}

TEST_CASE("cli: negative control reports violations with exit 1") {
  const auto cfg = write_config("negctrl.json", R"({
    "system": {"id": "isentropic_euler", "gamma": 1.4},
    "shock": {"family": 1, "s0": 0.05},
    "weights": {"ratio": 1.0},
    "sampling": {"n_samples": 1500},
    "seed": 11
  })");
  const fs::path out = fs::temp_directory_path() / "acshock_out_neg";
  fs::remove_all(out);
  CHECK(cli::run({"--config", cfg.string(), "--stage", "verify-dissipation",
                  "--out", out.string()}) == 1);
  const auto rep = nlohmann::json::parse(slurp(out / "verify-dissipation.json"));
  const auto& neg = rep["report"]["negativity"];
  CHECK(neg["pass"] == false);
  CHECK(neg["n_dcont_positive"].get<int>() + neg["n_dmax_positive"].get<int>() > 0);
}

TEST_CASE("cli: contract stage on a small grid (csv artifacts)") {
  const auto cfg = write_config("contract.json", R"({
    "system": {"id": "isentropic_euler", "gamma": 1.4,
               "rho_lo": 0.5, "rho_hi": 2.0, "v_max": 2.0},
    "shock": {"family": 1, "s0": 0.05, "base_state": [1.0, 0.0]},
    "weights": {"C": 20.0},
    "sampling": {"n_samples": 500, "n_constants": 500},
    "fv": {"cells": 500, "t_end": 0.03, "domain": [-0.35, 0.35],
           "trace_offset": 12,
           "ic": {"kind": "perturbed-shock", "amplitude_rel": 0.1,
                  "support": [-0.15, -0.02]}},
    "output": {"format": "csv"},
    "seed": 21
  })");
  const fs::path out = fs::temp_directory_path() / "acshock_out_contract";
  fs::remove_all(out);
  CHECK(cli::run({"--config", cfg.string(), "--stage", "contract",
                  "--out", out.string()}) == 0);
  CHECK(fs::exists(out / "contract.json"));
  CHECK(fs::exists(out / "contract_series.csv"));
  CHECK(fs::exists(out / "contract_final_field.csv"));
  const std::string csv = slurp(out / "contract_series.csv");
  CHECK(csv.rfind("t,h,h_dot,E,case,dissipation", 0) == 0);
}

TEST_CASE("cli: oversized perturbation amplitude exits 1") {
  const auto cfg = write_config("contract_blowup.json", R"({
    "system": {"id": "isentropic_euler", "gamma": 1.4,
               "rho_lo": 0.5, "rho_hi": 2.0, "v_max": 2.0},
    "shock": {"family": 1, "s0": 0.05, "base_state": [1.0, 0.0]},
    "weights": {"C": 20.0},
    "sampling": {"n_constants": 300},
    "fv": {"cells": 200, "t_end": 0.01, "domain": [-0.35, 0.35],
           "ic": {"kind": "perturbed-shock", "amplitude_rel": 40.0,
                  "support": [-0.15, -0.02]}},
    "seed": 9
  })");
  const fs::path out = fs::temp_directory_path() / "acshock_out_blowup";
  fs::remove_all(out);
  CHECK(cli::run({"--config", cfg.string(), "--stage", "contract",
                  "--out", out.string()}) == 1);
}

TEST_CASE("cli: csv format writes sample and curve dumps") {
  const auto cfg = write_config("diss_csv.json", R"({
    "system": {"id": "burgers"},
    "shock": {"family": 1, "s0": 0.01, "base_state": [1.0]},
    "weights": {"C": 50.0},
    "sweep": {"C_list": [50.0], "s0_list": [0.01]},
    "sampling": {"n_samples": 400},
    "output": {"format": "csv"},
    "seed": 5
  })");
  const fs::path out = fs::temp_directory_path() / "acshock_out_csv";
  fs::remove_all(out);
  CHECK(cli::run({"--config", cfg.string(), "--stage", "verify-dissipation",
                  "--out", out.string()}) == 0);
  CHECK(fs::exists(out / "dissipation_samples.csv"));
  CHECK(fs::exists(out / "base_curve.csv"));
  const std::string grid = slurp(out / "dissipation_grid.csv");
  CHECK(grid.rfind("C,s0,max_dcont,max_dmax,diameter,min_normal,cstar", 0) == 0);
  const std::string curve = slurp(out / "base_curve.csv");
  CHECK(curve.rfind("s,S0,sigma", 0) == 0);
}
