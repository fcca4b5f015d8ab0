#pragma once

#include <string>
#include <vector>

#include "acshock/hugoniot.hpp"
#include "acshock/system.hpp"

namespace acshock {

struct AssumptionThresholds {
  double eigen_gap_min = 1e-10;     // (a) absolute gap floor (relative check also applied)
  double gnl_min = 1e-6;            // (b) |grad(lambda_i) . r_i|
  double compat_tol = 1e-6;         // (c) relative residual of q' = eta' f'
  double convexity_min = 1e-10;     // (c) min eigenvalue of grad^2(eta)
  double liu_min = 0.0;             // (f)-(i) strict margins beyond this value
  double monotone_min = 0.0;        // (j) margins
  double curve_s_max = 0.5;         // (d) requested extent of shock-curve stubs
  int n_curves = 6;                 // curve stubs per family
  double curve_skip_nodes = 10.0;   // skip s < skip_nodes * ds in Liu margins
};

struct AssumptionItem {
  std::string key;      // "a".."j"
  bool pass = false;
  double margin = 0;    // distance above the threshold (sign carries pass/fail)
  std::string note;
};

struct AssumptionReport {
  std::vector<AssumptionItem> items;
  double L = 0;                 // assumption (e): max |lambda| + 10% margin
  int n_samples = 0;
  std::string region;
  bool pass = false;

  const AssumptionItem* find(const std::string& key) const {
    for (const auto& it : items)
      if (it.key == key) return &it;
    return nullptr;
  }
};

/// Samples `box` (in the system's chart) and shock-curve stubs, and audits
/// Assumptions (a)-(j). Failures are report entries, never exceptions.
AssumptionReport verify_assumptions(const SystemDescriptor& sys, const Box& box,
                                    int n_samples, const AssumptionThresholds& thr,
                                    Rng& rng);

}  // namespace acshock
