#pragma once

#include <string>

#include <json.hpp>

#include "acshock/assumptions.hpp"
#include "acshock/config.hpp"
#include "acshock/contraction.hpp"
#include "acshock/dissipation.hpp"
#include "acshock/relent.hpp"

namespace acshock {

nlohmann::ordered_json to_json(const Vec& v);
nlohmann::ordered_json to_json(const AssumptionReport& rep);
nlohmann::ordered_json to_json(const PiDiagnostics& diag);
nlohmann::ordered_json to_json(const NegativityReport& rep);
nlohmann::ordered_json to_json(const DcontMaxResult& res);
nlohmann::ordered_json to_json(const ScalingFit& fit);
nlohmann::ordered_json to_json(const ContractionConstants& c);

/// Run summary (series lengths, drift statistics, case counts); the full time
/// series goes to CSV.
nlohmann::ordered_json to_json(const ContractionRun& run);

/// Header block embedded in every report: tool version, config hash, seed.
nlohmann::ordered_json report_header(const RunConfig& cfg);

// CSV writers. '.' decimal separator, ',' delimiter, UTF-8.
std::string curve_csv(const ShockCurve& curve);
std::string negativity_samples_csv(const NegativityReport& rep);
std::string contraction_csv(const ContractionRun& run);
std::string field_csv(const FVField& field);
std::string scaling_csv(const ScalingFit& fit);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace acshock
