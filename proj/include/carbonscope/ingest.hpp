#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "carbonscope/carbon.hpp"
#include "carbonscope/power.hpp"
#include "carbonscope/scenario.hpp"
#include "carbonscope/workload.hpp"

namespace carbonscope {

struct RowRejection {
    std::size_t line; // 1-based line number in the input
    std::string reason;
};

/// Outcome of parsing a row-oriented data file. Every data row is either
/// accepted or listed under rejected.
struct ParseReport {
    std::size_t accepted = 0;
    std::vector<RowRejection> rejected;

    bool clean() const { return rejected.empty(); }
};

// Data files (CSV telemetry exports) accumulate row-level rejections and
// keep going; ordering violations are hard errors. Configuration documents
// (JSON) fail hard on the first problem.

/// CSV with header "timestamp,ci_g_per_kwh", ISO-8601 UTC timestamps.
CarbonIntensitySeries parse_ci_csv(std::string_view text, std::string region,
                                   ParseReport* report = nullptr);

/// Long-format CSV with header "timestamp,source,share"; rows grouped by
/// timestamp into snapshots. Snapshots whose shares do not sum to 1 within
/// 1e-6 are rejected as a whole.
std::vector<EnergyMixSnapshot> parse_mix_csv(std::string_view text, ParseReport* report = nullptr);

/// CSV with header "source,ci_g_per_kwh".
SourceCoefficients parse_coefficients_csv(std::string_view text, ParseReport* report = nullptr);

/// CSV with header
/// "name,params_millions,size_mb,accuracy_pct,mean_inference_ms,energy_wh_per_5k".
std::vector<ModelProfile> parse_model_profiles_csv(std::string_view text,
                                                   ParseReport* report = nullptr);

/// JSON power-model document (schema_version, device_name, idle_watts,
/// max_watts, facility_housed, points[]).
PowerModel parse_power_model(std::string_view json_text);

/// JSON workload document; base_path resolves referenced profile files.
WorkloadTrace parse_workload(std::string_view json_text, const std::filesystem::path& base_path);

/// JSON scenario document referencing power-model, grid, and workload files
/// by path (relative to base_path). Fully resolves and invariant-checks the
/// scenario, including grid coverage of the workload horizon.
Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_path);

/// JSON resource-sweep document listing core-capped configurations.
std::vector<ResourceConfig> parse_resource_configs(std::string_view json_text,
                                                   const std::filesystem::path& base_path);

// Serializers. Numbers round-trip exactly: re-parsing serialized output
// reproduces the original object.

std::string write_ci_csv(const CarbonIntensitySeries& series);
std::string write_mix_csv(std::span<const EnergyMixSnapshot> snapshots);
std::string write_coefficients_csv(const SourceCoefficients& coeffs);
std::string write_model_profiles_csv(std::span<const ModelProfile> profiles);
std::string write_power_model(const PowerModel& model);

/// Reads a whole file; missing/unreadable files raise ParseError naming it.
std::string read_file(const std::filesystem::path& path);

/// Convenience wrappers: read + parse, hard-failing on any rejected row so
/// configuration loads are unambiguous.
CarbonIntensitySeries load_ci_csv(const std::filesystem::path& path, std::string region);
std::vector<EnergyMixSnapshot> load_mix_csv(const std::filesystem::path& path);
SourceCoefficients load_coefficients_csv(const std::filesystem::path& path);
std::vector<ModelProfile> load_model_profiles_csv(const std::filesystem::path& path);
PowerModel load_power_model(const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);
std::vector<ResourceConfig> load_resource_configs(const std::filesystem::path& path);

} // namespace carbonscope
