#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "carbonscope/scenario.hpp"

namespace carbonscope {

enum class OutputFormat { Table, Csv, Json };

/// Parses "table" / "csv" / "json"; anything else is a ValidationError.
OutputFormat parse_output_format(const std::string& text);

/// Display options. The offset shifts timestamps in human-readable output
/// only; JSON stays UTC so machine consumers see one canonical zone.
struct RenderOptions {
    OutputFormat format = OutputFormat::Table;
    int display_offset_minutes = 0;
};

/// Parses a display zone: "UTC", "Z", or a fixed offset "+HH:MM" / "-HH:MM".
int parse_zone_offset_minutes(const std::string& text);

// All JSON output uses a fixed field order and formats floats with six
// significant digits, so byte-identical runs are guaranteed.

std::string render_estimate(const ScenarioReport& report, const std::string& scenario_name,
                            const RenderOptions& opts);

std::string render_time_sweep(const SweepResult& result, double step_s, const RenderOptions& opts);

std::string render_location_comparison(const SweepResult& result, const RenderOptions& opts);

struct ModelComparisonView {
    std::vector<ModelComparisonRow> rows;
    /// Dominated flags parallel to rows, present when Pareto filtering ran.
    std::optional<std::vector<bool>> dominated;
    std::int64_t item_count = 0;
    std::string grid_region;
    TimeStamp at;
};

std::string render_model_comparison(const ModelComparisonView& view, const RenderOptions& opts);

std::string render_resource_sweep(std::span<const ResourceRow> rows, std::int64_t item_count,
                                  const RenderOptions& opts);

/// %.6g formatting shared by every renderer.
std::string format_number(double v);

} // namespace carbonscope
