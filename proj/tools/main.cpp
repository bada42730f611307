#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "carbonscope/ingest.hpp"
#include "carbonscope/render.hpp"
#include "carbonscope/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitCoverageError = 3;

using namespace carbonscope;

struct CommonFlags {
    std::string format = "table";
    std::string timezone = "UTC";

    RenderOptions render_options() const {
        return {parse_output_format(format), parse_zone_offset_minutes(timezone)};
    }
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--format", flags.format, "Output format: table, csv, or json")
        ->default_val("table");
    cmd->add_option("--timezone", flags.timezone,
                    "Display zone for table output (UTC or fixed offset +HH:MM); "
                    "computation and machine formats stay UTC")
        ->default_val("UTC");
}

// Grid label for a bare CSV path: the file stem.
std::string grid_label(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

int run_estimate(const std::string& scenario_path, const CommonFlags& flags) {
    const Scenario scenario = load_scenario(scenario_path);
    const ScenarioReport report = estimate(scenario);
    std::cout << render_estimate(report, scenario.name(), flags.render_options());
    return kExitOk;
}

int run_sweep_time(const std::string& scenario_path, const std::string& window_text,
                   const std::string& step_text, const CommonFlags& flags) {
    const auto slash = window_text.find('/');
    if (slash == std::string::npos)
        throw ValidationError("--window must be 'ISO_START/ISO_END'");
    const TimeInterval window(parse_iso8601_utc(window_text.substr(0, slash)),
                              parse_iso8601_utc(window_text.substr(slash + 1)));

    // Step: seconds, or a number suffixed with s/m/h.
    double step_s = 0.0;
    std::string digits = step_text;
    double scale = 1.0;
    if (!digits.empty() && (digits.back() == 's' || digits.back() == 'm' || digits.back() == 'h')) {
        scale = digits.back() == 'h' ? 3600.0 : digits.back() == 'm' ? 60.0 : 1.0;
        digits.pop_back();
    }
    try {
        std::size_t consumed = 0;
        step_s = std::stod(digits, &consumed) * scale;
        if (consumed != digits.size())
            throw std::invalid_argument(step_text);
    } catch (const std::exception&) {
        throw ValidationError("invalid --step '" + step_text + "' (use seconds or e.g. '1h')");
    }

    const Scenario scenario = load_scenario(scenario_path);
    const SweepResult result = sweep_start_time(scenario, window, step_s);
    std::cout << render_time_sweep(result, step_s, flags.render_options());
    return kExitOk;
}

int run_compare_locations(const std::string& scenario_path,
                          const std::vector<std::string>& grid_paths, const CommonFlags& flags) {
    const Scenario scenario = load_scenario(scenario_path);
    std::vector<GridProfile> grids;
    grids.reserve(grid_paths.size());
    for (const auto& path : grid_paths)
        grids.push_back(GridProfile::from_series(load_ci_csv(path, grid_label(path))));
    const SweepResult result = compare_locations(scenario, grids);
    std::cout << render_location_comparison(result, flags.render_options());
    return kExitOk;
}

int run_compare_models(const std::string& profiles_path, std::int64_t items,
                       const std::string& grid_path, const std::string& at_text, bool pareto,
                       const CommonFlags& flags) {
    const auto profiles = load_model_profiles_csv(profiles_path);
    const GridProfile grid = GridProfile::from_series(load_ci_csv(grid_path, grid_label(grid_path)));
    const TimeStamp at = at_text.empty() ? grid.series().start() : parse_iso8601_utc(at_text);

    ModelComparisonView view;
    view.rows = compare_models(profiles, items, grid, at);
    view.item_count = items;
    view.grid_region = grid.region();
    view.at = at;

    if (pareto) {
        // Accuracy up, latency down, energy down (emissions follow energy at
        // a fixed CI, so they add no independent objective here).
        std::vector<MetricRow> rows;
        for (const auto& row : view.rows)
            rows.push_back({row.model,
                            {{"accuracy", row.accuracy_pct},
                             {"duration", row.duration_s},
                             {"energy", row.energy.joules()}}});
        const std::vector<Objective> objectives{{"accuracy", Direction::Maximize},
                                                {"duration", Direction::Minimize},
                                                {"energy", Direction::Minimize}};
        const auto front = pareto_front_indices(rows, objectives);
        std::vector<bool> dominated(view.rows.size(), true);
        for (const std::size_t i : front)
            dominated[i] = false;
        view.dominated = std::move(dominated);
    }
    std::cout << render_model_comparison(view, flags.render_options());
    return kExitOk;
}

int run_sweep_resources(const std::string& models_path, std::int64_t items,
                        const CommonFlags& flags) {
    const auto configs = load_resource_configs(models_path);
    const auto rows = sweep_resources(configs, items);
    std::cout << render_resource_sweep(rows, items, flags.render_options());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy and carbon footprint estimation for AI-driven IoT/edge workload scenarios"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string scenario_path, window_text, step_text = "3600";
    std::string profiles_path, models_path, grid_path, at_text;
    std::vector<std::string> grid_paths;
    std::int64_t items = 1;
    bool pareto = false;

    auto* estimate_cmd =
        app.add_subcommand("estimate", "Estimate energy and emissions of a scenario");
    estimate_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    add_common(estimate_cmd, flags);

    auto* sweep_time_cmd = app.add_subcommand(
        "sweep-time", "Re-run a scenario across candidate start times within a window");
    sweep_time_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    sweep_time_cmd->add_option("--window", window_text, "Start-time window 'ISO_START/ISO_END'")
        ->required();
    sweep_time_cmd->add_option("--step", step_text, "Candidate spacing (seconds, or e.g. '1h')")
        ->default_val("3600");
    add_common(sweep_time_cmd, flags);

    auto* compare_locations_cmd = app.add_subcommand(
        "compare-locations", "Re-run a scenario against alternative grid CI series");
    compare_locations_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    compare_locations_cmd
        ->add_option("--grid", grid_paths, "Carbon-intensity CSV (repeat per candidate region)")
        ->required()
        ->expected(-1);
    add_common(compare_locations_cmd, flags);

    auto* compare_models_cmd = app.add_subcommand(
        "compare-models", "Score model profiles on an inference batch against one grid");
    compare_models_cmd->add_option("profiles", profiles_path, "Model-profile CSV file")->required();
    compare_models_cmd->add_option("--items", items, "Inference batch size")->default_val(5000);
    compare_models_cmd->add_option("--grid", grid_path, "Carbon-intensity CSV")->required();
    compare_models_cmd->add_option("--at", at_text,
                                   "Batch start time (ISO-8601 UTC; default: grid start)");
    compare_models_cmd->add_flag("--pareto", pareto,
                                 "Mark rows dominated on accuracy/latency/energy");
    add_common(compare_models_cmd, flags);

    auto* sweep_resources_cmd = app.add_subcommand(
        "sweep-resources", "Duration/energy/power per resource configuration");
    sweep_resources_cmd->add_option("models", models_path, "Resource-sweep JSON file")->required();
    sweep_resources_cmd->add_option("--items", items, "Inference batch size")->default_val(1);
    add_common(sweep_resources_cmd, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (estimate_cmd->parsed())
            return run_estimate(scenario_path, flags);
        if (sweep_time_cmd->parsed())
            return run_sweep_time(scenario_path, window_text, step_text, flags);
        if (compare_locations_cmd->parsed())
            return run_compare_locations(scenario_path, grid_paths, flags);
        if (compare_models_cmd->parsed())
            return run_compare_models(profiles_path, items, grid_path, at_text, pareto, flags);
        if (sweep_resources_cmd->parsed())
            return run_sweep_resources(models_path, items, flags);
    } catch (const CoverageError& e) {
        std::cerr << "coverage error: " << e.what() << "\n";
        return kExitCoverageError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
