#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "carbonscope/carbon.hpp"
#include "carbonscope/power.hpp"
#include "carbonscope/workload.hpp"

namespace carbonscope {

/// A named device available to tasks, backed by a power model.
struct DeviceInstance {
    std::string name;
    PowerModel model;
};

/// Everything needed to estimate one run: infrastructure, facility overhead,
/// grid carbon intensity, the workload, and its anchor start time.
class Scenario {
public:
    Scenario(std::string name, std::vector<DeviceInstance> devices, FacilityProfile facility,
             GridProfile grid, WorkloadTrace workload, TimeStamp anchor);

    const std::string& name() const { return name_; }
    const std::vector<DeviceInstance>& devices() const { return devices_; }
    const FacilityProfile& facility() const { return facility_; }
    const GridProfile& grid() const { return grid_; }
    const WorkloadTrace& workload() const { return workload_; }
    TimeStamp anchor() const { return anchor_; }

    const PowerModel& device_model(const std::string& device_name) const;

    /// Same scenario starting at a different instant.
    Scenario with_anchor(TimeStamp anchor) const;
    /// Same scenario drawing from a different grid.
    Scenario with_grid(GridProfile grid) const;

private:
    std::string name_;
    std::vector<DeviceInstance> devices_;
    FacilityProfile facility_;
    GridProfile grid_;
    WorkloadTrace workload_;
    TimeStamp anchor_;
};

struct TaskReport {
    std::string task_id;
    TimeInterval interval;
    Energy energy;       // facility overhead included where applicable
    CarbonMass emissions;
};

/// Scenario totals with per-task attribution. Totals are the exact sums of
/// the breakdown entries.
struct ScenarioReport {
    Energy total_energy;
    CarbonMass total_emissions;
    std::vector<TaskReport> breakdown;
    std::string disclaimer;
};

/// Runs the estimation pipeline: per task, build the power trace, integrate
/// energy, apply PUE for facility-housed devices, split at CI breakpoints,
/// and convert to emissions against the scenario grid.
ScenarioReport estimate(const Scenario& scenario);

struct SweepCandidate {
    std::string label;
    ScenarioReport report;
};

/// Candidates in enumeration order plus the argmin-emissions index.
/// Ties resolve to the earliest/first-listed candidate.
struct SweepResult {
    std::vector<SweepCandidate> candidates;
    std::size_t best_index = 0;

    const SweepCandidate& best() const { return candidates.at(best_index); }
};

/// Re-runs the scenario once per candidate start time in [window.start,
/// window.end), stepping by step_s. Energy is invariant across candidates;
/// only emissions move with the grid CI.
SweepResult sweep_start_time(const Scenario& scenario, const TimeInterval& window, double step_s);

/// Re-runs the scenario once per grid, keeping the workload and start fixed.
SweepResult compare_locations(const Scenario& scenario, std::span<const GridProfile> grids);

/// (a - b) / a as a percentage; negative when b exceeds a. a must be > 0.
double relative_reduction_pct(const CarbonMass& a, const CarbonMass& b);

struct ModelComparisonRow {
    std::string model;
    double accuracy_pct;
    double duration_s;
    Energy energy;
    CarbonMass emissions;
};

/// Scores each profile on an item_count batch charged against the grid at
/// the given start instant.
std::vector<ModelComparisonRow> compare_models(std::span<const ModelProfile> profiles,
                                               std::int64_t item_count, const GridProfile& grid,
                                               TimeStamp at);

/// One resource configuration of a device (e.g. a core-capped run), with the
/// inference latency measured at that configuration.
struct ResourceConfig {
    std::string label;
    PowerModel model;
    double utilization = 1.0; // fraction of the model's full capacity
    double inference_ms = 0.0;
};

struct ResourceRow {
    std::string label;
    double duration_s;
    Power mean_power;
    Energy energy;
};

/// Duration and energy of an item_count batch per configuration, at the
/// configuration's mean power draw.
std::vector<ResourceRow> sweep_resources(std::span<const ResourceConfig> configs,
                                         std::int64_t item_count);

enum class Direction { Minimize, Maximize };

struct Objective {
    std::string metric;
    Direction direction;
};

/// A labeled point in metric space, as fed to pareto_front.
struct MetricRow {
    std::string label;
    std::map<std::string, double> metrics;
};

/// Rows not strictly dominated on the given objectives, in input order.
/// Identical rows do not dominate each other and are all retained.
std::vector<MetricRow> pareto_front(std::span<const MetricRow> rows,
                                    std::span<const Objective> objectives);

/// Index-based variant: positions in `rows` of the non-dominated rows.
std::vector<std::size_t> pareto_front_indices(std::span<const MetricRow> rows,
                                              std::span<const Objective> objectives);

} // namespace carbonscope
