#include "carbonscope/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace carbonscope {

Scenario::Scenario(std::string name, std::vector<DeviceInstance> devices, FacilityProfile facility,
                   GridProfile grid, WorkloadTrace workload, TimeStamp anchor)
    : name_(std::move(name)), devices_(std::move(devices)), facility_(std::move(facility)),
      grid_(std::move(grid)), workload_(std::move(workload)), anchor_(anchor) {
    for (const auto& item : workload_.items()) {
        const auto& task = item.task;
        if (task.kind() == TaskKind::Training) {
            for (const auto& device : task.training().devices)
                device_model(device); // throws ConfigError when unresolved
        } else if (task.kind() == TaskKind::Inference && task.inference().device) {
            device_model(*task.inference().device);
        }
    }
    if (!workload_.empty()) {
        const TimeInterval horizon(anchor_, anchor_.plus_seconds(workload_.horizon_s()));
        if (!grid_.covers(horizon))
            throw CoverageError("grid '" + grid_.region() + "' does not span the workload " +
                                format_iso8601_utc(horizon.start()) + " .. " +
                                format_iso8601_utc(horizon.end()));
    }
}

const PowerModel& Scenario::device_model(const std::string& device_name) const {
    for (const auto& device : devices_)
        if (device.name == device_name)
            return device.model;
    throw ConfigError("scenario '" + name_ + "': no device named '" + device_name + "'");
}

Scenario Scenario::with_anchor(TimeStamp anchor) const {
    return Scenario(name_, devices_, facility_, grid_, workload_, anchor);
}

Scenario Scenario::with_grid(GridProfile grid) const {
    return Scenario(name_, devices_, facility_, std::move(grid), workload_, anchor_);
}

namespace {

// Absolute-time utilization profile for a task starting at `start`, extended
// to hold the last value through the task end.
std::vector<UtilizationSample> absolute_profile(const TrainingSpec& spec, TimeStamp start) {
    std::vector<UtilizationSample> out;
    out.reserve(spec.profile.size() + 1);
    for (const auto& p : spec.profile)
        out.push_back({start.plus_seconds(p.offset_s), p.utilization});
    if (spec.profile.back().offset_s < spec.duration_s)
        out.push_back({start.plus_seconds(spec.duration_s), spec.profile.back().utilization});
    return out;
}

// Sub-intervals of `interval` cut at the grid's CI breakpoints.
std::vector<TimeInterval> split_at_ci_breakpoints(const TimeInterval& interval,
                                                  const GridProfile& grid) {
    std::vector<TimeInterval> out;
    TimeStamp cursor = interval.start();
    auto cuts = grid.series().breakpoints_within(interval);
    cuts.push_back(interval.end());
    for (const auto& cut : cuts) {
        out.emplace_back(cursor, cut);
        cursor = cut;
    }
    return out;
}

TaskReport estimate_training(const Scenario& scenario, const Task& task, const TimeInterval& window) {
    const auto& spec = task.training();
    const auto pieces = split_at_ci_breakpoints(window, scenario.grid());

    std::vector<EnergySegment> segments;
    segments.reserve(pieces.size());
    for (const auto& piece : pieces)
        segments.push_back({piece, Energy(0.0)});

    for (const auto& device_name : spec.devices) {
        const PowerModel& model = scenario.device_model(device_name);
        const auto trace = task_power_trace(model, absolute_profile(spec, window.start()));
        for (auto& segment : segments) {
            Energy device_energy = integrate_energy(trace, segment.interval);
            if (model.facility_housed())
                device_energy = apply_pue(device_energy, scenario.facility());
            segment.energy += device_energy;
        }
    }

    const auto itemized = emissions(segments, scenario.grid());
    Energy total;
    for (const auto& segment : segments)
        total += segment.energy;
    return {task.id(), window, total, itemized.total};
}

TaskReport estimate_inference(const Scenario& scenario, const Task& task,
                              const TimeInterval& window) {
    const auto& spec = task.inference();
    Energy energy = inference_energy(spec.profile, spec.item_count);
    if (spec.device && scenario.device_model(*spec.device).facility_housed())
        energy = apply_pue(energy, scenario.facility());

    const EnergySegment segment{window, energy};
    const auto itemized = emissions({&segment, 1}, scenario.grid());
    return {task.id(), window, energy, itemized.total};
}

TaskReport estimate_transfer(const Scenario& scenario, const Task& task,
                             const TimeInterval& window) {
    const auto& spec = task.transfer();
    const Energy energy = transfer_energy(spec.bytes, spec.joules_per_bit);
    const EnergySegment segment{window, energy};
    const auto itemized = emissions({&segment, 1}, scenario.grid());
    return {task.id(), window, energy, itemized.total};
}

} // namespace

ScenarioReport estimate(const Scenario& scenario) {
    ScenarioReport report;
    report.disclaimer = kCiLimitationDisclaimer;
    for (const auto& item : scenario.workload().items()) {
        const TimeStamp start = scenario.anchor().plus_seconds(item.start_offset_s);
        const TimeInterval window(start, start.plus_seconds(item.task.duration_s()));
        TaskReport task_report = [&] {
            switch (item.task.kind()) {
            case TaskKind::Training: return estimate_training(scenario, item.task, window);
            case TaskKind::Inference: return estimate_inference(scenario, item.task, window);
            case TaskKind::Transfer: return estimate_transfer(scenario, item.task, window);
            }
            throw ValidationError("unknown task kind");
        }();
        report.total_energy += task_report.energy;
        report.total_emissions += task_report.emissions;
        report.breakdown.push_back(std::move(task_report));
    }
    return report;
}

namespace {

std::size_t argmin_emissions(std::span<const SweepCandidate> candidates) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i)
        if (candidates[i].report.total_emissions < candidates[best].report.total_emissions)
            best = i; // strict comparison keeps the earliest candidate on ties
    return best;
}

} // namespace

SweepResult sweep_start_time(const Scenario& scenario, const TimeInterval& window, double step_s) {
    if (!std::isfinite(step_s) || step_s <= 0.0)
        throw ValidationError("sweep step must be positive");

    SweepResult result;
    for (TimeStamp start = window.start(); start < window.end();
         start = start.plus_seconds(step_s)) {
        const Scenario candidate = scenario.with_anchor(start);
        result.candidates.push_back({format_iso8601_utc(start), estimate(candidate)});
    }
    result.best_index = argmin_emissions(result.candidates);
    return result;
}

SweepResult compare_locations(const Scenario& scenario, std::span<const GridProfile> grids) {
    if (grids.empty())
        throw ValidationError("location comparison needs at least one grid");

    SweepResult result;
    for (const auto& grid : grids) {
        const Scenario candidate = scenario.with_grid(grid);
        result.candidates.push_back({grid.region(), estimate(candidate)});
    }
    result.best_index = argmin_emissions(result.candidates);
    return result;
}

double relative_reduction_pct(const CarbonMass& a, const CarbonMass& b) {
    if (a.grams() <= 0.0)
        throw ValidationError("relative reduction is undefined against zero emissions");
    return (a.grams() - b.grams()) / a.grams() * 100.0;
}

std::vector<ModelComparisonRow> compare_models(std::span<const ModelProfile> profiles,
                                               std::int64_t item_count, const GridProfile& grid,
                                               TimeStamp at) {
    if (item_count < 1)
        throw ValidationError("model comparison needs item_count >= 1");

    std::vector<ModelComparisonRow> rows;
    rows.reserve(profiles.size());
    for (const auto& profile : profiles) {
        const double duration = inference_duration_s(profile, item_count);
        const Energy energy = inference_energy(profile, item_count);
        const EnergySegment segment{TimeInterval(at, at.plus_seconds(duration)), energy};
        const auto itemized = emissions({&segment, 1}, grid);
        rows.push_back({profile.name, profile.accuracy_pct, duration, energy, itemized.total});
    }
    return rows;
}

std::vector<ResourceRow> sweep_resources(std::span<const ResourceConfig> configs,
                                         std::int64_t item_count) {
    if (item_count < 0)
        throw ValidationError("item count must be non-negative");

    std::vector<ResourceRow> rows;
    rows.reserve(configs.size());
    for (const auto& config : configs) {
        const double duration = config.inference_ms * static_cast<double>(item_count) / 1000.0;
        const Power mean_power = config.model.power_at(config.utilization);
        rows.push_back({config.label, duration, mean_power, energy_from_power(mean_power, duration)});
    }
    return rows;
}

namespace {

double metric_of(const MetricRow& row, const std::string& name) {
    const auto it = row.metrics.find(name);
    if (it == row.metrics.end())
        throw ValidationError("row '" + row.label + "' is missing metric '" + name + "'");
    return it->second;
}

// True when `a` is at least as good as `b` on every objective and strictly
// better on at least one.
bool dominates(const MetricRow& a, const MetricRow& b, std::span<const Objective> objectives) {
    bool strictly_better = false;
    for (const auto& objective : objectives) {
        double va = metric_of(a, objective.metric);
        double vb = metric_of(b, objective.metric);
        if (objective.direction == Direction::Maximize) {
            va = -va;
            vb = -vb;
        }
        if (va > vb)
            return false;
        if (va < vb)
            strictly_better = true;
    }
    return strictly_better;
}

} // namespace

std::vector<std::size_t> pareto_front_indices(std::span<const MetricRow> rows,
                                              std::span<const Objective> objectives) {
    if (objectives.empty())
        throw ValidationError("pareto front needs at least one objective");
    for (const auto& row : rows)
        for (const auto& objective : objectives)
            metric_of(row, objective.metric);

    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < rows.size() && !dominated; ++j)
            dominated = j != i && dominates(rows[j], rows[i], objectives);
        if (!dominated)
            front.push_back(i);
    }
    return front;
}

std::vector<MetricRow> pareto_front(std::span<const MetricRow> rows,
                                    std::span<const Objective> objectives) {
    std::vector<MetricRow> out;
    for (const std::size_t i : pareto_front_indices(rows, objectives))
        out.push_back(rows[i]);
    return out;
}

} // namespace carbonscope
