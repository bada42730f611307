#include "carbonscope/workload.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace carbonscope {

ModelProfile::ModelProfile(std::string name_, double params_millions_, double size_mb_,
                           double accuracy_pct_, double mean_inference_ms_,
                           double energy_wh_per_5k_)
    : name(std::move(name_)), params_millions(params_millions_), size_mb(size_mb_),
      accuracy_pct(accuracy_pct_), mean_inference_ms(mean_inference_ms_),
      energy_wh_per_5k(energy_wh_per_5k_) {
    if (name.empty())
        throw ValidationError("model profile needs a name");
    detail::require_non_negative_finite(params_millions, "params_millions");
    detail::require_non_negative_finite(size_mb, "size_mb");
    detail::require_non_negative_finite(accuracy_pct, "accuracy_pct");
    if (accuracy_pct > 100.0)
        throw ValidationError("accuracy_pct must not exceed 100");
    detail::require_non_negative_finite(mean_inference_ms, "mean_inference_ms");
    if (mean_inference_ms <= 0.0)
        throw ValidationError("mean_inference_ms must be positive");
    detail::require_non_negative_finite(energy_wh_per_5k, "energy_wh_per_5k");
}

Energy inference_energy(const ModelProfile& profile, std::int64_t item_count) {
    if (item_count < 0)
        throw ValidationError("item count must be non-negative");
    const double wh = profile.energy_wh_per_5k * static_cast<double>(item_count) / 5000.0;
    return Energy::from_watt_hours(wh);
}

double inference_duration_s(const ModelProfile& profile, std::int64_t item_count) {
    if (item_count < 0)
        throw ValidationError("item count must be non-negative");
    return profile.mean_inference_ms * static_cast<double>(item_count) / 1000.0;
}

Power implied_mean_power(const ModelProfile& profile) {
    const double seconds = profile.mean_inference_ms / 1000.0;
    if (seconds <= 0.0)
        throw ValidationError("cannot imply power from a zero inference time");
    return Power(inference_energy(profile, 1).joules() / seconds);
}

double transfer_duration_s(std::int64_t bytes, double bandwidth_bps, double efficiency) {
    if (bytes < 0)
        throw ValidationError("transfer bytes must be non-negative");
    if (!std::isfinite(bandwidth_bps) || bandwidth_bps <= 0.0)
        throw ValidationError("link bandwidth must be positive");
    if (!std::isfinite(efficiency) || efficiency <= 0.0 || efficiency > 1.0)
        throw ValidationError("link efficiency must lie in (0,1]");
    return static_cast<double>(bytes) * 8.0 / (bandwidth_bps * efficiency);
}

Energy transfer_energy(std::int64_t bytes, double joules_per_bit) {
    if (bytes < 0)
        throw ValidationError("transfer bytes must be non-negative");
    detail::require_non_negative_finite(joules_per_bit, "joules_per_bit");
    return Energy(static_cast<double>(bytes) * 8.0 * joules_per_bit);
}

const char* to_string(TaskKind kind) {
    switch (kind) {
    case TaskKind::Training: return "training";
    case TaskKind::Inference: return "inference";
    case TaskKind::Transfer: return "transfer";
    }
    return "unknown";
}

namespace {

void validate_training(const std::string& id, const TrainingSpec& spec) {
    if (spec.devices.empty())
        throw ValidationError("task '" + id + "': training tasks need at least one device");
    if (!std::isfinite(spec.duration_s) || spec.duration_s <= 0.0)
        throw ValidationError("task '" + id + "': duration must be positive");
    if (spec.profile.empty())
        throw ValidationError("task '" + id + "': utilization profile must not be empty");
    if (spec.profile.front().offset_s != 0.0)
        throw ValidationError("task '" + id + "': utilization profile must start at offset 0");
    double prev = -1.0;
    for (const auto& p : spec.profile) {
        if (!std::isfinite(p.offset_s) || p.offset_s < 0.0 || p.offset_s > spec.duration_s)
            throw ValidationError("task '" + id + "': profile offsets must lie in [0, duration]");
        if (p.offset_s <= prev)
            throw ValidationError("task '" + id + "': profile offsets must be strictly increasing");
        if (!std::isfinite(p.utilization) || p.utilization < 0.0 || p.utilization > 1.0)
            throw ValidationError("task '" + id + "': utilization must lie in [0,1]");
        prev = p.offset_s;
    }
}

void validate_inference(const std::string& id, const InferenceSpec& spec) {
    if (spec.item_count < 1)
        throw ValidationError("task '" + id + "': inference tasks need item_count >= 1");
}

void validate_transfer(const std::string& id, const TransferSpec& spec) {
    // Raises on bad bandwidth/efficiency/bytes; also pins duration > 0.
    if (transfer_duration_s(spec.bytes, spec.bandwidth_bps, spec.efficiency) <= 0.0)
        throw ValidationError("task '" + id + "': transfer must move at least one byte");
    detail::require_non_negative_finite(spec.joules_per_bit, "joules_per_bit");
}

} // namespace

Task::Task(std::string id, TrainingSpec spec)
    : id_(std::move(id)), kind_(TaskKind::Training), spec_(std::move(spec)) {
    validate_training(id_, training());
}

Task::Task(std::string id, InferenceSpec spec)
    : id_(std::move(id)), kind_(TaskKind::Inference), spec_(std::move(spec)) {
    validate_inference(id_, inference());
}

Task::Task(std::string id, TransferSpec spec)
    : id_(std::move(id)), kind_(TaskKind::Transfer), spec_(std::move(spec)) {
    validate_transfer(id_, transfer());
}

double Task::duration_s() const {
    switch (kind_) {
    case TaskKind::Training: return training().duration_s;
    case TaskKind::Inference: return inference_duration_s(inference().profile, inference().item_count);
    case TaskKind::Transfer: {
        const auto& t = transfer();
        return transfer_duration_s(t.bytes, t.bandwidth_bps, t.efficiency);
    }
    }
    return 0.0;
}

const TrainingSpec& Task::training() const {
    return std::get<TrainingSpec>(spec_);
}
const InferenceSpec& Task::inference() const {
    return std::get<InferenceSpec>(spec_);
}
const TransferSpec& Task::transfer() const {
    return std::get<TransferSpec>(spec_);
}

WorkloadTrace::WorkloadTrace(std::vector<WorkloadItem> items) : items_(std::move(items)) {
    std::set<std::string> ids;
    for (const auto& item : items_) {
        if (!std::isfinite(item.start_offset_s) || item.start_offset_s < 0.0)
            throw ValidationError("task '" + item.task.id() + "': start offset must be >= 0");
        if (!ids.insert(item.task.id()).second)
            throw ValidationError("duplicate task id '" + item.task.id() + "'");
    }
}

double WorkloadTrace::horizon_s() const {
    double horizon = 0.0;
    for (const auto& item : items_)
        horizon = std::max(horizon, item.start_offset_s + item.task.duration_s());
    return horizon;
}

} // namespace carbonscope
