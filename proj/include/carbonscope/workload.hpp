#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "carbonscope/units.hpp"

namespace carbonscope {

/// Measured per-architecture inference characteristics.
struct ModelProfile {
    std::string name;
    double params_millions = 0.0;
    double size_mb = 0.0;
    double accuracy_pct = 0.0;     // in [0,100]
    double mean_inference_ms = 0.0; // > 0
    double energy_wh_per_5k = 0.0;  // >= 0

    ModelProfile() = default;
    ModelProfile(std::string name, double params_millions, double size_mb, double accuracy_pct,
                 double mean_inference_ms, double energy_wh_per_5k);
};

/// Reconciles a nominal link rate with observed goodput; the default absorbs
/// protocol overhead so that 144e9 bytes over 100 Mbps lands at ~3.5 h.
inline constexpr double kDefaultTransferEfficiency = 0.915;

/// Energy of a sequential inference batch, linear in item count.
Energy inference_energy(const ModelProfile& profile, std::int64_t item_count);

/// Wall time of a sequential inference batch, linear in item count.
double inference_duration_s(const ModelProfile& profile, std::int64_t item_count);

/// Mean device power implied by a profile's energy and latency columns.
Power implied_mean_power(const ModelProfile& profile);

/// Seconds to move `bytes` over a link of `bandwidth_bps` running at the
/// given efficiency in (0,1].
double transfer_duration_s(std::int64_t bytes, double bandwidth_bps,
                           double efficiency = kDefaultTransferEfficiency);

/// Energy attributed to moving `bytes`; zero joules_per_bit (the default
/// when unconfigured) charges nothing.
Energy transfer_energy(std::int64_t bytes, double joules_per_bit);

enum class TaskKind { Training, Inference, Transfer };

const char* to_string(TaskKind kind);

/// Utilization at an offset (seconds) from task start; linear in between.
struct UtilizationPoint {
    double offset_s;
    double utilization;
};

/// Explicit-duration work on one or more bound devices. The utilization
/// profile starts at offset 0; the last value holds until the task ends.
struct TrainingSpec {
    std::vector<std::string> devices;
    double duration_s = 0.0;
    std::vector<UtilizationPoint> profile; // non-empty, offsets strictly increasing from 0
};

/// A batch of item_count sequential inferences under a model profile.
/// The optional device binding decides whether facility PUE applies.
struct InferenceSpec {
    ModelProfile profile;
    std::int64_t item_count = 0;
    std::optional<std::string> device;
};

/// Bulk data movement over a link.
struct TransferSpec {
    std::int64_t bytes = 0;
    double bandwidth_bps = 0.0;
    double efficiency = kDefaultTransferEfficiency;
    double joules_per_bit = 0.0;
};

class Task {
public:
    Task(std::string id, TrainingSpec spec);
    Task(std::string id, InferenceSpec spec);
    Task(std::string id, TransferSpec spec);

    const std::string& id() const { return id_; }
    TaskKind kind() const { return kind_; }
    double duration_s() const;

    const TrainingSpec& training() const;
    const InferenceSpec& inference() const;
    const TransferSpec& transfer() const;

private:
    std::string id_;
    TaskKind kind_;
    std::variant<TrainingSpec, InferenceSpec, TransferSpec> spec_;
};

struct WorkloadItem {
    Task task;
    double start_offset_s; // >= 0, relative to the scenario anchor
};

/// Ordered tasks with relative start offsets; ids are unique.
class WorkloadTrace {
public:
    WorkloadTrace() = default;
    explicit WorkloadTrace(std::vector<WorkloadItem> items);

    const std::vector<WorkloadItem>& items() const { return items_; }
    bool empty() const { return items_.empty(); }

    /// Offset of the latest task end; 0 for an empty trace.
    double horizon_s() const;

private:
    std::vector<WorkloadItem> items_;
};

} // namespace carbonscope
