#pragma once

#include <span>
#include <string>
#include <vector>

#include "carbonscope/units.hpp"

namespace carbonscope {

/// One measured calibration point of a device power model.
struct PowerPoint {
    double utilization; // in [0,1]
    Power watts;        // total device draw at that utilization
};

/// Device power model: load-independent idle floor plus measured
/// (utilization, watts) points. Between points power is interpolated
/// linearly; measured utilizations reproduce their measured watts exactly.
class PowerModel {
public:
    PowerModel(std::string device_name, Power idle_watts, Power max_watts,
               std::vector<PowerPoint> points, bool facility_housed = false);

    const std::string& device_name() const { return device_name_; }
    Power idle_watts() const { return idle_watts_; }
    Power max_watts() const { return max_watts_; }
    const std::vector<PowerPoint>& points() const { return points_; }

    /// True for devices housed in a facility whose overhead is captured by
    /// a PUE factor (micro-DC servers). False for standalone IoT devices.
    bool facility_housed() const { return facility_housed_; }

    /// Total power at the given utilization. Below the first point the model
    /// interpolates from (0, idle_watts); above the last point it clamps.
    Power power_at(double utilization) const;

private:
    std::string device_name_;
    Power idle_watts_;
    Power max_watts_;
    std::vector<PowerPoint> points_;
    bool facility_housed_ = false;
};

/// Facility overhead: PUE = total energy / computing energy, >= 1.
class FacilityProfile {
public:
    FacilityProfile(std::string name, double pue);

    const std::string& name() const { return name_; }
    double pue() const { return pue_; }

private:
    std::string name_;
    double pue_;
};

struct PowerSample {
    TimeStamp at;
    Power watts;
};

/// Sampled power curve, linear between samples.
class PowerTrace {
public:
    explicit PowerTrace(std::vector<PowerSample> samples);

    const std::vector<PowerSample>& samples() const { return samples_; }
    TimeStamp first_time() const { return samples_.front().at; }
    TimeStamp last_time() const { return samples_.back().at; }

    /// Linearly interpolated power at t; t must lie within the sampled span.
    Power at(const TimeStamp& t) const;

private:
    std::vector<PowerSample> samples_;
};

struct UtilizationSample {
    TimeStamp at;
    double utilization;
};

/// Trapezoidal integral of the trace over the interval. The interval must
/// lie within the trace span; endpoints between samples are interpolated.
Energy integrate_energy(const PowerTrace& trace, const TimeInterval& interval);

/// Scales compute energy by the facility PUE: total = compute * pue.
Energy apply_pue(const Energy& compute_energy, const FacilityProfile& facility);

/// Maps a utilization profile sample-wise through the model's power curve.
PowerTrace task_power_trace(const PowerModel& model, std::span<const UtilizationSample> profile);

} // namespace carbonscope
