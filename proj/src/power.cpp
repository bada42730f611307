#include "carbonscope/power.hpp"

#include <algorithm>
#include <cmath>

namespace carbonscope {

namespace {

double lerp(double x0, double y0, double x1, double y1, double x) {
    return y0 + (y1 - y0) * ((x - x0) / (x1 - x0));
}

} // namespace

PowerModel::PowerModel(std::string device_name, Power idle_watts, Power max_watts,
                       std::vector<PowerPoint> points, bool facility_housed)
    : device_name_(std::move(device_name)), idle_watts_(idle_watts), max_watts_(max_watts),
      points_(std::move(points)), facility_housed_(facility_housed) {
    if (points_.empty())
        throw ValidationError("power model '" + device_name_ + "' needs at least one point");
    double prev = -1.0;
    for (const auto& p : points_) {
        if (!std::isfinite(p.utilization) || p.utilization < 0.0 || p.utilization > 1.0)
            throw ValidationError("power model '" + device_name_ +
                                  "': utilization must lie in [0,1]");
        if (p.utilization <= prev)
            throw ValidationError("power model '" + device_name_ +
                                  "': points must be strictly ascending in utilization");
        if (p.watts > max_watts_)
            throw ValidationError("power model '" + device_name_ +
                                  "': point exceeds max_watts");
        prev = p.utilization;
    }
    if (idle_watts_ > max_watts_)
        throw ValidationError("power model '" + device_name_ + "': idle_watts exceeds max_watts");
}

Power PowerModel::power_at(double utilization) const {
    if (!std::isfinite(utilization) || utilization < 0.0 || utilization > 1.0)
        throw ValidationError("utilization must lie in [0,1]");

    const auto it = std::lower_bound(points_.begin(), points_.end(), utilization,
                                     [](const PowerPoint& p, double u) { return p.utilization < u; });
    if (it != points_.end() && it->utilization == utilization)
        return it->watts; // measured utilizations reproduce measured watts exactly
    if (it == points_.end())
        return points_.back().watts; // clamp above the last measurement
    if (it == points_.begin()) {
        // Anchor to the idle floor below the first measurement.
        return Power(lerp(0.0, idle_watts_.watts(), it->utilization, it->watts.watts(), utilization));
    }
    const auto& lo = *(it - 1);
    const auto& hi = *it;
    return Power(lerp(lo.utilization, lo.watts.watts(), hi.utilization, hi.watts.watts(), utilization));
}

FacilityProfile::FacilityProfile(std::string name, double pue) : name_(std::move(name)), pue_(pue) {
    if (!std::isfinite(pue) || pue < 1.0)
        throw ValidationError("facility '" + name_ + "': PUE must be >= 1.0");
}

PowerTrace::PowerTrace(std::vector<PowerSample> samples) : samples_(std::move(samples)) {
    if (samples_.empty())
        throw ValidationError("power trace must not be empty");
    for (std::size_t i = 1; i < samples_.size(); ++i)
        if (!(samples_[i].at > samples_[i - 1].at))
            throw ValidationError("power trace timestamps must be strictly increasing");
}

Power PowerTrace::at(const TimeStamp& t) const {
    if (t < first_time() || t > last_time())
        throw CoverageError("instant outside power trace span");
    const auto it = std::lower_bound(samples_.begin(), samples_.end(), t,
                                     [](const PowerSample& s, const TimeStamp& q) { return s.at < q; });
    if (it != samples_.end() && it->at == t)
        return it->watts;
    const auto& lo = *(it - 1);
    const auto& hi = *it;
    return Power(lerp(lo.at.unix_seconds(), lo.watts.watts(), hi.at.unix_seconds(),
                      hi.watts.watts(), t.unix_seconds()));
}

Energy integrate_energy(const PowerTrace& trace, const TimeInterval& interval) {
    const auto& samples = trace.samples();
    if (samples.size() < 2)
        throw ValidationError("integration needs a trace with at least two samples");
    if (interval.start() < trace.first_time() || interval.end() > trace.last_time())
        throw CoverageError("interval outside power trace span");

    double joules = 0.0;
    double t0 = interval.start().unix_seconds();
    double p0 = trace.at(interval.start()).watts();
    for (const auto& s : samples) {
        const double ts = s.at.unix_seconds();
        if (ts <= t0)
            continue;
        if (ts >= interval.end().unix_seconds())
            break;
        joules += (p0 + s.watts.watts()) / 2.0 * (ts - t0);
        t0 = ts;
        p0 = s.watts.watts();
    }
    const double t1 = interval.end().unix_seconds();
    const double p1 = trace.at(interval.end()).watts();
    joules += (p0 + p1) / 2.0 * (t1 - t0);
    return Energy(joules);
}

Energy apply_pue(const Energy& compute_energy, const FacilityProfile& facility) {
    return Energy(compute_energy.joules() * facility.pue());
}

PowerTrace task_power_trace(const PowerModel& model, std::span<const UtilizationSample> profile) {
    std::vector<PowerSample> samples;
    samples.reserve(profile.size());
    for (const auto& u : profile)
        samples.push_back({u.at, model.power_at(u.utilization)});
    return PowerTrace(std::move(samples));
}

} // namespace carbonscope
