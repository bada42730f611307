#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "carbonscope/units.hpp"

namespace carbonscope {

/// Lifecycle carbon intensity per generating technology (coal, solar, ...).
/// Values are data inputs, typically loaded from a coefficients file.
class SourceCoefficients {
public:
    SourceCoefficients() = default;
    explicit SourceCoefficients(std::map<std::string, CarbonIntensity> by_source)
        : by_source_(std::move(by_source)) {}

    bool contains(const std::string& source) const { return by_source_.count(source) > 0; }

    /// Coefficient for a source; missing sources are a ConfigError.
    CarbonIntensity at(const std::string& source) const;

    const std::map<std::string, CarbonIntensity>& by_source() const { return by_source_; }
    std::size_t size() const { return by_source_.size(); }

private:
    std::map<std::string, CarbonIntensity> by_source_;
};

/// Fractional composition of grid production at one instant.
/// Shares must each lie in [0,1] and sum to 1 within 1e-6.
class EnergyMixSnapshot {
public:
    EnergyMixSnapshot(TimeStamp at, std::map<std::string, double> shares);

    TimeStamp at() const { return at_; }
    const std::map<std::string, double>& shares() const { return shares_; }

private:
    TimeStamp at_;
    std::map<std::string, double> shares_;
};

struct CiPoint {
    TimeStamp at;
    CarbonIntensity ci;
};

/// Time-stamped carbon-intensity series with step-hold sampling semantics:
/// the value at t is the latest reported point at or before t. Each point
/// holds for one reporting interval past itself; a single-point series is a
/// constant grid with unbounded coverage.
class CarbonIntensitySeries {
public:
    CarbonIntensitySeries(std::string region, std::vector<CiPoint> points);

    const std::string& region() const { return region_; }
    const std::vector<CiPoint>& points() const { return points_; }

    TimeStamp start() const { return points_.front().at; }
    /// One reporting interval (the last inter-point spacing) past the last
    /// point; +infinity for single-point series.
    double coverage_end_unix() const;
    bool covers(const TimeInterval& interval) const;

    /// Step-hold sample at t. CoverageError outside the covered span.
    CarbonIntensity ci_at(const TimeStamp& t) const;

    /// Series timestamps strictly inside (interval.start, interval.end).
    std::vector<TimeStamp> breakpoints_within(const TimeInterval& interval) const;

private:
    std::string region_;
    std::vector<CiPoint> points_;
};

/// CI_grid = sum over sources of share * coefficient (weighted energy mix).
CarbonIntensity mix_to_ci(const EnergyMixSnapshot& snapshot, const SourceCoefficients& coeffs);

/// Applies mix_to_ci pointwise over a mix series. Empty input is an error.
CarbonIntensitySeries build_ci_series(std::string region,
                                      std::span<const EnergyMixSnapshot> mix_series,
                                      const SourceCoefficients& coeffs);

/// Carbon-intensity source for a region: either a CI series directly, or an
/// energy-mix series aggregated through source coefficients. Exactly one of
/// the two routes backs any given profile.
class GridProfile {
public:
    static GridProfile from_series(CarbonIntensitySeries series);
    static GridProfile from_mix(std::string region,
                                std::span<const EnergyMixSnapshot> mix_series,
                                const SourceCoefficients& coeffs);
    /// Single-point series: fixed annual-style coefficient, unbounded hold.
    static GridProfile constant(std::string region, CarbonIntensity ci, TimeStamp from);

    const std::string& region() const { return series_.region(); }
    const CarbonIntensitySeries& series() const { return series_; }
    CarbonIntensity ci_at(const TimeStamp& t) const { return series_.ci_at(t); }
    bool covers(const TimeInterval& interval) const { return series_.covers(interval); }

    /// Same series with every CI value scaled by a non-negative factor.
    GridProfile scaled(double factor) const;

private:
    explicit GridProfile(CarbonIntensitySeries series) : series_(std::move(series)) {}

    CarbonIntensitySeries series_;
};

/// An amount of energy consumed over a known interval.
struct EnergySegment {
    TimeInterval interval;
    Energy energy;
};

struct EmissionItem {
    TimeInterval interval;
    Energy energy;
    CarbonMass emissions;
};

/// Per-segment emissions plus their sum.
struct ItemizedEmissions {
    std::vector<EmissionItem> items;
    CarbonMass total;
};

/// CO2eq = E * CI applied per segment against the time-varying grid CI.
/// Segments spanning a CI breakpoint are split there first (energy pro-rata
/// by duration), then each piece samples the CI at its midpoint. Segments
/// must be ordered and non-overlapping; the grid must cover them all.
ItemizedEmissions emissions(std::span<const EnergySegment> segments, const GridProfile& grid);

/// Wording attached to every report: grid-average CI, not marginal
/// emissions, backs these numbers.
extern const char* const kCiLimitationDisclaimer;

} // namespace carbonscope
