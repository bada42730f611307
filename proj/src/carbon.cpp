#include "carbonscope/carbon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace carbonscope {

const char* const kCiLimitationDisclaimer =
    "Emissions use the grid's average carbon intensity; the marginal emissions of "
    "adding this load to the grid may differ.";

CarbonIntensity SourceCoefficients::at(const std::string& source) const {
    const auto it = by_source_.find(source);
    if (it == by_source_.end())
        throw ConfigError("no carbon-intensity coefficient for source '" + source + "'");
    return it->second;
}

EnergyMixSnapshot::EnergyMixSnapshot(TimeStamp at, std::map<std::string, double> shares)
    : at_(at), shares_(std::move(shares)) {
    double sum = 0.0;
    for (const auto& [source, share] : shares_) {
        if (!std::isfinite(share) || share < 0.0 || share > 1.0)
            throw ValidationError("mix share for '" + source + "' must lie in [0,1]");
        sum += share;
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw ValidationError("mix shares must sum to 1 (got " + std::to_string(sum) + ")");
}

CarbonIntensitySeries::CarbonIntensitySeries(std::string region, std::vector<CiPoint> points)
    : region_(std::move(region)), points_(std::move(points)) {
    if (points_.empty())
        throw ValidationError("carbon-intensity series must not be empty");
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (!(points_[i].at > points_[i - 1].at))
            throw ValidationError("carbon-intensity series timestamps must be strictly increasing");
}

double CarbonIntensitySeries::coverage_end_unix() const {
    if (points_.size() < 2)
        return std::numeric_limits<double>::infinity();
    const std::size_t n = points_.size();
    const double hold = points_[n - 1].at.unix_seconds() - points_[n - 2].at.unix_seconds();
    return points_[n - 1].at.unix_seconds() + hold;
}

bool CarbonIntensitySeries::covers(const TimeInterval& interval) const {
    return !(interval.start() < start()) &&
           interval.end().unix_seconds() <= coverage_end_unix();
}

CarbonIntensity CarbonIntensitySeries::ci_at(const TimeStamp& t) const {
    if (t < start())
        throw CoverageError("instant precedes carbon-intensity series for region '" + region_ +
                            "' (" + format_iso8601_utc(t) + " < " + format_iso8601_utc(start()) +
                            ")");
    if (t.unix_seconds() >= coverage_end_unix())
        throw CoverageError("instant past the coverage of carbon-intensity series for region '" +
                            region_ + "' (" + format_iso8601_utc(t) + ")");
    // Latest point at or before t.
    const auto it = std::upper_bound(points_.begin(), points_.end(), t,
                                     [](const TimeStamp& q, const CiPoint& p) { return q < p.at; });
    return (it - 1)->ci;
}

std::vector<TimeStamp> CarbonIntensitySeries::breakpoints_within(const TimeInterval& interval) const {
    std::vector<TimeStamp> out;
    for (const auto& p : points_)
        if (interval.start() < p.at && p.at < interval.end())
            out.push_back(p.at);
    return out;
}

CarbonIntensity mix_to_ci(const EnergyMixSnapshot& snapshot, const SourceCoefficients& coeffs) {
    double g_per_kwh = 0.0;
    for (const auto& [source, share] : snapshot.shares())
        g_per_kwh += share * coeffs.at(source).g_per_kwh();
    return CarbonIntensity(g_per_kwh);
}

CarbonIntensitySeries build_ci_series(std::string region,
                                      std::span<const EnergyMixSnapshot> mix_series,
                                      const SourceCoefficients& coeffs) {
    if (mix_series.empty())
        throw ValidationError("cannot build a carbon-intensity series from an empty mix series");
    std::vector<CiPoint> points;
    points.reserve(mix_series.size());
    for (const auto& snapshot : mix_series)
        points.push_back({snapshot.at(), mix_to_ci(snapshot, coeffs)});
    return CarbonIntensitySeries(std::move(region), std::move(points));
}

GridProfile GridProfile::from_series(CarbonIntensitySeries series) {
    return GridProfile(std::move(series));
}

GridProfile GridProfile::from_mix(std::string region, std::span<const EnergyMixSnapshot> mix_series,
                                  const SourceCoefficients& coeffs) {
    return GridProfile(build_ci_series(std::move(region), mix_series, coeffs));
}

GridProfile GridProfile::constant(std::string region, CarbonIntensity ci, TimeStamp from) {
    return GridProfile(CarbonIntensitySeries(std::move(region), {{from, ci}}));
}

GridProfile GridProfile::scaled(double factor) const {
    detail::require_non_negative_finite(factor, "carbon-intensity scale factor");
    std::vector<CiPoint> points;
    points.reserve(series_.points().size());
    for (const auto& p : series_.points())
        points.push_back({p.at, CarbonIntensity(p.ci.g_per_kwh() * factor)});
    return GridProfile(CarbonIntensitySeries(series_.region(), std::move(points)));
}

namespace {

CarbonMass emissions_of(const Energy& energy, const CarbonIntensity& ci) {
    return CarbonMass(energy.kilowatt_hours() * ci.g_per_kwh());
}

} // namespace

ItemizedEmissions emissions(std::span<const EnergySegment> segments, const GridProfile& grid) {
    ItemizedEmissions result;
    result.items.reserve(segments.size());

    bool have_prev = false;
    TimeStamp prev_end;
    for (const auto& segment : segments) {
        if (have_prev && segment.interval.start() < prev_end)
            throw ValidationError("energy segments must be ordered and non-overlapping");
        prev_end = segment.interval.end();
        have_prev = true;

        if (!grid.covers(segment.interval))
            throw CoverageError("grid '" + grid.region() + "' does not cover segment " +
                                format_iso8601_utc(segment.interval.start()) + " .. " +
                                format_iso8601_utc(segment.interval.end()));

        // Split at CI breakpoints so each piece sees one reporting step;
        // energy splits pro-rata by duration.
        const double total_duration = segment.interval.duration_s();
        CarbonMass segment_mass;
        TimeStamp cursor = segment.interval.start();
        auto cuts = grid.series().breakpoints_within(segment.interval);
        cuts.push_back(segment.interval.end());
        for (const auto& cut : cuts) {
            const TimeInterval piece(cursor, cut);
            const Energy piece_energy = segment.energy.scaled(piece.duration_s() / total_duration);
            segment_mass += emissions_of(piece_energy, grid.ci_at(piece.midpoint()));
            cursor = cut;
        }
        result.items.push_back({segment.interval, segment.energy, segment_mass});
        result.total += segment_mass;
    }
    return result;
}

} // namespace carbonscope
