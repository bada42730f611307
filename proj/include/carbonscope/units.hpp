#pragma once

#include <compare>
#include <string>

#include "carbonscope/errors.hpp"

namespace carbonscope {

namespace detail {
/// Throws ValidationError unless v is finite and >= 0.
void require_non_negative_finite(double v, const char* what);
/// Throws ValidationError unless v is finite.
void require_finite(double v, const char* what);
} // namespace detail

/// Energy, canonically in joules. Wh/kWh only at I/O boundaries.
class Energy {
public:
    Energy() = default;
    explicit Energy(double joules) : joules_(joules) {
        detail::require_non_negative_finite(joules, "energy (J)");
    }

    static Energy from_watt_hours(double wh) {
        detail::require_non_negative_finite(wh, "energy (Wh)");
        return Energy(wh * 3600.0);
    }
    static Energy from_kilowatt_hours(double kwh) {
        detail::require_non_negative_finite(kwh, "energy (kWh)");
        return Energy(kwh * 3.6e6);
    }

    double joules() const { return joules_; }
    double watt_hours() const { return joules_ / 3600.0; }
    double kilowatt_hours() const { return joules_ / 3.6e6; }

    Energy operator+(const Energy& other) const { return Energy(joules_ + other.joules_); }
    Energy& operator+=(const Energy& other) {
        joules_ += other.joules_;
        return *this;
    }
    Energy scaled(double factor) const {
        detail::require_non_negative_finite(factor, "energy scale factor");
        return Energy(joules_ * factor);
    }

    auto operator<=>(const Energy&) const = default;

private:
    double joules_ = 0.0;
};

/// Instantaneous power draw in watts.
class Power {
public:
    Power() = default;
    explicit Power(double watts) : watts_(watts) {
        detail::require_non_negative_finite(watts, "power (W)");
    }

    double watts() const { return watts_; }

    auto operator<=>(const Power&) const = default;

private:
    double watts_ = 0.0;
};

/// Mass of CO2-equivalent greenhouse gas in grams.
class CarbonMass {
public:
    CarbonMass() = default;
    explicit CarbonMass(double grams) : grams_(grams) {
        detail::require_non_negative_finite(grams, "carbon mass (g)");
    }

    double grams() const { return grams_; }
    double kilograms() const { return grams_ / 1000.0; }

    CarbonMass operator+(const CarbonMass& other) const { return CarbonMass(grams_ + other.grams_); }
    CarbonMass& operator+=(const CarbonMass& other) {
        grams_ += other.grams_;
        return *this;
    }

    auto operator<=>(const CarbonMass&) const = default;

private:
    double grams_ = 0.0;
};

/// Grid carbon intensity in grams CO2eq per kWh consumed.
class CarbonIntensity {
public:
    CarbonIntensity() = default;
    explicit CarbonIntensity(double g_per_kwh) : g_per_kwh_(g_per_kwh) {
        detail::require_non_negative_finite(g_per_kwh, "carbon intensity (g/kWh)");
    }

    double g_per_kwh() const { return g_per_kwh_; }

    auto operator<=>(const CarbonIntensity&) const = default;

private:
    double g_per_kwh_ = 0.0;
};

/// A UTC instant as seconds since the Unix epoch. The core never deals in
/// local time; zone conversion is a display concern.
class TimeStamp {
public:
    TimeStamp() = default;
    explicit TimeStamp(double unix_seconds) : unix_seconds_(unix_seconds) {
        detail::require_finite(unix_seconds, "timestamp (s)");
    }

    double unix_seconds() const { return unix_seconds_; }

    TimeStamp plus_seconds(double s) const { return TimeStamp(unix_seconds_ + s); }
    double seconds_until(const TimeStamp& later) const { return later.unix_seconds_ - unix_seconds_; }

    auto operator<=>(const TimeStamp&) const = default;

private:
    double unix_seconds_ = 0.0;
};

/// Half-open interval [start, end) with strictly positive duration.
class TimeInterval {
public:
    TimeInterval(TimeStamp start, TimeStamp end) : start_(start), end_(end) {
        if (!(end > start))
            throw ValidationError("time interval requires end > start");
    }

    TimeStamp start() const { return start_; }
    TimeStamp end() const { return end_; }
    double duration_s() const { return start_.seconds_until(end_); }
    TimeStamp midpoint() const { return TimeStamp(start_.unix_seconds() + duration_s() / 2.0); }

    bool operator==(const TimeInterval&) const = default;

private:
    TimeStamp start_;
    TimeStamp end_;
};

/// Unit bridge: watt-hours to the canonical joule representation.
/// 1 Wh = 3600 J.
Energy wh_to_joules(double wh);

/// E = P * t. Duration in seconds, must be non-negative.
Energy energy_from_power(const Power& p, double duration_s);

/// Formats a timestamp as ISO-8601 UTC ("2022-06-01T12:00:00Z").
/// Sub-second fractions are printed only when present.
std::string format_iso8601_utc(const TimeStamp& t);

/// Formats with a fixed display offset in minutes east of UTC
/// ("2022-06-01T14:00:00+02:00"). Zero offset falls back to the Z form.
std::string format_iso8601_offset(const TimeStamp& t, int offset_minutes);

/// Parses an ISO-8601 UTC timestamp. Accepts "Z" or "+00:00" suffixes and
/// optional fractional seconds. Anything else is a ParseError.
TimeStamp parse_iso8601_utc(const std::string& text);

} // namespace carbonscope
