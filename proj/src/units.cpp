#include "carbonscope/units.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace carbonscope {

namespace detail {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v))
        throw ValidationError(std::string(what) + " must be finite");
}

void require_non_negative_finite(double v, const char* what) {
    require_finite(v, what);
    if (v < 0.0)
        throw ValidationError(std::string(what) + " must be non-negative, got " +
                              std::to_string(v));
}

} // namespace detail

Energy wh_to_joules(double wh) {
    return Energy::from_watt_hours(wh);
}

Energy energy_from_power(const Power& p, double duration_s) {
    detail::require_non_negative_finite(duration_s, "duration (s)");
    return Energy(p.watts() * duration_s);
}

namespace {

// Civil <-> epoch-day conversions (proleptic Gregorian, Howard Hinnant's
// algorithms). Keeps the core independent of the C library's zone handling.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

bool is_digit(char c) {
    return c >= '0' && c <= '9';
}

unsigned days_in_month(std::int64_t y, unsigned m) {
    static const unsigned lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2) {
        const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
        return leap ? 29 : 28;
    }
    return lengths[m - 1];
}

std::string format_base(const TimeStamp& t, int offset_minutes) {
    const double shifted = t.unix_seconds() + offset_minutes * 60.0;
    double whole = std::floor(shifted);
    double frac = shifted - whole;
    // Guard against fractions like 0.9999999997 from float arithmetic.
    if (frac > 1.0 - 1e-9) {
        whole += 1.0;
        frac = 0.0;
    }
    if (frac < 1e-9)
        frac = 0.0;

    const auto total = static_cast<std::int64_t>(whole);
    std::int64_t days = total / 86400;
    std::int64_t sod = total % 86400;
    if (sod < 0) {
        sod += 86400;
        days -= 1;
    }
    std::int64_t y;
    unsigned mo, dy;
    civil_from_days(days, y, mo, dy);
    const int h = static_cast<int>(sod / 3600);
    const int mi = static_cast<int>((sod % 3600) / 60);
    const int s = static_cast<int>(sod % 60);

    char buf[64];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02d:%02d:%02d",
                  static_cast<long long>(y), mo, dy, h, mi, s);
    std::string out(buf);
    if (frac > 0.0) {
        std::snprintf(buf, sizeof(buf), "%.6f", frac);
        std::string f(buf + 1); // drop the leading 0, keep ".xxxxxx"
        while (f.size() > 2 && f.back() == '0')
            f.pop_back();
        out += f;
    }
    return out;
}

} // namespace

std::string format_iso8601_utc(const TimeStamp& t) {
    return format_base(t, 0) + "Z";
}

std::string format_iso8601_offset(const TimeStamp& t, int offset_minutes) {
    if (offset_minutes == 0)
        return format_iso8601_utc(t);
    std::string out = format_base(t, offset_minutes);
    const int abs_min = offset_minutes < 0 ? -offset_minutes : offset_minutes;
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%c%02d:%02d", offset_minutes < 0 ? '-' : '+', abs_min / 60,
                  abs_min % 60);
    return out + buf;
}

TimeStamp parse_iso8601_utc(const std::string& text) {
    // YYYY-MM-DDTHH:MM:SS[.fff](Z|+00:00)
    const auto fail = [&](const std::string& why) -> TimeStamp {
        throw ParseError("invalid ISO-8601 UTC timestamp '" + text + "': " + why);
    };
    if (text.size() < 20)
        return fail("too short");
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u, 11u, 12u, 14u, 15u, 17u, 18u})
        if (!is_digit(text[i]))
            return fail("expected digit");
    if (text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != 't') ||
        text[13] != ':' || text[16] != ':')
        return fail("bad separators");

    const auto num = [&](std::size_t pos, std::size_t len) {
        long v = 0;
        for (std::size_t i = pos; i < pos + len; ++i)
            v = v * 10 + (text[i] - '0');
        return v;
    };
    const long year = num(0, 4), month = num(5, 2), day = num(8, 2);
    const long hour = num(11, 2), minute = num(14, 2), second = num(17, 2);
    if (month < 1 || month > 12)
        return fail("month out of range");
    if (day < 1 || day > static_cast<long>(days_in_month(year, static_cast<unsigned>(month))))
        return fail("day out of range");
    if (hour > 23 || minute > 59 || second > 59)
        return fail("time out of range");

    std::size_t pos = 19;
    double frac = 0.0;
    if (text[pos] == '.') {
        std::size_t end = pos + 1;
        while (end < text.size() && is_digit(text[end]))
            ++end;
        if (end == pos + 1)
            return fail("empty fraction");
        frac = std::strtod(text.substr(pos, end - pos).c_str(), nullptr);
        pos = end;
    }
    const std::string suffix = text.substr(pos);
    if (suffix != "Z" && suffix != "z" && suffix != "+00:00")
        return fail("expected UTC suffix");

    const std::int64_t days = days_from_civil(year, static_cast<unsigned>(month),
                                              static_cast<unsigned>(day));
    const double seconds = static_cast<double>(days) * 86400.0 +
                           static_cast<double>(hour * 3600 + minute * 60 + second) + frac;
    return TimeStamp(seconds);
}

} // namespace carbonscope
