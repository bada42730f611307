#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "carbonscope/units.hpp"
#include "test_common.hpp"

using namespace carbonscope;

TEST_CASE("wh_to_joules converts by definition") {
    CHECK(wh_to_joules(1.0).joules() == 3600.0);
    CHECK(wh_to_joules(0.0).joules() == 0.0);
    CHECK(wh_to_joules(373.0).joules() == 1342800.0);
    CHECK_THROWS_AS(wh_to_joules(-1.0), ValidationError);
}

TEST_CASE("energy round-trips J <-> Wh") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> joules(0.0, 1e9);
    for (int i = 0; i < 200; ++i) {
        const double j = joules(rng);
        const double back = wh_to_joules(Energy(j).watt_hours()).joules();
        CHECK(close_rel(back, j));
    }
}

TEST_CASE("energy_from_power implements E = P * t") {
    CHECK(energy_from_power(Power(100.0), 3600.0).joules() == 360000.0);
    CHECK(energy_from_power(Power(100.0), 3600.0).watt_hours() == 100.0);
    CHECK(energy_from_power(Power(0.0), 123456.0).joules() == 0.0);

    const Energy training = energy_from_power(Power(400.0), 16200.0);
    CHECK(training.joules() == 6480000.0);
    CHECK(close_rel(training.kilowatt_hours(), 1.8));

    CHECK_THROWS_AS(energy_from_power(Power(100.0), -1.0), ValidationError);
}

TEST_CASE("energy_from_power is bilinear") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> watts(0.0, 500.0);
    std::uniform_real_distribution<double> seconds(0.0, 1e5);
    for (int i = 0; i < 200; ++i) {
        const double p = watts(rng);
        const double t = seconds(rng);
        const double base = energy_from_power(Power(p), t).joules();
        CHECK(close_rel(energy_from_power(Power(2.0 * p), t).joules(), 2.0 * base));
        CHECK(close_rel(energy_from_power(Power(p), 2.0 * t).joules(), 2.0 * base));
    }
}

TEST_CASE("quantity constructors reject NaN, infinity, and negatives") {
    const double nan = std::nan("");
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(Energy(-1.0), ValidationError);
    CHECK_THROWS_AS(Energy{nan}, ValidationError);
    CHECK_THROWS_AS(Energy{inf}, ValidationError);
    CHECK_THROWS_AS(Power(-0.5), ValidationError);
    CHECK_THROWS_AS(Power{nan}, ValidationError);
    CHECK_THROWS_AS(CarbonMass(-2.0), ValidationError);
    CHECK_THROWS_AS(CarbonIntensity(-3.0), ValidationError);
    CHECK_THROWS_AS(CarbonIntensity{inf}, ValidationError);
    CHECK_THROWS_AS(TimeStamp{nan}, ValidationError);
    CHECK_NOTHROW(TimeStamp(-1000.0)); // pre-epoch instants are fine
}

TEST_CASE("time intervals are half-open with positive duration") {
    const TimeStamp t0(1000.0);
    CHECK_THROWS_AS(TimeInterval(t0, t0), ValidationError);
    CHECK_THROWS_AS(TimeInterval(t0, TimeStamp(999.0)), ValidationError);

    const TimeInterval interval(t0, TimeStamp(1600.0));
    CHECK(interval.duration_s() == 600.0);
    CHECK(interval.midpoint().unix_seconds() == 1300.0);
}

TEST_CASE("ISO-8601 parsing and formatting") {
    const TimeStamp t = parse_iso8601_utc("2022-06-01T12:00:00Z");
    CHECK(t.unix_seconds() == 1654084800.0);
    CHECK(format_iso8601_utc(t) == "2022-06-01T12:00:00Z");

    CHECK(parse_iso8601_utc("1970-01-01T00:00:00Z").unix_seconds() == 0.0);
    CHECK(parse_iso8601_utc("2022-06-01T12:00:00+00:00") == t);
    CHECK(parse_iso8601_utc("2022-06-01T12:00:00.5Z").unix_seconds() == 1654084800.5);

    // leap year handling
    CHECK_NOTHROW(parse_iso8601_utc("2024-02-29T00:00:00Z"));
    CHECK_THROWS_AS(parse_iso8601_utc("2023-02-29T00:00:00Z"), ParseError);

    CHECK_THROWS_AS(parse_iso8601_utc(""), ParseError);
    CHECK_THROWS_AS(parse_iso8601_utc("2022-06-01 12:00:00"), ParseError);
    CHECK_THROWS_AS(parse_iso8601_utc("2022-13-01T00:00:00Z"), ParseError);
    CHECK_THROWS_AS(parse_iso8601_utc("2022-06-01T24:00:00Z"), ParseError);
    CHECK_THROWS_AS(parse_iso8601_utc("2022-06-01T12:00:00+02:00"), ParseError);

    std::mt19937 rng(23);
    std::uniform_int_distribution<long> seconds(0, 4102444800L); // through 2100
    for (int i = 0; i < 200; ++i) {
        const TimeStamp ts(static_cast<double>(seconds(rng)));
        CHECK(parse_iso8601_utc(format_iso8601_utc(ts)) == ts);
    }
}

TEST_CASE("offset formatting shifts display only") {
    const TimeStamp t = parse_iso8601_utc("2022-06-01T12:00:00Z");
    CHECK(format_iso8601_offset(t, 120) == "2022-06-01T14:00:00+02:00");
    CHECK(format_iso8601_offset(t, -330) == "2022-06-01T06:30:00-05:30");
    CHECK(format_iso8601_offset(t, 0) == "2022-06-01T12:00:00Z");
}
