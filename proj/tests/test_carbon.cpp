#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "carbonscope/carbon.hpp"
#include "carbonscope/ingest.hpp"
#include "test_common.hpp"

using namespace carbonscope;

TEST_CASE("mix_to_ci computes the weighted energy mix") {
    const SourceCoefficients coeffs({{"A", CarbonIntensity(800.0)}, {"B", CarbonIntensity(0.0)}});
    const EnergyMixSnapshot half(TimeStamp(0.0), {{"A", 0.5}, {"B", 0.5}});
    CHECK(mix_to_ci(half, coeffs).g_per_kwh() == 400.0);

    const SourceCoefficients cyprus({{"grid", CarbonIntensity(621.0)}});
    const EnergyMixSnapshot single(TimeStamp(0.0), {{"grid", 1.0}});
    CHECK(mix_to_ci(single, cyprus).g_per_kwh() == 621.0);

    const SourceCoefficients day({{"solar", CarbonIntensity(41.0)}, {"oil", CarbonIntensity(650.0)}});
    const EnergyMixSnapshot midday(TimeStamp(0.0), {{"solar", 0.8}, {"oil", 0.2}});
    CHECK(close_rel(mix_to_ci(midday, day).g_per_kwh(), 162.8));
}

TEST_CASE("mix_to_ci requires a coefficient for every source") {
    const SourceCoefficients coeffs({{"solar", CarbonIntensity(41.0)}});
    const EnergyMixSnapshot mix(TimeStamp(0.0), {{"solar", 0.5}, {"oil", 0.5}});
    CHECK_THROWS_AS(mix_to_ci(mix, coeffs), ConfigError);
}

TEST_CASE("mix snapshots validate their shares") {
    CHECK_THROWS_AS(EnergyMixSnapshot(TimeStamp(0.0), {{"a", 0.5}, {"b", 0.4}}), ValidationError);
    CHECK_THROWS_AS(EnergyMixSnapshot(TimeStamp(0.0), {{"a", 1.2}, {"b", -0.2}}), ValidationError);
    CHECK_NOTHROW(EnergyMixSnapshot(TimeStamp(0.0), {{"a", 0.6}, {"b", 0.4000004}}));
}

TEST_CASE("mix_to_ci stays within the coefficient range of used sources") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> coeff(0.0, 900.0);
    std::uniform_real_distribution<double> cut(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double ca = coeff(rng), cb = coeff(rng), cc = coeff(rng);
        double a = cut(rng), b = cut(rng);
        if (a > b)
            std::swap(a, b);
        const std::map<std::string, double> shares{{"a", a}, {"b", b - a}, {"c", 1.0 - b}};
        const SourceCoefficients coeffs(
            {{"a", CarbonIntensity(ca)}, {"b", CarbonIntensity(cb)}, {"c", CarbonIntensity(cc)}});
        const double ci = mix_to_ci(EnergyMixSnapshot(TimeStamp(0.0), shares), coeffs).g_per_kwh();
        double lo = 1e18, hi = -1e18;
        for (const auto& [name, share] : shares) {
            if (share <= 0.0)
                continue;
            lo = std::min(lo, coeffs.at(name).g_per_kwh());
            hi = std::max(hi, coeffs.at(name).g_per_kwh());
        }
        CHECK(ci >= lo - 1e-9);
        CHECK(ci <= hi + 1e-9);
    }
}

TEST_CASE("ci_at holds the latest report") {
    const TimeStamp midnight = parse_iso8601_utc("2022-06-01T00:00:00Z");
    const TimeStamp noon = parse_iso8601_utc("2022-06-01T12:00:00Z");
    const CarbonIntensitySeries series(
        "CY", {{midnight, CarbonIntensity(600.0)}, {noon, CarbonIntensity(300.0)}});

    CHECK(series.ci_at(parse_iso8601_utc("2022-06-01T13:00:00Z")).g_per_kwh() == 300.0);
    CHECK(series.ci_at(midnight).g_per_kwh() == 600.0);
    CHECK(series.ci_at(parse_iso8601_utc("2022-06-01T11:59:59Z")).g_per_kwh() == 600.0);

    CHECK_THROWS_AS(series.ci_at(parse_iso8601_utc("2022-05-31T23:59:59Z")), CoverageError);
    // coverage holds for one reporting interval (12 h) past the last point
    CHECK_NOTHROW(series.ci_at(parse_iso8601_utc("2022-06-01T23:59:59Z")));
    CHECK_THROWS_AS(series.ci_at(parse_iso8601_utc("2022-06-02T00:00:00Z")), CoverageError);
}

TEST_CASE("a single-point series is a constant grid") {
    const CarbonIntensitySeries sweden("SE",
                                       {{parse_iso8601_utc("2022-01-01T00:00:00Z"),
                                         CarbonIntensity(13.0)}});
    CHECK(sweden.ci_at(parse_iso8601_utc("2022-01-01T00:00:00Z")).g_per_kwh() == 13.0);
    CHECK(sweden.ci_at(parse_iso8601_utc("2022-06-01T12:34:56Z")).g_per_kwh() == 13.0);
    CHECK(sweden.ci_at(parse_iso8601_utc("2031-12-31T23:59:59Z")).g_per_kwh() == 13.0);
}

TEST_CASE("series constructor validates ordering and non-emptiness") {
    CHECK_THROWS_AS(CarbonIntensitySeries("x", {}), ValidationError);
    CHECK_THROWS_AS(CarbonIntensitySeries("x", {{TimeStamp(10.0), CarbonIntensity(1.0)},
                                                {TimeStamp(10.0), CarbonIntensity(2.0)}}),
                    ValidationError);
    CHECK_THROWS_AS(CarbonIntensitySeries("x", {{TimeStamp(10.0), CarbonIntensity(1.0)},
                                                {TimeStamp(5.0), CarbonIntensity(2.0)}}),
                    ValidationError);
}

TEST_CASE("emissions applies CO2eq = E * CI per segment") {
    const TimeStamp t0(0.0);
    const GridProfile cyprus = GridProfile::constant("CY", CarbonIntensity(621.0), t0);

    const EnergySegment segment{TimeInterval(t0, TimeStamp(16200.0)),
                                Energy::from_kilowatt_hours(3.6)};
    const auto result = emissions({&segment, 1}, cyprus);
    CHECK(close_rel(result.total.grams(), 2235.6));
    REQUIRE(result.items.size() == 1);
    CHECK(close_rel(result.items[0].emissions.grams(), 2235.6));

    const GridProfile clean = GridProfile::constant("clean", CarbonIntensity(0.0), t0);
    CHECK(emissions({&segment, 1}, clean).total.grams() == 0.0);
}

TEST_CASE("emissions is linear over segments") {
    const TimeStamp t0(0.0);
    const CarbonIntensitySeries series("two-level", {{t0, CarbonIntensity(100.0)},
                                                     {TimeStamp(3600.0), CarbonIntensity(300.0)}});
    const GridProfile grid = GridProfile::from_series(series);

    const std::vector<EnergySegment> segments{
        {TimeInterval(t0, TimeStamp(3600.0)), Energy::from_kilowatt_hours(1.0)},
        {TimeInterval(TimeStamp(3600.0), TimeStamp(7200.0)), Energy::from_kilowatt_hours(1.0)},
    };
    CHECK(close_rel(emissions(segments, grid).total.grams(), 400.0));
}

TEST_CASE("emissions scales linearly with energy") {
    const TimeStamp t0(0.0);
    const CarbonIntensitySeries series("steps", {{t0, CarbonIntensity(150.0)},
                                                 {TimeStamp(900.0), CarbonIntensity(650.0)},
                                                 {TimeStamp(1800.0), CarbonIntensity(50.0)}});
    const GridProfile grid = GridProfile::from_series(series);

    std::mt19937 rng(13);
    std::uniform_real_distribution<double> kwh(0.01, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double e1 = kwh(rng), e2 = kwh(rng);
        const std::vector<EnergySegment> base{
            {TimeInterval(t0, TimeStamp(1200.0)), Energy::from_kilowatt_hours(e1)},
            {TimeInterval(TimeStamp(1200.0), TimeStamp(2400.0)), Energy::from_kilowatt_hours(e2)},
        };
        const std::vector<EnergySegment> tripled{
            {base[0].interval, base[0].energy.scaled(3.0)},
            {base[1].interval, base[1].energy.scaled(3.0)},
        };
        CHECK(close_rel(emissions(tripled, grid).total.grams(),
                        3.0 * emissions(base, grid).total.grams()));
    }
}

TEST_CASE("emissions reduces to total * CI on a constant grid") {
    const GridProfile flat = GridProfile::constant("flat", CarbonIntensity(311.0), TimeStamp(0.0));
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> kwh(0.0, 10.0);
    for (int i = 0; i < 50; ++i) {
        const double e1 = kwh(rng), e2 = kwh(rng), e3 = kwh(rng);
        const std::vector<EnergySegment> segments{
            {TimeInterval(TimeStamp(0.0), TimeStamp(100.0)), Energy::from_kilowatt_hours(e1)},
            {TimeInterval(TimeStamp(150.0), TimeStamp(400.0)), Energy::from_kilowatt_hours(e2)},
            {TimeInterval(TimeStamp(400.0), TimeStamp(1000.0)), Energy::from_kilowatt_hours(e3)},
        };
        CHECK(close_rel(emissions(segments, flat).total.grams(), (e1 + e2 + e3) * 311.0));
    }
}

TEST_CASE("splitting a segment preserves the total under constant CI") {
    const GridProfile flat = GridProfile::constant("flat", CarbonIntensity(621.0), TimeStamp(0.0));
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> cut(0.05, 0.95);
    for (int i = 0; i < 50; ++i) {
        const double total_kwh = 3.6;
        const TimeInterval whole(TimeStamp(0.0), TimeStamp(16200.0));
        const EnergySegment one{whole, Energy::from_kilowatt_hours(total_kwh)};

        const double f = cut(rng);
        const TimeStamp mid(16200.0 * f);
        const std::vector<EnergySegment> two{
            {TimeInterval(whole.start(), mid), Energy::from_kilowatt_hours(total_kwh * f)},
            {TimeInterval(mid, whole.end()), Energy::from_kilowatt_hours(total_kwh * (1.0 - f))},
        };
        CHECK(close_rel(emissions(two, flat).total.grams(),
                        emissions({&one, 1}, flat).total.grams()));
    }
}

TEST_CASE("segments spanning CI steps are split at the breakpoints") {
    // 1 kWh spread uniformly over two hours: first hour at 100, second at 300.
    const CarbonIntensitySeries series("two-level", {{TimeStamp(0.0), CarbonIntensity(100.0)},
                                                     {TimeStamp(3600.0), CarbonIntensity(300.0)}});
    const GridProfile grid = GridProfile::from_series(series);
    const EnergySegment segment{TimeInterval(TimeStamp(0.0), TimeStamp(7200.0)),
                                Energy::from_kilowatt_hours(1.0)};
    CHECK(close_rel(emissions({&segment, 1}, grid).total.grams(), 0.5 * 100.0 + 0.5 * 300.0));
}

TEST_CASE("emissions rejects disorder and uncovered segments") {
    const GridProfile flat = GridProfile::constant("flat", CarbonIntensity(100.0), TimeStamp(0.0));
    const std::vector<EnergySegment> overlapping{
        {TimeInterval(TimeStamp(0.0), TimeStamp(100.0)), Energy(10.0)},
        {TimeInterval(TimeStamp(50.0), TimeStamp(150.0)), Energy(10.0)},
    };
    CHECK_THROWS_AS(emissions(overlapping, flat), ValidationError);

    const EnergySegment early{TimeInterval(TimeStamp(-100.0), TimeStamp(50.0)), Energy(10.0)};
    CHECK_THROWS_AS(emissions({&early, 1}, flat), CoverageError);
}

TEST_CASE("build_ci_series applies the mix pointwise") {
    const SourceCoefficients coeffs({{"grid", CarbonIntensity(13.0)}});
    const std::vector<EnergyMixSnapshot> single{EnergyMixSnapshot(TimeStamp(0.0), {{"grid", 1.0}})};
    const auto series = build_ci_series("SE", single, coeffs);
    REQUIRE(series.points().size() == 1);
    CHECK(series.points()[0].at == TimeStamp(0.0));
    CHECK(series.points()[0].ci.g_per_kwh() == 13.0);

    CHECK_THROWS_AS(build_ci_series("none", {}, coeffs), ValidationError);
}

TEST_CASE("the synthetic solar-ramp day dips at midday") {
    const auto mix = load_mix_csv(data_dir() / "grids" / "cyprus_mix_synthetic_day.csv");
    const auto coeffs = load_coefficients_csv(data_dir() / "grids" / "source_coefficients.csv");
    const auto series = build_ci_series("CY-synth", mix, coeffs);

    CHECK(series.points().size() == mix.size());
    for (std::size_t i = 0; i < mix.size(); ++i)
        CHECK(series.points()[i].at == mix[i].at());

    const double midnight = series.ci_at(parse_iso8601_utc("2022-06-01T00:00:00Z")).g_per_kwh();
    const double midday = series.ci_at(parse_iso8601_utc("2022-06-01T12:00:00Z")).g_per_kwh();
    const double evening = series.ci_at(parse_iso8601_utc("2022-06-01T21:00:00Z")).g_per_kwh();
    CHECK(midday < midnight);
    CHECK(midday < evening);
    CHECK(close_rel(midday, 162.8)); // 0.8 solar / 0.2 oil through the plateau

    // pointwise agreement with the shipped pre-aggregated series
    const auto shipped =
        load_ci_csv(data_dir() / "grids" / "cyprus_ci_synthetic_day.csv", "CY-synth");
    REQUIRE(shipped.points().size() == series.points().size());
    for (std::size_t i = 0; i < shipped.points().size(); ++i) {
        CHECK(shipped.points()[i].at == series.points()[i].at);
        CHECK(close_rel(series.points()[i].ci.g_per_kwh(), shipped.points()[i].ci.g_per_kwh()));
    }
}

TEST_CASE("grid scaling multiplies every point") {
    const auto series = load_ci_csv(data_dir() / "grids" / "cyprus_ci_synthetic_day.csv", "CY");
    const GridProfile grid = GridProfile::from_series(series);
    const GridProfile doubled = grid.scaled(2.0);
    for (std::size_t i = 0; i < series.points().size(); ++i)
        CHECK(close_rel(doubled.series().points()[i].ci.g_per_kwh(),
                        2.0 * series.points()[i].ci.g_per_kwh()));
}
