#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "carbonscope/ingest.hpp"
#include "carbonscope/workload.hpp"
#include "test_common.hpp"

using namespace carbonscope;

namespace {

ModelProfile resnet50() {
    return {"ResNet50", 25.6, 99.0, 73.0, 1116.0, 373.0};
}
ModelProfile squeezenet() {
    return {"SqueezeNet", 1.25, 5.0, 52.0, 212.0, 51.0};
}
ModelProfile mobilenetv2() {
    return {"MobileNetV2", 3.4, 14.0, 70.0, 143.0, 39.0};
}

} // namespace

TEST_CASE("inference_energy scales the per-5k figure") {
    CHECK(inference_energy(resnet50(), 5000).watt_hours() == 373.0);
    CHECK(close_rel(inference_energy(mobilenetv2(), 10000).watt_hours(), 78.0));
    CHECK(inference_energy(squeezenet(), 0).joules() == 0.0);
    CHECK_THROWS_AS(inference_energy(resnet50(), -1), ValidationError);
}

TEST_CASE("inference_duration assumes sequential execution") {
    CHECK(close_rel(inference_duration_s(mobilenetv2(), 5000), 715.0));
    CHECK(close_rel(inference_duration_s(squeezenet(), 1), 0.212));
    CHECK(inference_duration_s(resnet50(), 0) == 0.0);
}

TEST_CASE("inference energy and duration are linear in item count") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<std::int64_t> items(1, 100000);
    for (int i = 0; i < 100; ++i) {
        const std::int64_t n = items(rng);
        for (const auto& profile : {resnet50(), squeezenet(), mobilenetv2()}) {
            CHECK(close_rel(inference_energy(profile, 3 * n).joules(),
                            3.0 * inference_energy(profile, n).joules()));
            CHECK(close_rel(inference_duration_s(profile, 3 * n),
                            3.0 * inference_duration_s(profile, n)));
        }
    }
}

TEST_CASE("implied_mean_power cross-checks energy against latency") {
    CHECK(close_rel(implied_mean_power(resnet50()).watts(), 373.0 * 3600.0 / 5000.0 / 1.116));
    CHECK(close_rel(implied_mean_power(mobilenetv2()).watts(), 39.0 * 3600.0 / 5000.0 / 0.143));
    CHECK(close_rel(implied_mean_power(squeezenet()).watts(), 51.0 * 3600.0 / 5000.0 / 0.212));

    // plausibility: within the reference node's 330 W + 70 W ceiling
    for (const auto& profile : {resnet50(), squeezenet(), mobilenetv2()}) {
        const double w = implied_mean_power(profile).watts();
        CHECK(w > 0.0);
        CHECK(w <= 400.0);
    }
}

TEST_CASE("transfer_duration follows bits over effective bandwidth") {
    CHECK(close_rel(transfer_duration_s(144000000000LL, 1e8, 1.0), 11520.0));
    // the default efficiency lands the ImageNet move at ~3.5 hours
    CHECK(close_rel(transfer_duration_s(144000000000LL, 1e8), 12590.163934426229));
    CHECK(transfer_duration_s(0, 1e8, 1.0) == 0.0);

    CHECK_THROWS_AS(transfer_duration_s(1000, 0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(transfer_duration_s(1000, -5.0, 1.0), ValidationError);
    CHECK_THROWS_AS(transfer_duration_s(1000, 1e8, 0.0), ValidationError);
    CHECK_THROWS_AS(transfer_duration_s(1000, 1e8, 1.5), ValidationError);
    CHECK_THROWS_AS(transfer_duration_s(-1, 1e8, 1.0), ValidationError);
}

TEST_CASE("transfer_duration is inversely proportional to bandwidth and efficiency") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> bandwidth(1e6, 1e10);
    std::uniform_real_distribution<double> efficiency(0.1, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double bw = bandwidth(rng);
        const double eff = efficiency(rng);
        const double base = transfer_duration_s(1e9, bw, eff);
        CHECK(close_rel(transfer_duration_s(1e9, 2.0 * bw, eff), base / 2.0));
        CHECK(close_rel(transfer_duration_s(1e9, bw, eff / 2.0), base * 2.0));
    }
}

TEST_CASE("transfer_energy charges per bit moved") {
    CHECK(transfer_energy(123456789, 0.0).joules() == 0.0);
    CHECK(close_rel(transfer_energy(1000000000LL, 1e-8).joules(), 80.0));
    const Energy imagenet = transfer_energy(144000000000LL, 5e-9);
    CHECK(close_rel(imagenet.joules(), 5760.0));
    CHECK(close_rel(imagenet.watt_hours(), 1.6));
    CHECK_THROWS_AS(transfer_energy(1000, -1e-9), ValidationError);
}

TEST_CASE("model profiles validate their fields") {
    CHECK_THROWS_AS(ModelProfile("x", 1.0, 1.0, 101.0, 10.0, 1.0), ValidationError);
    CHECK_THROWS_AS(ModelProfile("x", 1.0, 1.0, 50.0, 0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(ModelProfile("x", 1.0, 1.0, 50.0, -3.0, 1.0), ValidationError);
    CHECK_THROWS_AS(ModelProfile("x", 1.0, 1.0, 50.0, 10.0, -1.0), ValidationError);
    CHECK_THROWS_AS(ModelProfile("", 1.0, 1.0, 50.0, 10.0, 1.0), ValidationError);
}

TEST_CASE("task construction enforces kind-specific invariants") {
    TrainingSpec training;
    training.devices = {"server"};
    training.duration_s = 100.0;
    training.profile = {{0.0, 1.0}};
    CHECK_NOTHROW(Task("ok", training));

    TrainingSpec no_devices = training;
    no_devices.devices.clear();
    CHECK_THROWS_AS(Task("bad", no_devices), ValidationError);

    TrainingSpec zero_duration = training;
    zero_duration.duration_s = 0.0;
    CHECK_THROWS_AS(Task("bad", zero_duration), ValidationError);

    TrainingSpec late_start = training;
    late_start.profile = {{10.0, 1.0}};
    CHECK_THROWS_AS(Task("bad", late_start), ValidationError);

    TrainingSpec out_of_range = training;
    out_of_range.profile = {{0.0, 1.5}};
    CHECK_THROWS_AS(Task("bad", out_of_range), ValidationError);

    InferenceSpec inference{resnet50(), 1, std::nullopt};
    CHECK_NOTHROW(Task("ok", inference));
    inference.item_count = 0;
    CHECK_THROWS_AS(Task("bad", inference), ValidationError);

    TransferSpec transfer{144000000000LL, 1e8, 1.0, 0.0};
    CHECK_NOTHROW(Task("ok", transfer));
    transfer.bytes = 0;
    CHECK_THROWS_AS(Task("bad", transfer), ValidationError);
}

TEST_CASE("task durations derive from their specs") {
    TrainingSpec training;
    training.devices = {"server"};
    training.duration_s = 16200.0;
    training.profile = {{0.0, 1.0}};
    CHECK(Task("t", training).duration_s() == 16200.0);

    CHECK(close_rel(Task("i", InferenceSpec{mobilenetv2(), 5000, std::nullopt}).duration_s(),
                    715.0));
    CHECK(close_rel(Task("x", TransferSpec{144000000000LL, 1e8, 1.0, 0.0}).duration_s(), 11520.0));
}

TEST_CASE("workload traces validate offsets and ids") {
    TrainingSpec spec;
    spec.devices = {"server"};
    spec.duration_s = 100.0;
    spec.profile = {{0.0, 1.0}};

    std::vector<WorkloadItem> items;
    items.push_back({Task("a", spec), 0.0});
    items.push_back({Task("b", spec), 50.0});
    const WorkloadTrace trace(items);
    CHECK(trace.horizon_s() == 150.0);

    items.push_back({Task("a", spec), 10.0});
    CHECK_THROWS_AS(WorkloadTrace{items}, ValidationError);

    std::vector<WorkloadItem> negative{{Task("c", spec), -1.0}};
    CHECK_THROWS_AS(WorkloadTrace{negative}, ValidationError);

    CHECK(WorkloadTrace().horizon_s() == 0.0);
}

TEST_CASE("the shipped profile fixture carries the measured trio") {
    const auto profiles = load_model_profiles_csv(data_dir() / "models" / "model_profiles.csv");
    REQUIRE(profiles.size() == 3);
    CHECK(profiles[0].name == "ResNet50");
    CHECK(profiles[0].params_millions == 25.6);
    CHECK(profiles[0].size_mb == 99.0);
    CHECK(profiles[0].accuracy_pct == 73.0);
    CHECK(profiles[0].mean_inference_ms == 1116.0);
    CHECK(profiles[0].energy_wh_per_5k == 373.0);
    CHECK(profiles[1].name == "SqueezeNet");
    CHECK(profiles[1].energy_wh_per_5k == 51.0);
    CHECK(profiles[2].name == "MobileNetV2");
    CHECK(profiles[2].energy_wh_per_5k == 39.0);
}
