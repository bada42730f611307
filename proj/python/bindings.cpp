#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "carbonscope/ingest.hpp"
#include "carbonscope/scenario.hpp"

namespace py = pybind11;
using namespace carbonscope;

namespace {

TimeStamp ts(const std::string& iso) {
    return parse_iso8601_utc(iso);
}

py::dict report_to_dict(const ScenarioReport& report) {
    py::dict out;
    out["total_energy_j"] = report.total_energy.joules();
    out["total_energy_kwh"] = report.total_energy.kilowatt_hours();
    out["total_emissions_g"] = report.total_emissions.grams();
    py::list tasks;
    for (const auto& task : report.breakdown) {
        py::dict row;
        row["id"] = task.task_id;
        row["start"] = format_iso8601_utc(task.interval.start());
        row["end"] = format_iso8601_utc(task.interval.end());
        row["duration_s"] = task.interval.duration_s();
        row["energy_j"] = task.energy.joules();
        row["energy_wh"] = task.energy.watt_hours();
        row["emissions_g"] = task.emissions.grams();
        tasks.append(row);
    }
    out["tasks"] = tasks;
    out["disclaimer"] = report.disclaimer;
    return out;
}

py::dict sweep_to_dict(const SweepResult& result) {
    py::dict out;
    py::list candidates;
    for (const auto& candidate : result.candidates) {
        py::dict row;
        row["label"] = candidate.label;
        row["total_energy_kwh"] = candidate.report.total_energy.kilowatt_hours();
        row["total_emissions_g"] = candidate.report.total_emissions.grams();
        candidates.append(row);
    }
    out["candidates"] = candidates;
    out["best_index"] = result.best_index;
    out["best_label"] = result.best().label;
    return out;
}

GridProfile make_constant_grid(const std::string& region, double ci_g_per_kwh,
                               const std::string& from_iso) {
    return GridProfile::constant(region, CarbonIntensity(ci_g_per_kwh), ts(from_iso));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Energy and carbon footprint estimation for AI-driven IoT/edge workload scenarios";

    const auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ValidationError>(m, "ValidationError", base);
    py::register_exception<CoverageError>(m, "CoverageError", base);
    py::register_exception<ConfigError>(m, "ConfigError", base);
    py::register_exception<ParseError>(m, "ParseError", base);

    // units
    m.def("wh_to_joules", [](double wh) { return wh_to_joules(wh).joules(); }, py::arg("wh"),
          "Watt-hours to joules (1 Wh = 3600 J).");
    m.def(
        "energy_from_power",
        [](double watts, double duration_s) {
            return energy_from_power(Power(watts), duration_s).joules();
        },
        py::arg("watts"), py::arg("duration_s"), "E = P * t, in joules.");
    m.def(
        "apply_pue",
        [](double joules, double pue) {
            return apply_pue(Energy(joules), FacilityProfile("facility", pue)).joules();
        },
        py::arg("joules"), py::arg("pue"));

    // power models
    py::class_<PowerModel>(m, "PowerModel")
        .def(py::init([](const std::string& device_name, double idle_watts, double max_watts,
                         const std::vector<std::pair<double, double>>& points,
                         bool facility_housed) {
                 std::vector<PowerPoint> converted;
                 converted.reserve(points.size());
                 for (const auto& [u, w] : points)
                     converted.push_back({u, Power(w)});
                 return PowerModel(device_name, Power(idle_watts), Power(max_watts),
                                   std::move(converted), facility_housed);
             }),
             py::arg("device_name"), py::arg("idle_watts"), py::arg("max_watts"),
             py::arg("points"), py::arg("facility_housed") = false)
        .def("power_at",
             [](const PowerModel& model, double utilization) {
                 return model.power_at(utilization).watts();
             })
        .def_property_readonly("device_name", &PowerModel::device_name)
        .def_property_readonly("idle_watts",
                               [](const PowerModel& model) { return model.idle_watts().watts(); })
        .def_property_readonly("max_watts",
                               [](const PowerModel& model) { return model.max_watts().watts(); })
        .def_property_readonly("facility_housed", &PowerModel::facility_housed);
    m.def("load_power_model", &load_power_model, py::arg("path"));

    // carbon
    m.def(
        "mix_to_ci",
        [](const std::map<std::string, double>& shares,
           const std::map<std::string, double>& coeffs) {
            std::map<std::string, CarbonIntensity> converted;
            for (const auto& [source, value] : coeffs)
                converted.emplace(source, CarbonIntensity(value));
            return mix_to_ci(EnergyMixSnapshot(TimeStamp(0.0), shares),
                             SourceCoefficients(converted))
                .g_per_kwh();
        },
        py::arg("shares"), py::arg("coefficients"),
        "Weighted energy-mix carbon intensity in g/kWh.");

    py::class_<GridProfile>(m, "GridProfile")
        .def_property_readonly("region", &GridProfile::region)
        .def("ci_at",
             [](const GridProfile& grid, const std::string& at_iso) {
                 return grid.ci_at(ts(at_iso)).g_per_kwh();
             })
        .def("scaled", &GridProfile::scaled);
    m.def("constant_grid", &make_constant_grid, py::arg("region"), py::arg("ci_g_per_kwh"),
          py::arg("from_iso") = "1970-01-01T00:00:00Z");
    m.def(
        "load_grid_csv",
        [](const std::filesystem::path& path, const std::string& region) {
            return GridProfile::from_series(load_ci_csv(path, region));
        },
        py::arg("path"), py::arg("region"));

    // workload
    py::class_<ModelProfile>(m, "ModelProfile")
        .def(py::init<std::string, double, double, double, double, double>(), py::arg("name"),
             py::arg("params_millions"), py::arg("size_mb"), py::arg("accuracy_pct"),
             py::arg("mean_inference_ms"), py::arg("energy_wh_per_5k"))
        .def_readonly("name", &ModelProfile::name)
        .def_readonly("params_millions", &ModelProfile::params_millions)
        .def_readonly("size_mb", &ModelProfile::size_mb)
        .def_readonly("accuracy_pct", &ModelProfile::accuracy_pct)
        .def_readonly("mean_inference_ms", &ModelProfile::mean_inference_ms)
        .def_readonly("energy_wh_per_5k", &ModelProfile::energy_wh_per_5k);
    m.def("load_model_profiles", &load_model_profiles_csv, py::arg("path"));

    m.def(
        "inference_energy_wh",
        [](const ModelProfile& profile, std::int64_t items) {
            return inference_energy(profile, items).watt_hours();
        },
        py::arg("profile"), py::arg("items"));
    m.def("inference_duration_s", &inference_duration_s, py::arg("profile"), py::arg("items"));
    m.def(
        "implied_mean_power_w",
        [](const ModelProfile& profile) { return implied_mean_power(profile).watts(); },
        py::arg("profile"));
    m.def("transfer_duration_s", &transfer_duration_s, py::arg("bytes"), py::arg("bandwidth_bps"),
          py::arg("efficiency") = kDefaultTransferEfficiency);
    m.def(
        "transfer_energy_j",
        [](std::int64_t bytes, double joules_per_bit) {
            return transfer_energy(bytes, joules_per_bit).joules();
        },
        py::arg("bytes"), py::arg("joules_per_bit"));

    // scenarios
    py::class_<Scenario>(m, "Scenario")
        .def_property_readonly("name", &Scenario::name)
        .def_property_readonly("anchor",
                               [](const Scenario& s) { return format_iso8601_utc(s.anchor()); })
        .def("with_anchor",
             [](const Scenario& s, const std::string& iso) { return s.with_anchor(ts(iso)); })
        .def("with_grid", &Scenario::with_grid);
    m.def("load_scenario", &load_scenario, py::arg("path"));

    m.def(
        "estimate", [](const Scenario& scenario) { return report_to_dict(estimate(scenario)); },
        py::arg("scenario"));
    m.def(
        "sweep_start_time",
        [](const Scenario& scenario, const std::string& window_start,
           const std::string& window_end, double step_s) {
            return sweep_to_dict(sweep_start_time(
                scenario, TimeInterval(ts(window_start), ts(window_end)), step_s));
        },
        py::arg("scenario"), py::arg("window_start"), py::arg("window_end"), py::arg("step_s"));
    m.def(
        "compare_locations",
        [](const Scenario& scenario, const std::vector<GridProfile>& grids) {
            return sweep_to_dict(compare_locations(scenario, grids));
        },
        py::arg("scenario"), py::arg("grids"));
    m.def(
        "relative_reduction_pct",
        [](double a_grams, double b_grams) {
            return relative_reduction_pct(CarbonMass(a_grams), CarbonMass(b_grams));
        },
        py::arg("a_grams"), py::arg("b_grams"));
    m.def(
        "compare_models",
        [](const std::vector<ModelProfile>& profiles, std::int64_t items, const GridProfile& grid,
           const std::string& at_iso) {
            py::list out;
            for (const auto& row : compare_models(profiles, items, grid, ts(at_iso))) {
                py::dict entry;
                entry["model"] = row.model;
                entry["accuracy_pct"] = row.accuracy_pct;
                entry["duration_s"] = row.duration_s;
                entry["energy_wh"] = row.energy.watt_hours();
                entry["emissions_g"] = row.emissions.grams();
                out.append(entry);
            }
            return out;
        },
        py::arg("profiles"), py::arg("items"), py::arg("grid"), py::arg("at_iso"));
    m.def(
        "sweep_resources",
        [](const std::filesystem::path& configs_path, std::int64_t items) {
            py::list out;
            for (const auto& row : sweep_resources(load_resource_configs(configs_path), items)) {
                py::dict entry;
                entry["label"] = row.label;
                entry["duration_s"] = row.duration_s;
                entry["mean_power_w"] = row.mean_power.watts();
                entry["energy_j"] = row.energy.joules();
                out.append(entry);
            }
            return out;
        },
        py::arg("configs_path"), py::arg("items"));
    m.def(
        "pareto_front",
        [](const std::vector<std::pair<std::string, std::map<std::string, double>>>& rows,
           const std::vector<std::pair<std::string, std::string>>& objectives) {
            std::vector<MetricRow> converted;
            converted.reserve(rows.size());
            for (const auto& [label, metrics] : rows)
                converted.push_back({label, metrics});
            std::vector<Objective> parsed;
            parsed.reserve(objectives.size());
            for (const auto& [metric, direction] : objectives) {
                if (direction == "min")
                    parsed.push_back({metric, Direction::Minimize});
                else if (direction == "max")
                    parsed.push_back({metric, Direction::Maximize});
                else
                    throw ValidationError("objective direction must be 'min' or 'max', got '" +
                                          direction + "'");
            }
            std::vector<std::string> labels;
            for (const auto& row : pareto_front(converted, parsed))
                labels.push_back(row.label);
            return labels;
        },
        py::arg("rows"), py::arg("objectives"),
        "Labels of rows not strictly dominated on the given (metric, 'min'|'max') objectives.");

    m.attr("DEFAULT_TRANSFER_EFFICIENCY") = kDefaultTransferEfficiency;
    m.attr("CI_LIMITATION_DISCLAIMER") = kCiLimitationDisclaimer;
    m.attr("__version__") = "0.1.0";
}
