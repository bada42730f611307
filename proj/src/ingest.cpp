#include "carbonscope/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace carbonscope {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r'))
        ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r'))
        --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

double parse_double_field(const std::string& field, const char* what) {
    if (field.empty())
        throw ParseError(std::string("empty ") + what);
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError(std::string("invalid ") + what + " '" + field + "'");
    return value;
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void reject(ParseReport* report, std::size_t line, std::string reason) {
    if (report)
        report->rejected.push_back({line, std::move(reason)});
}

// Walks data rows of a CSV document: verifies the header, skips blank
// lines, and hands each data row (split into fields) to `row_fn`, which
// returns true when the row was accepted.
template <typename RowFn>
void walk_csv(std::string_view text, const std::string& expected_header, std::size_t field_count,
              ParseReport* report, RowFn&& row_fn) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool saw_header = false;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view raw =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::string line = trim(raw);
        if (line.empty())
            continue;
        if (!saw_header) {
            if (line != expected_header)
                throw ParseError("expected header '" + expected_header + "', got '" + line +
                                 "' on line " + std::to_string(line_no));
            saw_header = true;
            continue;
        }
        auto fields = split_fields(line);
        if (fields.size() != field_count) {
            reject(report, line_no, "expected " + std::to_string(field_count) + " fields, got " +
                                        std::to_string(fields.size()));
            continue;
        }
        if (row_fn(line_no, fields)) {
            if (report)
                ++report->accepted;
        }
    }
    if (!saw_header)
        throw ParseError("missing header '" + expected_header + "'");
}

} // namespace

CarbonIntensitySeries parse_ci_csv(std::string_view text, std::string region,
                                   ParseReport* report) {
    std::vector<CiPoint> points;
    walk_csv(text, "timestamp,ci_g_per_kwh", 2, report,
             [&](std::size_t line_no, const std::vector<std::string>& fields) {
                 TimeStamp at;
                 CarbonIntensity ci;
                 try {
                     at = parse_iso8601_utc(fields[0]);
                     ci = CarbonIntensity(parse_double_field(fields[1], "carbon intensity"));
                 } catch (const Error& e) {
                     reject(report, line_no, e.what());
                     return false;
                 }
                 if (!points.empty()) {
                     if (at < points.back().at)
                         throw ParseError("out-of-order timestamp on line " +
                                          std::to_string(line_no));
                     if (at == points.back().at) {
                         reject(report, line_no, "duplicate timestamp");
                         return false;
                     }
                 }
                 points.push_back({at, ci});
                 return true;
             });
    if (points.empty())
        throw ParseError("carbon-intensity file has no usable rows");
    return CarbonIntensitySeries(std::move(region), std::move(points));
}

std::vector<EnergyMixSnapshot> parse_mix_csv(std::string_view text, ParseReport* report) {
    struct PendingRow {
        std::size_t line;
        std::string source;
        double share;
    };
    std::vector<EnergyMixSnapshot> snapshots;
    std::vector<PendingRow> pending;
    bool have_pending_at = false;
    TimeStamp pending_at;

    const auto close_snapshot = [&] {
        if (!have_pending_at || pending.empty())
            return;
        std::map<std::string, double> shares;
        for (const auto& row : pending)
            shares[row.source] = row.share;
        try {
            snapshots.emplace_back(pending_at, std::move(shares));
            if (report)
                report->accepted += pending.size();
        } catch (const Error& e) {
            for (const auto& row : pending)
                reject(report, row.line, e.what());
        }
        pending.clear();
    };

    walk_csv(text, "timestamp,source,share", 3, report,
             [&](std::size_t line_no, const std::vector<std::string>& fields) {
                 TimeStamp at;
                 double share = 0.0;
                 try {
                     at = parse_iso8601_utc(fields[0]);
                     share = parse_double_field(fields[2], "share");
                 } catch (const Error& e) {
                     reject(report, line_no, e.what());
                     return false;
                 }
                 if (fields[1].empty()) {
                     reject(report, line_no, "empty source name");
                     return false;
                 }
                 if (have_pending_at && at < pending_at)
                     throw ParseError("out-of-order timestamp on line " + std::to_string(line_no));
                 if (have_pending_at && at == pending_at) {
                     for (const auto& row : pending)
                         if (row.source == fields[1]) {
                             reject(report, line_no, "duplicate source '" + fields[1] +
                                                         "' for this timestamp");
                             return false;
                         }
                 } else {
                     close_snapshot();
                     pending_at = at;
                     have_pending_at = true;
                 }
                 pending.push_back({line_no, fields[1], share});
                 // Accounting happens when the snapshot closes.
                 return false;
             });
    close_snapshot();
    return snapshots;
}

SourceCoefficients parse_coefficients_csv(std::string_view text, ParseReport* report) {
    std::map<std::string, CarbonIntensity> by_source;
    walk_csv(text, "source,ci_g_per_kwh", 2, report,
             [&](std::size_t line_no, const std::vector<std::string>& fields) {
                 if (fields[0].empty()) {
                     reject(report, line_no, "empty source name");
                     return false;
                 }
                 if (by_source.count(fields[0]) > 0) {
                     reject(report, line_no, "duplicate source '" + fields[0] + "'");
                     return false;
                 }
                 try {
                     by_source.emplace(fields[0], CarbonIntensity(parse_double_field(
                                                      fields[1], "carbon intensity")));
                 } catch (const Error& e) {
                     reject(report, line_no, e.what());
                     return false;
                 }
                 return true;
             });
    return SourceCoefficients(std::move(by_source));
}

std::vector<ModelProfile> parse_model_profiles_csv(std::string_view text, ParseReport* report) {
    std::vector<ModelProfile> profiles;
    walk_csv(text, "name,params_millions,size_mb,accuracy_pct,mean_inference_ms,energy_wh_per_5k",
             6, report, [&](std::size_t line_no, const std::vector<std::string>& fields) {
                 for (const auto& existing : profiles)
                     if (existing.name == fields[0]) {
                         reject(report, line_no, "duplicate model '" + fields[0] + "'");
                         return false;
                     }
                 try {
                     profiles.emplace_back(fields[0], parse_double_field(fields[1], "params_millions"),
                                           parse_double_field(fields[2], "size_mb"),
                                           parse_double_field(fields[3], "accuracy_pct"),
                                           parse_double_field(fields[4], "mean_inference_ms"),
                                           parse_double_field(fields[5], "energy_wh_per_5k"));
                 } catch (const Error& e) {
                     reject(report, line_no, e.what());
                     return false;
                 }
                 return true;
             });
    return profiles;
}

namespace {

ordered_json parse_json_document(std::string_view text, const char* what) {
    ordered_json doc = ordered_json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded())
        throw ParseError(std::string("malformed JSON in ") + what);
    if (!doc.is_object())
        throw ParseError(std::string(what) + " must be a JSON object");
    return doc;
}

const ordered_json& require_field(const ordered_json& obj, const char* name, const char* what) {
    const auto it = obj.find(name);
    if (it == obj.end())
        throw ParseError(std::string(what) + " is missing field '" + name + "'");
    return *it;
}

double require_number(const ordered_json& obj, const char* name, const char* what) {
    const auto& field = require_field(obj, name, what);
    if (!field.is_number())
        throw ParseError(std::string(what) + ": field '" + name + "' must be a number");
    return field.get<double>();
}

std::string require_string(const ordered_json& obj, const char* name, const char* what) {
    const auto& field = require_field(obj, name, what);
    if (!field.is_string())
        throw ParseError(std::string(what) + ": field '" + name + "' must be a string");
    return field.get<std::string>();
}

bool require_bool(const ordered_json& obj, const char* name, const char* what) {
    const auto& field = require_field(obj, name, what);
    if (!field.is_boolean())
        throw ParseError(std::string(what) + ": field '" + name + "' must be a boolean");
    return field.get<bool>();
}

void require_schema_version(const ordered_json& obj, const char* what) {
    const double version = require_number(obj, "schema_version", what);
    if (version != 1.0)
        throw ParseError(std::string(what) + ": unsupported schema_version " +
                         std::to_string(version));
}

double optional_number(const ordered_json& obj, const char* name, double fallback,
                       const char* what) {
    const auto it = obj.find(name);
    if (it == obj.end())
        return fallback;
    if (!it->is_number())
        throw ParseError(std::string(what) + ": field '" + name + "' must be a number");
    return it->get<double>();
}

} // namespace

PowerModel parse_power_model(std::string_view json_text) {
    const auto doc = parse_json_document(json_text, "power model");
    require_schema_version(doc, "power model");
    const std::string name = require_string(doc, "device_name", "power model");

    const auto& points_json = require_field(doc, "points", "power model");
    if (!points_json.is_array())
        throw ParseError("power model: 'points' must be an array");
    std::vector<PowerPoint> points;
    for (const auto& p : points_json) {
        if (!p.is_object())
            throw ParseError("power model: each point must be an object");
        points.push_back({require_number(p, "utilization", "power model point"),
                          Power(require_number(p, "watts", "power model point"))});
    }
    return PowerModel(name, Power(require_number(doc, "idle_watts", "power model")),
                      Power(require_number(doc, "max_watts", "power model")), std::move(points),
                      require_bool(doc, "facility_housed", "power model"));
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& relative) {
    const std::filesystem::path p(relative);
    return p.is_absolute() ? p : base / p;
}

Task parse_task(const ordered_json& obj, const std::filesystem::path& base) {
    const std::string id = require_string(obj, "id", "task");
    const std::string kind = require_string(obj, "kind", "task");
    const char* what = "task";

    if (kind == "training") {
        TrainingSpec spec;
        spec.duration_s = require_number(obj, "duration_s", what);
        const auto& devices = require_field(obj, "devices", what);
        if (!devices.is_array())
            throw ParseError("task '" + id + "': 'devices' must be an array");
        for (const auto& d : devices) {
            if (!d.is_string())
                throw ParseError("task '" + id + "': device names must be strings");
            spec.devices.push_back(d.get<std::string>());
        }
        if (obj.contains("utilization_profile")) {
            const auto& profile = obj["utilization_profile"];
            if (!profile.is_array())
                throw ParseError("task '" + id + "': 'utilization_profile' must be an array");
            for (const auto& p : profile)
                spec.profile.push_back({require_number(p, "offset_s", what),
                                        require_number(p, "utilization", what)});
        } else {
            spec.profile.push_back({0.0, require_number(obj, "utilization", what)});
        }
        return Task(id, std::move(spec));
    }
    if (kind == "inference") {
        InferenceSpec spec;
        const std::string profiles_path = require_string(obj, "profiles_csv", what);
        const std::string model_name = require_string(obj, "model", what);
        const auto profiles = load_model_profiles_csv(resolve(base, profiles_path));
        const auto it = std::find_if(profiles.begin(), profiles.end(),
                                     [&](const ModelProfile& p) { return p.name == model_name; });
        if (it == profiles.end())
            throw ConfigError("task '" + id + "': no model '" + model_name + "' in " +
                              profiles_path);
        spec.profile = *it;
        spec.item_count = static_cast<std::int64_t>(require_number(obj, "item_count", what));
        if (obj.contains("device"))
            spec.device = require_string(obj, "device", what);
        return Task(id, std::move(spec));
    }
    if (kind == "transfer") {
        TransferSpec spec;
        spec.bytes = static_cast<std::int64_t>(require_number(obj, "bytes", what));
        spec.bandwidth_bps = require_number(obj, "bandwidth_bps", what);
        spec.efficiency = optional_number(obj, "efficiency", kDefaultTransferEfficiency, what);
        spec.joules_per_bit = optional_number(obj, "joules_per_bit", 0.0, what);
        return Task(id, std::move(spec));
    }
    throw ParseError("task '" + id + "': unknown kind '" + kind +
                     "' (expected training, inference, or transfer)");
}

} // namespace

WorkloadTrace parse_workload(std::string_view json_text, const std::filesystem::path& base_path) {
    const auto doc = parse_json_document(json_text, "workload");
    require_schema_version(doc, "workload");
    const auto& tasks = require_field(doc, "tasks", "workload");
    if (!tasks.is_array())
        throw ParseError("workload: 'tasks' must be an array");

    std::vector<WorkloadItem> items;
    for (const auto& t : tasks) {
        if (!t.is_object())
            throw ParseError("workload: each task must be an object");
        const double offset = optional_number(t, "start_offset_s", 0.0, "task");
        items.push_back({parse_task(t, base_path), offset});
    }
    return WorkloadTrace(std::move(items));
}

namespace {

GridProfile parse_grid_spec(const ordered_json& obj, const std::filesystem::path& base,
                            TimeStamp anchor) {
    const char* what = "grid";
    const std::string region = require_string(obj, "region", what);
    const bool has_ci = obj.contains("ci_csv");
    const bool has_mix = obj.contains("mix_csv") || obj.contains("coefficients_csv");
    const bool has_const = obj.contains("constant_ci_g_per_kwh");
    if (static_cast<int>(has_ci) + static_cast<int>(has_mix) + static_cast<int>(has_const) != 1)
        throw ConfigError("grid '" + region +
                          "': exactly one of ci_csv, mix_csv+coefficients_csv, or "
                          "constant_ci_g_per_kwh must be given");

    if (has_ci)
        return GridProfile::from_series(
            load_ci_csv(resolve(base, require_string(obj, "ci_csv", what)), region));
    if (has_const) {
        const CarbonIntensity ci(require_number(obj, "constant_ci_g_per_kwh", what));
        const TimeStamp from = obj.contains("from")
                                   ? parse_iso8601_utc(require_string(obj, "from", what))
                                   : anchor;
        return GridProfile::constant(region, ci, from);
    }
    const auto mix = load_mix_csv(resolve(base, require_string(obj, "mix_csv", what)));
    const auto coeffs =
        load_coefficients_csv(resolve(base, require_string(obj, "coefficients_csv", what)));
    return GridProfile::from_mix(region, mix, coeffs);
}

} // namespace

Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_path) {
    const auto doc = parse_json_document(json_text, "scenario");
    require_schema_version(doc, "scenario");
    const std::string name = require_string(doc, "name", "scenario");
    const TimeStamp anchor = parse_iso8601_utc(require_string(doc, "anchor_time", "scenario"));

    const auto& facility_json = require_field(doc, "facility", "scenario");
    if (!facility_json.is_object())
        throw ParseError("scenario: 'facility' must be an object");
    FacilityProfile facility(require_string(facility_json, "name", "facility"),
                             require_number(facility_json, "pue", "facility"));

    const auto& devices_json = require_field(doc, "devices", "scenario");
    if (!devices_json.is_array())
        throw ParseError("scenario: 'devices' must be an array");
    std::vector<DeviceInstance> devices;
    for (const auto& d : devices_json) {
        if (!d.is_object())
            throw ParseError("scenario: each device must be an object");
        const std::string device_name = require_string(d, "name", "device");
        const auto model_path = resolve(base_path, require_string(d, "power_model", "device"));
        devices.push_back({device_name, load_power_model(model_path)});
    }

    const auto& grid_json = require_field(doc, "grid", "scenario");
    if (!grid_json.is_object())
        throw ParseError("scenario: 'grid' must be an object");
    GridProfile grid = parse_grid_spec(grid_json, base_path, anchor);

    const auto workload_path = resolve(base_path, require_string(doc, "workload", "scenario"));
    const std::string workload_text = read_file(workload_path);
    WorkloadTrace workload = parse_workload(workload_text, workload_path.parent_path());

    return Scenario(name, std::move(devices), std::move(facility), std::move(grid),
                    std::move(workload), anchor);
}

std::vector<ResourceConfig> parse_resource_configs(std::string_view json_text,
                                                   const std::filesystem::path& base_path) {
    const auto doc = parse_json_document(json_text, "resource sweep");
    require_schema_version(doc, "resource sweep");
    const auto& configs_json = require_field(doc, "configs", "resource sweep");
    if (!configs_json.is_array())
        throw ParseError("resource sweep: 'configs' must be an array");

    std::vector<ResourceConfig> configs;
    for (const auto& c : configs_json) {
        if (!c.is_object())
            throw ParseError("resource sweep: each config must be an object");
        ResourceConfig config{require_string(c, "label", "config"),
                              load_power_model(
                                  resolve(base_path, require_string(c, "power_model", "config"))),
                              optional_number(c, "utilization", 1.0, "config"),
                              require_number(c, "inference_ms", "config")};
        if (config.inference_ms <= 0.0)
            throw ValidationError("config '" + config.label + "': inference_ms must be positive");
        configs.push_back(std::move(config));
    }
    return configs;
}

std::string write_ci_csv(const CarbonIntensitySeries& series) {
    std::string out = "timestamp,ci_g_per_kwh\n";
    for (const auto& p : series.points())
        out += format_iso8601_utc(p.at) + "," + format_double(p.ci.g_per_kwh()) + "\n";
    return out;
}

std::string write_mix_csv(std::span<const EnergyMixSnapshot> snapshots) {
    std::string out = "timestamp,source,share\n";
    for (const auto& snapshot : snapshots)
        for (const auto& [source, share] : snapshot.shares())
            out += format_iso8601_utc(snapshot.at()) + "," + source + "," + format_double(share) +
                   "\n";
    return out;
}

std::string write_coefficients_csv(const SourceCoefficients& coeffs) {
    std::string out = "source,ci_g_per_kwh\n";
    for (const auto& [source, ci] : coeffs.by_source())
        out += source + "," + format_double(ci.g_per_kwh()) + "\n";
    return out;
}

std::string write_model_profiles_csv(std::span<const ModelProfile> profiles) {
    std::string out = "name,params_millions,size_mb,accuracy_pct,mean_inference_ms,energy_wh_per_5k\n";
    for (const auto& p : profiles)
        out += p.name + "," + format_double(p.params_millions) + "," + format_double(p.size_mb) +
               "," + format_double(p.accuracy_pct) + "," + format_double(p.mean_inference_ms) +
               "," + format_double(p.energy_wh_per_5k) + "\n";
    return out;
}

std::string write_power_model(const PowerModel& model) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["device_name"] = model.device_name();
    doc["idle_watts"] = model.idle_watts().watts();
    doc["max_watts"] = model.max_watts().watts();
    doc["facility_housed"] = model.facility_housed();
    doc["points"] = ordered_json::array();
    for (const auto& p : model.points()) {
        ordered_json point;
        point["utilization"] = p.utilization;
        point["watts"] = p.watts.watts();
        doc["points"].push_back(point);
    }
    return doc.dump(2) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot read file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

namespace {

void require_clean(const ParseReport& report, const std::filesystem::path& path) {
    if (report.clean())
        return;
    const auto& first = report.rejected.front();
    throw ParseError("'" + path.string() + "' line " + std::to_string(first.line) + ": " +
                     first.reason +
                     (report.rejected.size() > 1
                          ? " (+" + std::to_string(report.rejected.size() - 1) + " more)"
                          : ""));
}

} // namespace

CarbonIntensitySeries load_ci_csv(const std::filesystem::path& path, std::string region) {
    ParseReport report;
    auto series = parse_ci_csv(read_file(path), std::move(region), &report);
    require_clean(report, path);
    return series;
}

std::vector<EnergyMixSnapshot> load_mix_csv(const std::filesystem::path& path) {
    ParseReport report;
    auto snapshots = parse_mix_csv(read_file(path), &report);
    require_clean(report, path);
    return snapshots;
}

SourceCoefficients load_coefficients_csv(const std::filesystem::path& path) {
    ParseReport report;
    auto coeffs = parse_coefficients_csv(read_file(path), &report);
    require_clean(report, path);
    return coeffs;
}

std::vector<ModelProfile> load_model_profiles_csv(const std::filesystem::path& path) {
    ParseReport report;
    auto profiles = parse_model_profiles_csv(read_file(path), &report);
    require_clean(report, path);
    return profiles;
}

PowerModel load_power_model(const std::filesystem::path& path) {
    return parse_power_model(read_file(path));
}

Scenario load_scenario(const std::filesystem::path& path) {
    return parse_scenario(read_file(path), path.parent_path());
}

std::vector<ResourceConfig> load_resource_configs(const std::filesystem::path& path) {
    return parse_resource_configs(read_file(path), path.parent_path());
}

} // namespace carbonscope
