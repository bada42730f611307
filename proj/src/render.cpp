#include "carbonscope/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace carbonscope {

OutputFormat parse_output_format(const std::string& text) {
    if (text == "table")
        return OutputFormat::Table;
    if (text == "csv")
        return OutputFormat::Csv;
    if (text == "json")
        return OutputFormat::Json;
    throw ValidationError("unknown output format '" + text + "' (expected table, csv, or json)");
}

int parse_zone_offset_minutes(const std::string& text) {
    if (text == "UTC" || text == "utc" || text == "Z" || text == "z")
        return 0;
    if (text.size() == 6 && (text[0] == '+' || text[0] == '-') && text[3] == ':') {
        const auto digits = [&](std::size_t i) { return text[i] >= '0' && text[i] <= '9'; };
        if (digits(1) && digits(2) && digits(4) && digits(5)) {
            const int hours = (text[1] - '0') * 10 + (text[2] - '0');
            const int minutes = (text[4] - '0') * 10 + (text[5] - '0');
            if (hours <= 14 && minutes <= 59) {
                const int total = hours * 60 + minutes;
                return text[0] == '-' ? -total : total;
            }
        }
    }
    throw ValidationError("invalid timezone '" + text + "' (expected UTC or a +HH:MM offset)");
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
}

namespace {

// Minimal JSON writer with caller-controlled field order and %.6g numbers,
// so report output is byte-stable across runs.
class JsonWriter {
public:
    std::string str() const { return out_; }

    void begin_object() { open('{'); }
    void end_object() { close('}'); }
    void begin_array() { open('['); }
    void end_array() { close(']'); }

    void key(const std::string& name) {
        separate();
        string_literal(name);
        out_ += ':';
        just_keyed_ = true;
    }

    void value(const std::string& s) {
        separate();
        string_literal(s);
    }
    void value(const char* s) { value(std::string(s)); }
    void value(double v) {
        separate();
        out_ += format_number(v);
    }
    void value(std::int64_t v) {
        separate();
        out_ += std::to_string(v);
    }
    void value(bool v) {
        separate();
        out_ += v ? "true" : "false";
    }

private:
    void open(char c) {
        separate();
        out_ += c;
        needs_comma_ = false;
    }
    void close(char c) {
        out_ += c;
        needs_comma_ = true;
    }
    void separate() {
        if (just_keyed_) {
            just_keyed_ = false;
            return;
        }
        if (needs_comma_)
            out_ += ',';
        needs_comma_ = true;
    }
    void string_literal(const std::string& s) {
        out_ += '"';
        for (const char c : s) {
            switch (c) {
            case '"': out_ += "\\\""; break;
            case '\\': out_ += "\\\\"; break;
            case '\n': out_ += "\\n"; break;
            case '\r': out_ += "\\r"; break;
            case '\t': out_ += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out_ += buf;
                } else {
                    out_ += c;
                }
            }
        }
        out_ += '"';
    }

    std::string out_;
    bool needs_comma_ = false;
    bool just_keyed_ = true;
};

std::string show_time(const TimeStamp& t, const RenderOptions& opts) {
    return format_iso8601_offset(t, opts.display_offset_minutes);
}

// Left-aligned plain-text table.
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        if (widths.size() < row.size())
            widths.resize(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i)
            widths[i] = std::max(widths[i], row[i].size());
    }
    std::string out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += row[i];
            if (i + 1 < row.size())
                out += std::string(widths[i] - row[i].size() + 2, ' ');
        }
        out += '\n';
    }
    return out;
}

std::string csv_join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        out += fields[i];
        if (i + 1 < fields.size())
            out += ',';
    }
    out += '\n';
    return out;
}

} // namespace

std::string render_estimate(const ScenarioReport& report, const std::string& scenario_name,
                            const RenderOptions& opts) {
    switch (opts.format) {
    case OutputFormat::Json: {
        JsonWriter w;
        w.begin_object();
        w.key("scenario");
        w.value(scenario_name);
        w.key("total_energy_j");
        w.value(report.total_energy.joules());
        w.key("total_energy_kwh");
        w.value(report.total_energy.kilowatt_hours());
        w.key("total_emissions_g");
        w.value(report.total_emissions.grams());
        w.key("tasks");
        w.begin_array();
        for (const auto& task : report.breakdown) {
            w.begin_object();
            w.key("id");
            w.value(task.task_id);
            w.key("start");
            w.value(format_iso8601_utc(task.interval.start()));
            w.key("end");
            w.value(format_iso8601_utc(task.interval.end()));
            w.key("duration_s");
            w.value(task.interval.duration_s());
            w.key("energy_j");
            w.value(task.energy.joules());
            w.key("energy_wh");
            w.value(task.energy.watt_hours());
            w.key("emissions_g");
            w.value(task.emissions.grams());
            w.end_object();
        }
        w.end_array();
        w.key("disclaimer");
        w.value(report.disclaimer);
        w.end_object();
        return w.str() + "\n";
    }
    case OutputFormat::Csv: {
        std::string out = "task,start,end,duration_s,energy_j,energy_wh,emissions_g\n";
        for (const auto& task : report.breakdown)
            out += csv_join({task.task_id, format_iso8601_utc(task.interval.start()),
                             format_iso8601_utc(task.interval.end()),
                             format_number(task.interval.duration_s()),
                             format_number(task.energy.joules()),
                             format_number(task.energy.watt_hours()),
                             format_number(task.emissions.grams())});
        return out;
    }
    case OutputFormat::Table: {
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"Task", "Start", "End", "Energy (Wh)", "Emissions (g)"});
        for (const auto& task : report.breakdown)
            rows.push_back({task.task_id, show_time(task.interval.start(), opts),
                            show_time(task.interval.end(), opts),
                            format_number(task.energy.watt_hours()),
                            format_number(task.emissions.grams())});
        std::string out = "Scenario: " + scenario_name + "\n" + render_table(rows);
        out += "\nTotal energy:    " + format_number(report.total_energy.kilowatt_hours()) +
               " kWh (" + format_number(report.total_energy.joules()) + " J)\n";
        out += "Total emissions: " + format_number(report.total_emissions.grams()) + " gCO2eq\n";
        out += "Note: " + report.disclaimer + "\n";
        return out;
    }
    }
    throw ValidationError("unhandled output format");
}

std::string render_time_sweep(const SweepResult& result, double step_s, const RenderOptions& opts) {
    switch (opts.format) {
    case OutputFormat::Json: {
        JsonWriter w;
        w.begin_object();
        w.key("step_s");
        w.value(step_s);
        w.key("candidates");
        w.begin_array();
        for (std::size_t i = 0; i < result.candidates.size(); ++i) {
            const auto& c = result.candidates[i];
            w.begin_object();
            w.key("start");
            w.value(c.label);
            w.key("total_energy_kwh");
            w.value(c.report.total_energy.kilowatt_hours());
            w.key("total_emissions_g");
            w.value(c.report.total_emissions.grams());
            w.key("best");
            w.value(i == result.best_index);
            w.end_object();
        }
        w.end_array();
        w.key("best_start");
        w.value(result.best().label);
        w.key("disclaimer");
        w.value(kCiLimitationDisclaimer);
        w.end_object();
        return w.str() + "\n";
    }
    case OutputFormat::Csv: {
        std::string out = "start,total_energy_kwh,total_emissions_g,best\n";
        for (std::size_t i = 0; i < result.candidates.size(); ++i) {
            const auto& c = result.candidates[i];
            out += csv_join({c.label, format_number(c.report.total_energy.kilowatt_hours()),
                             format_number(c.report.total_emissions.grams()),
                             i == result.best_index ? "true" : "false"});
        }
        return out;
    }
    case OutputFormat::Table: {
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"Start", "Energy (kWh)", "Emissions (g)", ""});
        for (std::size_t i = 0; i < result.candidates.size(); ++i) {
            const auto& c = result.candidates[i];
            rows.push_back({c.label, format_number(c.report.total_energy.kilowatt_hours()),
                            format_number(c.report.total_emissions.grams()),
                            i == result.best_index ? "<- best" : ""});
        }
        std::string out = render_table(rows);
        out += "\nBest start: " + result.best().label + "\n";
        out += "Note: " + std::string(kCiLimitationDisclaimer) + "\n";
        return out;
    }
    }
    throw ValidationError("unhandled output format");
}

std::string render_location_comparison(const SweepResult& result, const RenderOptions& opts) {
    // Reductions are quoted against the worst (highest-emissions) candidate.
    std::size_t worst = 0;
    for (std::size_t i = 1; i < result.candidates.size(); ++i)
        if (result.candidates[i].report.total_emissions >
            result.candidates[worst].report.total_emissions)
            worst = i;
    const CarbonMass worst_mass = result.candidates[worst].report.total_emissions;

    const auto reduction = [&](std::size_t i) -> double {
        if (worst_mass.grams() <= 0.0)
            return 0.0;
        return relative_reduction_pct(worst_mass, result.candidates[i].report.total_emissions);
    };

    switch (opts.format) {
    case OutputFormat::Json: {
        JsonWriter w;
        w.begin_object();
        w.key("candidates");
        w.begin_array();
        for (std::size_t i = 0; i < result.candidates.size(); ++i) {
            const auto& c = result.candidates[i];
            w.begin_object();
            w.key("region");
            w.value(c.label);
            w.key("total_energy_kwh");
            w.value(c.report.total_energy.kilowatt_hours());
            w.key("total_emissions_g");
            w.value(c.report.total_emissions.grams());
            w.key("reduction_vs_worst_pct");
            w.value(reduction(i));
            w.key("best");
            w.value(i == result.best_index);
            w.end_object();
        }
        w.end_array();
        w.key("best_region");
        w.value(result.best().label);
        w.key("disclaimer");
        w.value(kCiLimitationDisclaimer);
        w.end_object();
        return w.str() + "\n";
    }
    case OutputFormat::Csv: {
        std::string out = "region,total_energy_kwh,total_emissions_g,reduction_vs_worst_pct,best\n";
        for (std::size_t i = 0; i < result.candidates.size(); ++i) {
            const auto& c = result.candidates[i];
            out += csv_join({c.label, format_number(c.report.total_energy.kilowatt_hours()),
                             format_number(c.report.total_emissions.grams()),
                             format_number(reduction(i)),
                             i == result.best_index ? "true" : "false"});
        }
        return out;
    }
    case OutputFormat::Table: {
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"Region", "Energy (kWh)", "Emissions (g)", "Reduction vs worst", ""});
        for (std::size_t i = 0; i < result.candidates.size(); ++i) {
            const auto& c = result.candidates[i];
            rows.push_back({c.label, format_number(c.report.total_energy.kilowatt_hours()),
                            format_number(c.report.total_emissions.grams()),
                            format_number(reduction(i)) + "%",
                            i == result.best_index ? "<- best" : ""});
        }
        std::string out = render_table(rows);
        out += "\nBest region: " + result.best().label + "\n";
        out += "Note: " + std::string(kCiLimitationDisclaimer) + "\n";
        return out;
    }
    }
    throw ValidationError("unhandled output format");
}

std::string render_model_comparison(const ModelComparisonView& view, const RenderOptions& opts) {
    const auto dominated_flag = [&](std::size_t i) {
        return view.dominated ? (*view.dominated)[i] : false;
    };

    switch (opts.format) {
    case OutputFormat::Json: {
        JsonWriter w;
        w.begin_object();
        w.key("items");
        w.value(static_cast<std::int64_t>(view.item_count));
        w.key("grid");
        w.value(view.grid_region);
        w.key("at");
        w.value(format_iso8601_utc(view.at));
        w.key("rows");
        w.begin_array();
        for (std::size_t i = 0; i < view.rows.size(); ++i) {
            const auto& row = view.rows[i];
            w.begin_object();
            w.key("model");
            w.value(row.model);
            w.key("accuracy_pct");
            w.value(row.accuracy_pct);
            w.key("duration_s");
            w.value(row.duration_s);
            w.key("energy_wh");
            w.value(row.energy.watt_hours());
            w.key("emissions_g");
            w.value(row.emissions.grams());
            if (view.dominated) {
                w.key("dominated");
                w.value(dominated_flag(i));
            }
            w.end_object();
        }
        w.end_array();
        w.key("disclaimer");
        w.value(kCiLimitationDisclaimer);
        w.end_object();
        return w.str() + "\n";
    }
    case OutputFormat::Csv: {
        std::string out = "model,accuracy_pct,duration_s,energy_wh,emissions_g";
        if (view.dominated)
            out += ",dominated";
        out += "\n";
        for (std::size_t i = 0; i < view.rows.size(); ++i) {
            const auto& row = view.rows[i];
            std::vector<std::string> fields{row.model, format_number(row.accuracy_pct),
                                            format_number(row.duration_s),
                                            format_number(row.energy.watt_hours()),
                                            format_number(row.emissions.grams())};
            if (view.dominated)
                fields.push_back(dominated_flag(i) ? "true" : "false");
            out += csv_join(fields);
        }
        return out;
    }
    case OutputFormat::Table: {
        std::vector<std::vector<std::string>> rows;
        std::vector<std::string> header{"Model", "Accuracy (%)", "Duration (s)", "Energy (Wh)",
                                        "Emissions (g)"};
        if (view.dominated)
            header.push_back("");
        rows.push_back(header);
        for (std::size_t i = 0; i < view.rows.size(); ++i) {
            const auto& row = view.rows[i];
            std::vector<std::string> fields{row.model, format_number(row.accuracy_pct),
                                            format_number(row.duration_s),
                                            format_number(row.energy.watt_hours()),
                                            format_number(row.emissions.grams())};
            if (view.dominated)
                fields.push_back(dominated_flag(i) ? "dominated" : "pareto");
            rows.push_back(fields);
        }
        std::string out = render_table(rows);
        out += "\nNote: " + std::string(kCiLimitationDisclaimer) + "\n";
        return out;
    }
    }
    throw ValidationError("unhandled output format");
}

std::string render_resource_sweep(std::span<const ResourceRow> rows, std::int64_t item_count,
                                  const RenderOptions& opts) {
    switch (opts.format) {
    case OutputFormat::Json: {
        JsonWriter w;
        w.begin_object();
        w.key("items");
        w.value(item_count);
        w.key("rows");
        w.begin_array();
        for (const auto& row : rows) {
            w.begin_object();
            w.key("label");
            w.value(row.label);
            w.key("duration_s");
            w.value(row.duration_s);
            w.key("mean_power_w");
            w.value(row.mean_power.watts());
            w.key("energy_j");
            w.value(row.energy.joules());
            w.key("energy_wh");
            w.value(row.energy.watt_hours());
            w.end_object();
        }
        w.end_array();
        w.end_object();
        return w.str() + "\n";
    }
    case OutputFormat::Csv: {
        std::string out = "label,duration_s,mean_power_w,energy_j,energy_wh\n";
        for (const auto& row : rows)
            out += csv_join({row.label, format_number(row.duration_s),
                             format_number(row.mean_power.watts()),
                             format_number(row.energy.joules()),
                             format_number(row.energy.watt_hours())});
        return out;
    }
    case OutputFormat::Table: {
        std::vector<std::vector<std::string>> table;
        table.push_back({"Config", "Duration (s)", "Mean power (W)", "Energy (J)"});
        for (const auto& row : rows)
            table.push_back({row.label, format_number(row.duration_s),
                             format_number(row.mean_power.watts()),
                             format_number(row.energy.joules())});
        return render_table(table);
    }
    }
    throw ValidationError("unhandled output format");
}

} // namespace carbonscope
