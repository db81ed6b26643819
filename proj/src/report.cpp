#include "qfrac/report.hpp"

#include <cmath>
#include <sstream>

namespace qfrac::report {

namespace {

using nlohmann::json;

json timing_to_json(const Timing& timing) {
    json t = json::object();
    for (const auto& [name, seconds] : timing) t[name] = seconds;
    return t;
}

json fraction_to_json(const Fraction& f) { return f.to_string(); }

json config_to_json(const ExperimentConfig& config) {
    json c = json::object();
    c["predicate"] = config.predicate_text;
    c["qubits"] = config.width;
    c["shots"] = config.plan.shots;
    if (config.plan.epsilon) c["epsilon"] = *config.plan.epsilon;
    if (config.plan.delta) c["delta"] = *config.plan.delta;
    c["seed"] = config.seed;
    c["alpha"] = config.alpha;
    c["ci_method"] = ci_method_name(config.ci_method);
    c["mode"] = sampling_mode_name(config.mode);
    c["verify"] = config.verify;
    return c;
}

json record_shell(const char* command, json config, const Timing& timing) {
    json r = json::object();
    r["schema_version"] = "1";
    r["command"] = command;
    r["config"] = std::move(config);
    r["timing"] = timing_to_json(timing);
    return r;
}

// One cell, serialised exactly as JSON would serialise the value, so CSV and
// JSON outputs of the same run carry identical digits.
std::string csv_cell(const json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void flatten(const json& node, const std::string& prefix, std::vector<std::string>& header,
             std::vector<std::string>& row) {
    if (node.is_object()) {
        for (const auto& [key, value] : node.items()) {
            flatten(value, prefix.empty() ? key : prefix + "." + key, header, row);
        }
    } else if (node.is_array()) {
        std::size_t i = 0;
        for (const auto& value : node) {
            flatten(value, prefix + "." + std::to_string(i++), header, row);
        }
    } else {
        header.push_back(prefix);
        row.push_back(csv_cell(node));
    }
}

std::string join(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

std::string sweep_csv(const json& record) {
    static const char* columns[] = {"qubits",    "f_hat",           "exact_f",
                                    "abs_error", "hoeffding_bound", "wall_clock_s"};
    std::string out;
    std::vector<std::string> cells;
    for (const char* c : columns) cells.emplace_back(c);
    out += join(cells);
    for (const json& row : record.at("rows")) {
        cells.clear();
        cells.push_back(csv_cell(row.at("qubits")));
        cells.push_back(csv_cell(row.at("estimate").at("f_hat")));
        cells.push_back(csv_cell(row.at("exact_f")));
        cells.push_back(csv_cell(row.at("abs_error")));
        cells.push_back(csv_cell(row.at("hoeffding_bound")));
        cells.push_back(csv_cell(row.at("wall_clock_s")));
        out += join(cells);
    }
    return out;
}

std::string num(const json& v) { return v.dump(); }

void describe_estimate(std::ostream& os, const json& e, const char* label) {
    os << label << ": f_hat = " << num(e.at("f_hat")) << "  (" << num(e.at("ones")) << "/"
       << num(e.at("shots")) << " ones)\n";
    os << "  " << e.at("ci_method").get<std::string>() << " CI at alpha "
       << num(e.at("alpha")) << ": [" << num(e.at("ci_low")) << ", " << num(e.at("ci_high"))
       << "]\n";
    if (e.contains("exact_f")) {
        os << "  exact f = " << e.at("exact_f").get<std::string>() << " = "
           << num(e.at("exact_f_value")) << ", |f_hat - f| = " << num(e.at("abs_error")) << "\n";
    }
}

void describe_timing(std::ostream& os, const json& record) {
    os << "timing:";
    for (const auto& [name, seconds] : record.at("timing").items()) {
        os << " " << name << "=" << num(seconds) << "s";
    }
    os << "\n";
}

}  // namespace

json estimate_to_json(const EstimateResult& r) {
    json e = json::object();
    e["ones"] = r.ones;
    e["shots"] = r.shots;
    e["f_hat"] = r.f_hat;
    e["ci_low"] = r.ci_low;
    e["ci_high"] = r.ci_high;
    e["ci_method"] = ci_method_name(r.ci_method);
    e["alpha"] = r.alpha;
    e["seed"] = r.seed;
    if (r.exact_f) {
        e["exact_f"] = fraction_to_json(*r.exact_f);
        e["exact_f_value"] = r.exact_f->value();
        e["abs_error"] = std::abs(r.f_hat - r.exact_f->value());
    }
    return e;
}

json make_run_record(const ExperimentConfig& config, const EstimateResult& result,
                     const Timing& timing) {
    json r = record_shell("run", config_to_json(config), timing);
    r["result"] = estimate_to_json(result);
    return r;
}

json make_count_record(const std::string& predicate, int width, const OracleTable& table,
                       const Timing& timing) {
    json c = json::object();
    c["predicate"] = predicate;
    c["qubits"] = width;
    json r = record_shell("count", std::move(c), timing);
    const Fraction f = exact_fraction(table);
    r["result"] = {{"solution_count", table.solution_count},
                   {"space_size", table.size()},
                   {"exact_f", fraction_to_json(f)},
                   {"exact_f_value", f.value()}};
    return r;
}

json make_plan_record(const SamplingPlan& plan, const Timing& timing) {
    json c = json::object();
    c["epsilon"] = *plan.epsilon;
    c["delta"] = *plan.delta;
    json r = record_shell("plan", std::move(c), timing);
    r["result"] = {{"shots", plan.shots}};
    return r;
}

json make_compare_record(const ExperimentConfig& config, const ComparisonReport& cmp,
                         const Timing& timing) {
    json r = record_shell("compare", config_to_json(config), timing);
    json result = json::object();
    result["quantum"] = estimate_to_json(cmp.quantum);
    result["classical"] = estimate_to_json(cmp.classical);
    result["abs_difference"] = cmp.abs_difference;
    result["ci_overlap"] = cmp.ci_overlap;
    if (cmp.exact_f) {
        result["exact_f"] = fraction_to_json(*cmp.exact_f);
        result["exact_f_value"] = cmp.exact_f->value();
    }
    r["result"] = std::move(result);
    return r;
}

json make_sweep_record(const std::string& family, std::span<const int> widths,
                       const SamplingPlan& plan, std::uint64_t seed, SamplingMode mode,
                       const std::vector<SweepRow>& rows, const Timing& timing) {
    json c = json::object();
    c["family"] = family;
    c["qubits_list"] = std::vector<int>(widths.begin(), widths.end());
    c["shots"] = plan.shots;
    c["seed"] = seed;
    c["mode"] = sampling_mode_name(mode);
    json r = record_shell("sweep", std::move(c), timing);
    json out_rows = json::array();
    for (const SweepRow& row : rows) {
        json jr = json::object();
        jr["qubits"] = row.width;
        jr["predicate"] = row.predicate;
        jr["estimate"] = estimate_to_json(row.estimate);
        jr["exact_f"] = fraction_to_json(row.exact_f);
        jr["exact_f_value"] = row.exact_f.value();
        jr["abs_error"] = row.abs_error;
        jr["hoeffding_bound"] = row.hoeffding_bound;
        jr["wall_clock_s"] = row.wall_clock_s;
        out_rows.push_back(std::move(jr));
    }
    r["rows"] = std::move(out_rows);
    return r;
}

std::string to_json_text(const json& record) { return record.dump(2) + "\n"; }

std::string to_csv(const json& record) {
    if (record.at("command") == "sweep") return sweep_csv(record);
    std::vector<std::string> header;
    std::vector<std::string> row;
    flatten(record, "", header, row);
    std::vector<std::string> quoted_header;
    quoted_header.reserve(header.size());
    for (const auto& h : header) quoted_header.push_back(csv_cell(json(h)));
    return join(quoted_header) + join(row);
}

std::string to_text(const json& record) {
    std::ostringstream os;
    const std::string command = record.at("command").get<std::string>();
    if (command == "count") {
        const json& res = record.at("result");
        os << "S = " << num(res.at("solution_count")) << "\n";
        os << "2^k = " << num(res.at("space_size")) << "\n";
        os << "f = " << res.at("exact_f").get<std::string>() << " = "
           << num(res.at("exact_f_value")) << "\n";
        return os.str();
    }
    if (command == "plan") {
        const json& cfg = record.at("config");
        os << "P = " << num(record.at("result").at("shots")) << "\n";
        os << "Pr[|f_hat - f| > " << num(cfg.at("epsilon")) << "] <= " << num(cfg.at("delta"))
           << " for any f and any register width (two-sided Hoeffding bound).\n";
        return os.str();
    }
    if (command == "run") {
        const json& cfg = record.at("config");
        os << "predicate: " << cfg.at("predicate").get<std::string>() << "   qubits: "
           << num(cfg.at("qubits")) << "   mode: " << cfg.at("mode").get<std::string>()
           << "   seed: " << num(cfg.at("seed")) << "\n";
        describe_estimate(os, record.at("result"), "estimate");
        describe_timing(os, record);
        return os.str();
    }
    if (command == "compare") {
        const json& cfg = record.at("config");
        const json& res = record.at("result");
        os << "predicate: " << cfg.at("predicate").get<std::string>() << "   qubits: "
           << num(cfg.at("qubits")) << "   mode: " << cfg.at("mode").get<std::string>()
           << "   seed: " << num(cfg.at("seed")) << "\n";
        describe_estimate(os, res.at("quantum"), "quantum sampler");
        describe_estimate(os, res.at("classical"), "classical baseline");
        os << "abs difference = " << num(res.at("abs_difference")) << ", CI overlap = "
           << (res.at("ci_overlap").get<bool>() ? "yes" : "no") << "\n";
        describe_timing(os, record);
        return os.str();
    }
    // sweep
    const json& cfg = record.at("config");
    os << "family: " << cfg.at("family").get<std::string>() << "   shots: "
       << num(cfg.at("shots")) << "   seed: " << num(cfg.at("seed")) << "   mode: "
       << cfg.at("mode").get<std::string>() << "\n";
    os << "qubits  f_hat       exact_f  abs_error    hoeffding_bound  wall_clock_s\n";
    for (const json& row : record.at("rows")) {
        os << num(row.at("qubits")) << "  " << num(row.at("estimate").at("f_hat")) << "  "
           << row.at("exact_f").get<std::string>() << "  " << num(row.at("abs_error")) << "  "
           << num(row.at("hoeffding_bound")) << "  " << num(row.at("wall_clock_s")) << "\n";
    }
    describe_timing(os, record);
    return os.str();
}

}  // namespace qfrac::report
