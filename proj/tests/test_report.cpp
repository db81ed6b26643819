#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "qfrac/report.hpp"

using namespace qfrac;
using nlohmann::json;

namespace {

ExperimentConfig sample_config() {
    ExperimentConfig c;
    c.predicate_text = "x*x mod 16 == 1";
    c.width = 4;
    c.plan.shots = 2000;
    c.seed = 42;
    c.verify = true;
    return c;
}

report::Timing sample_timing() { return {{"experiment_s", 0.015625}, {"total_s", 0.03125}}; }

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) cells.push_back(cell);
    return cells;
}

}  // namespace

TEST_CASE("run records carry the schema, echo and result") {
    const ExperimentConfig c = sample_config();
    const EstimateResult r = run_experiment(c);
    const json record = report::make_run_record(c, r, sample_timing());

    CHECK(record.at("schema_version") == "1");
    CHECK(record.at("command") == "run");
    CHECK(record.at("config").at("predicate") == "x*x mod 16 == 1");
    CHECK(record.at("config").at("qubits") == 4);
    CHECK(record.at("config").at("shots") == 2000);
    CHECK(record.at("config").at("seed") == 42);
    CHECK(record.at("config").at("alpha") == 0.05);
    CHECK(record.at("config").at("ci_method") == "wilson");
    CHECK(record.at("config").at("mode") == "statevector");
    CHECK(record.at("result").at("ones") == r.ones);
    CHECK(record.at("result").at("f_hat") == r.f_hat);
    CHECK(record.at("result").at("exact_f") == "1/4");
    CHECK(record.at("result").at("exact_f_value") == 0.25);
    CHECK(record.at("timing").at("total_s") == 0.03125);
}

TEST_CASE("JSON emission round-trips") {
    const ExperimentConfig c = sample_config();
    const EstimateResult r = run_experiment(c);
    for (const json& record :
         {report::make_run_record(c, r, sample_timing()),
          report::make_compare_record(c, compare_methods(c), sample_timing()),
          report::make_plan_record(plan_shots(0.1, 0.05), sample_timing())}) {
        const std::string text = report::to_json_text(record);
        CHECK(json::parse(text) == record);
    }
}

TEST_CASE("CSV and JSON serialise the same digits") {
    const ExperimentConfig c = sample_config();
    const EstimateResult r = run_experiment(c);
    const json record = report::make_run_record(c, r, sample_timing());
    const std::string csv = report::to_csv(record);

    std::istringstream is(csv);
    std::string header_line;
    std::string value_line;
    REQUIRE(std::getline(is, header_line));
    REQUIRE(std::getline(is, value_line));
    const auto headers = split_csv_line(header_line);
    const auto values = split_csv_line(value_line);
    REQUIRE(headers.size() == values.size());
    REQUIRE(headers.size() > 10);

    for (std::size_t i = 0; i < headers.size(); ++i) {
        json node = record;
        std::istringstream path(headers[i]);
        std::string key;
        while (std::getline(path, key, '.')) node = node.at(key);
        if (node.is_number()) {
            CHECK(values[i] == node.dump());  // bit-identical serialisation
        }
    }
}

TEST_CASE("sweep CSV has the documented columns") {
    SamplingPlan plan;
    plan.shots = 512;
    const std::vector<int> widths{2, 4};
    const auto rows = sweep_width("x < (1 << (k - 2))", widths, plan, 7,
                                  SamplingMode::kAnalytic);
    const json record =
        report::make_sweep_record("x < (1 << (k - 2))", widths, plan, 7,
                                  SamplingMode::kAnalytic, rows, sample_timing());
    const std::string csv = report::to_csv(record);
    std::istringstream is(csv);
    std::string header;
    REQUIRE(std::getline(is, header));
    CHECK(header == "qubits,f_hat,exact_f,abs_error,hoeffding_bound,wall_clock_s");
    std::string line;
    std::size_t count = 0;
    while (std::getline(is, line)) {
        if (!line.empty()) ++count;
        const auto cells = split_csv_line(line);
        CHECK(cells.size() == 6);
        CHECK(cells[2] == "1/4");
    }
    CHECK(count == rows.size());
    CHECK(json::parse(report::to_json_text(record)) == record);
}

TEST_CASE("count and plan text output") {
    const PredicateAst ast = parse_predicate("x*x mod 16 == 1", 4);
    const OracleTable table = build_oracle_table(ast, 4);
    const json count = report::make_count_record("x*x mod 16 == 1", 4, table, sample_timing());
    const std::string text = report::to_text(count);
    CHECK(text.find("S = 4") != std::string::npos);
    CHECK(text.find("2^k = 16") != std::string::npos);
    CHECK(text.find("f = 1/4") != std::string::npos);

    const json plan = report::make_plan_record(plan_shots(0.01, 0.05), sample_timing());
    const std::string plan_text = report::to_text(plan);
    CHECK(plan_text.find("P = 18445") != std::string::npos);
    CHECK(plan_text.find("Hoeffding") != std::string::npos);
}

TEST_CASE("estimate json hides the exact fraction unless verified") {
    ExperimentConfig c = sample_config();
    c.verify = false;
    const EstimateResult r = run_experiment(c);
    const json e = report::estimate_to_json(r);
    CHECK_FALSE(e.contains("exact_f"));
    CHECK_FALSE(e.contains("abs_error"));
}
