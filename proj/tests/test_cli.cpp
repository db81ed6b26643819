#include <doctest.h>

#include <cstdio>
#include <string>

#include <json.hpp>

#include "cli_driver.hpp"

using nlohmann::json;
using qfrac::testcli::run_cli;

TEST_CASE("run: success with JSON report") {
    const auto res = run_cli(
        "run --predicate \"x*x mod 16 == 1\" --qubits 4 --shots 10000 --seed 42 --verify "
        "--format json");
    REQUIRE(res.code == 0);
    const json record = json::parse(res.out);
    CHECK(record.at("schema_version") == "1");
    CHECK(record.at("result").at("exact_f") == "1/4");
    const double f_hat = record.at("result").at("f_hat").get<double>();
    CHECK(f_hat >= 0.22);
    CHECK(f_hat <= 0.28);
}

TEST_CASE("run: trivial predicate gives f_hat 1") {
    const auto res = run_cli("run --predicate \"0 == 0\" --qubits 3 --shots 16 --format json");
    REQUIRE(res.code == 0);
    const json record = json::parse(res.out);
    CHECK(record.at("result").at("f_hat") == 1.0);
    CHECK(record.at("result").at("ones") == 16);
}

TEST_CASE("run: exit code 2 on usage and parse problems") {
    CHECK(run_cli("run --predicate \"x ==\" --qubits 4 --shots 1").code == 2);
    CHECK(run_cli("run --predicate \"0 == 0\" --qubits 4").code == 2);  // no plan
    CHECK(run_cli("run --predicate \"0 == 0\" --qubits 99 --shots 1").code == 2);
    CHECK(run_cli("run --predicate \"0 == 0\" --qubits 4 --shots 10 --epsilon 0.1 --delta 0.1")
              .code == 2);
    CHECK(run_cli("run --predicate \"0 == 0\" --qubits 4 --epsilon 0.1").code == 2);
    CHECK(run_cli("run --predicate \"0 == 0\" --qubits 4 --shots 1 --seed lucky").code == 2);
    CHECK(run_cli("run --predicate \"0 == 0\" --qubits 4 --shots 1 --format yaml").code == 2);
    CHECK(run_cli("run --predicate \"0 == 0\" --qubits 4 --shots 1 --alpha 1.5").code == 2);
    CHECK(run_cli("bogus-command").code == 2);
    CHECK(run_cli("run --predicate \"(x + 1) && (x < 2)\" --qubits 4 --shots 1").code == 2);
}

TEST_CASE("run: exit code 1 on runtime failure") {
    // a bit per shot: this allocation cannot succeed
    const auto res =
        run_cli("run --predicate \"0 == 0\" --qubits 2 --shots 4000000000000000000");
    CHECK(res.code == 1);
}

TEST_CASE("run: clopper-pearson interval selection") {
    const auto res = run_cli(
        "run --predicate \"0 == 0\" --qubits 2 --shots 50 --ci clopper-pearson --format json");
    REQUIRE(res.code == 0);
    const json record = json::parse(res.out);
    CHECK(record.at("config").at("ci_method") == "clopper-pearson");
    CHECK(record.at("result").at("ci_method") == "clopper-pearson");
    CHECK(record.at("result").at("ci_high") == 1.0);
    CHECK(run_cli("run --predicate \"0 == 0\" --qubits 2 --shots 5 --ci agresti").code == 2);
}

TEST_CASE("run: epsilon/delta plan is echoed") {
    const auto res = run_cli(
        "run --predicate \"x < 4\" --qubits 4 --epsilon 0.1 --delta 0.05 --mode analytic "
        "--format json");
    REQUIRE(res.code == 0);
    const json record = json::parse(res.out);
    CHECK(record.at("config").at("shots") == 185);
    CHECK(record.at("config").at("epsilon") == 0.1);
    CHECK(record.at("config").at("delta") == 0.05);
}

TEST_CASE("count: exact fraction on stdout") {
    const auto res = run_cli("count --predicate \"x*x mod 16 == 1\" --qubits 4");
    REQUIRE(res.code == 0);
    CHECK(res.out.find("S = 4") != std::string::npos);
    CHECK(res.out.find("f = 1/4") != std::string::npos);

    const auto none = run_cli("count --predicate \"0 == 1\" --qubits 10 --format json");
    REQUIRE(none.code == 0);
    CHECK(json::parse(none.out).at("result").at("solution_count") == 0);

    const auto half = run_cli("count --predicate \"x < 512\" --qubits 10 --format json");
    REQUIRE(half.code == 0);
    const json record = json::parse(half.out);
    CHECK(record.at("result").at("solution_count") == 512);
    CHECK(record.at("result").at("exact_f") == "1/2");

    CHECK(run_cli("count --predicate \"x +\" --qubits 4").code == 2);
}

TEST_CASE("plan: prints the Hoeffding shot count") {
    const auto res = run_cli("plan --epsilon 0.01 --delta 0.05 --format json");
    REQUIRE(res.code == 0);
    CHECK(json::parse(res.out).at("result").at("shots") == 18445);

    CHECK(run_cli("plan --epsilon 0.1 --delta 0.05").out.find("P = 185") == 0);
    CHECK(run_cli("plan --epsilon 0.999 --delta 0.999").out.find("P = 1\n") == 0);
    CHECK(run_cli("plan --epsilon 0 --delta 0.5").code == 2);
    CHECK(run_cli("plan --epsilon 1.5 --delta 0.5").code == 2);
}

TEST_CASE("compare: clustered predicate") {
    const auto res = run_cli(
        "compare --predicate \"x < 4\" --qubits 4 --shots 10000 --seed 3 --verify --format json");
    REQUIRE(res.code == 0);
    const json record = json::parse(res.out);
    const double q = record.at("result").at("quantum").at("f_hat").get<double>();
    const double c = record.at("result").at("classical").at("f_hat").get<double>();
    CHECK(std::abs(q - 0.25) <= 0.03);
    CHECK(std::abs(c - 0.25) <= 0.03);
    CHECK(record.at("result").at("ci_overlap") == true);

    const auto trivial =
        run_cli("compare --predicate \"0 == 0\" --qubits 4 --shots 100 --format json");
    REQUIRE(trivial.code == 0);
    CHECK(json::parse(trivial.out).at("result").at("abs_difference") == 0.0);

    CHECK(run_cli("compare --predicate \"x ==\" --qubits 4 --shots 1").code == 2);
}

TEST_CASE("sweep: constant bound column and CSV") {
    const auto res = run_cli(
        "sweep --fraction-family \"x < (1 << (k - 2))\" --qubits-list 2,4,6 --shots 1024 "
        "--seed 5 --mode analytic --format csv");
    REQUIRE(res.code == 0);
    std::istringstream is(res.out);
    std::string header;
    REQUIRE(std::getline(is, header));
    CHECK(header == "qubits,f_hat,exact_f,abs_error,hoeffding_bound,wall_clock_s");
    std::string first_bound;
    std::string line;
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        ++rows;
        std::istringstream cells(line);
        std::string cell;
        for (int i = 0; i <= 4; ++i) std::getline(cells, cell, ',');
        if (first_bound.empty()) {
            first_bound = cell;
        } else {
            CHECK(cell == first_bound);
        }
    }
    CHECK(rows == 3);

    CHECK(run_cli("sweep --fraction-family \"x <\" --qubits-list 4 --shots 8").code == 2);
    CHECK(run_cli("sweep --fraction-family \"x < 1\" --shots 8").code == 2);  // no widths
    CHECK(run_cli("sweep --fraction-family \"x < 1\" --qubits-list \"\" --shots 8").code == 2);
}

TEST_CASE("identical flags and seed give byte-identical JSON minus timing") {
    const std::string flags =
        "run --predicate \"x*x mod 16 == 1\" --qubits 4 --shots 4000 --seed 31 --verify "
        "--format json";
    auto a = run_cli(flags, "QFRAC_THREADS=1");
    auto b = run_cli(flags, "QFRAC_THREADS=7");
    auto c = run_cli(flags);
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    REQUIRE(c.code == 0);
    json ja = json::parse(a.out);
    json jb = json::parse(b.out);
    json jc = json::parse(c.out);
    ja.erase("timing");
    jb.erase("timing");
    jc.erase("timing");
    CHECK(ja.dump() == jb.dump());
    CHECK(ja.dump() == jc.dump());
}
