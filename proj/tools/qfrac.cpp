#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "qfrac/experiment.hpp"
#include "qfrac/predicate.hpp"
#include "qfrac/report.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t parse_seed(const std::string& text) {
    if (text == "random") {
        std::random_device rd;
        return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    std::size_t used = 0;
    std::uint64_t value = 0;
    try {
        value = std::stoull(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("seed must be an unsigned 64-bit integer or 'random'");
    }
    if (used != text.size() || text[0] == '-') {
        throw std::invalid_argument("seed must be an unsigned 64-bit integer or 'random'");
    }
    return value;
}

enum class Format { kText, kJson, kCsv };

Format parse_format(const std::string& name) {
    if (name == "text") return Format::kText;
    if (name == "json") return Format::kJson;
    if (name == "csv") return Format::kCsv;
    throw std::invalid_argument("unknown format '" + name + "' (expected json, csv or text)");
}

void emit(const nlohmann::json& record, Format format) {
    switch (format) {
        case Format::kJson: std::cout << qfrac::report::to_json_text(record); break;
        case Format::kCsv: std::cout << qfrac::report::to_csv(record); break;
        case Format::kText: std::cout << qfrac::report::to_text(record); break;
    }
}

// Flags shared by `run` and `compare`.
struct RunFlags {
    std::string predicate;
    int qubits = 0;
    std::uint64_t shots = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    std::string seed = "0";
    double alpha = 0.05;
    std::string ci = "wilson";
    std::string mode = "statevector";
    bool verify = false;
    std::string format = "text";

    CLI::Option* shots_opt = nullptr;
    CLI::Option* epsilon_opt = nullptr;
    CLI::Option* delta_opt = nullptr;
};

void add_run_flags(CLI::App& cmd, RunFlags& f) {
    cmd.add_option("--predicate", f.predicate, "Condition on x in the predicate DSL")->required();
    cmd.add_option("--qubits", f.qubits, "Input register width k")
        ->required()
        ->check(CLI::Range(qfrac::kMinWidth, qfrac::kMaxWidth));
    f.shots_opt = cmd.add_option("--shots", f.shots, "Number of measurement shots P");
    f.epsilon_opt = cmd.add_option("--epsilon", f.epsilon, "Target accuracy (with --delta)");
    f.delta_opt = cmd.add_option("--delta", f.delta, "Failure probability (with --epsilon)");
    f.shots_opt->excludes(f.epsilon_opt)->excludes(f.delta_opt);
    f.epsilon_opt->needs(f.delta_opt);
    f.delta_opt->needs(f.epsilon_opt);
    cmd.add_option("--seed", f.seed, "RNG seed (u64) or 'random'")->capture_default_str();
    cmd.add_option("--alpha", f.alpha, "Confidence interval level")->capture_default_str();
    cmd.add_option("--ci", f.ci, "Interval method: wilson | clopper-pearson")->capture_default_str();
    cmd.add_option("--mode", f.mode, "Sampling mode: statevector | analytic")->capture_default_str();
    cmd.add_flag("--verify", f.verify, "Attach the exact brute-force fraction");
    cmd.add_option("--format", f.format, "Output format: json | csv | text")->capture_default_str();
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("--alpha must lie in (0, 1)");
    }
}

qfrac::ExperimentConfig config_from_flags(const RunFlags& f) {
    check_alpha(f.alpha);
    qfrac::ExperimentConfig config;
    config.predicate_text = f.predicate;
    config.width = f.qubits;
    if (f.shots_opt->count() > 0) {
        if (f.shots == 0) throw std::invalid_argument("--shots must be positive");
        config.plan.shots = f.shots;
    } else if (f.epsilon_opt->count() > 0) {
        config.plan = qfrac::plan_shots(f.epsilon, f.delta);
    } else {
        throw std::invalid_argument("either --shots or --epsilon/--delta is required");
    }
    config.seed = parse_seed(f.seed);
    config.alpha = f.alpha;
    config.ci_method = qfrac::ci_method_from_name(f.ci);
    config.mode = qfrac::sampling_mode_from_name(f.mode);
    config.verify = f.verify;
    return config;
}

int cmd_run(const RunFlags& f) {
    const auto t0 = Clock::now();
    const qfrac::ExperimentConfig config = config_from_flags(f);
    const auto t1 = Clock::now();
    const qfrac::EstimateResult result = qfrac::run_experiment(config);
    const double experiment_s = seconds_since(t1);
    const qfrac::report::Timing timing{{"experiment_s", experiment_s},
                                       {"total_s", seconds_since(t0)}};
    emit(qfrac::report::make_run_record(config, result, timing), parse_format(f.format));
    return 0;
}

int cmd_compare(const RunFlags& f) {
    const auto t0 = Clock::now();
    const qfrac::ExperimentConfig config = config_from_flags(f);
    const auto t1 = Clock::now();
    const qfrac::ComparisonReport cmp = qfrac::compare_methods(config);
    const double compare_s = seconds_since(t1);
    const qfrac::report::Timing timing{{"compare_s", compare_s}, {"total_s", seconds_since(t0)}};
    emit(qfrac::report::make_compare_record(config, cmp, timing), parse_format(f.format));
    return 0;
}

struct CountFlags {
    std::string predicate;
    int qubits = 0;
    std::string format = "text";
};

int cmd_count(const CountFlags& f) {
    const auto t0 = Clock::now();
    const qfrac::PredicateAst ast = qfrac::parse_predicate(f.predicate, f.qubits);
    const qfrac::OracleTable table = qfrac::build_oracle_table(ast, f.qubits);
    const qfrac::report::Timing timing{{"table_s", seconds_since(t0)},
                                       {"total_s", seconds_since(t0)}};
    emit(qfrac::report::make_count_record(f.predicate, f.qubits, table, timing),
         parse_format(f.format));
    return 0;
}

struct PlanFlags {
    double epsilon = 0.0;
    double delta = 0.0;
    std::string format = "text";
};

int cmd_plan(const PlanFlags& f) {
    const auto t0 = Clock::now();
    const qfrac::SamplingPlan plan = qfrac::plan_shots(f.epsilon, f.delta);
    const qfrac::report::Timing timing{{"total_s", seconds_since(t0)}};
    emit(qfrac::report::make_plan_record(plan, timing), parse_format(f.format));
    return 0;
}

struct SweepFlags {
    std::string family;
    std::vector<int> qubits_list;
    std::uint64_t shots = 0;
    std::string seed = "0";
    double alpha = 0.05;
    std::string ci = "wilson";
    std::string mode = "statevector";
    std::string format = "text";
};

int cmd_sweep(const SweepFlags& f) {
    const auto t0 = Clock::now();
    check_alpha(f.alpha);
    if (f.shots == 0) throw std::invalid_argument("--shots must be positive");
    qfrac::SamplingPlan plan;
    plan.shots = f.shots;
    const std::uint64_t seed = parse_seed(f.seed);
    const qfrac::SamplingMode mode = qfrac::sampling_mode_from_name(f.mode);
    const std::vector<qfrac::SweepRow> rows =
        qfrac::sweep_width(f.family, f.qubits_list, plan, seed, mode, f.alpha,
                           qfrac::ci_method_from_name(f.ci));
    const qfrac::report::Timing timing{{"total_s", seconds_since(t0)}};
    emit(qfrac::report::make_sweep_record(f.family, f.qubits_list, plan, seed, mode, rows, timing),
         parse_format(f.format));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Estimate the fraction of k-bit inputs satisfying a condition by\n"
                 "simulated quantum sampling, with exact and classical baselines."};
    app.require_subcommand(1);

    RunFlags run_flags;
    CLI::App* run = app.add_subcommand("run", "Run the quantum sampling experiment");
    add_run_flags(*run, run_flags);

    RunFlags compare_flags;
    CLI::App* compare =
        app.add_subcommand("compare", "Run the quantum sampler against the classical baseline");
    add_run_flags(*compare, compare_flags);

    CountFlags count_flags;
    CLI::App* count = app.add_subcommand("count", "Exact solution count by brute force");
    count->add_option("--predicate", count_flags.predicate, "Condition on x")->required();
    count->add_option("--qubits", count_flags.qubits, "Input register width k")
        ->required()
        ->check(CLI::Range(qfrac::kMinWidth, qfrac::kMaxWidth));
    count->add_option("--format", count_flags.format, "Output format: json | csv | text")->capture_default_str();

    PlanFlags plan_flags;
    CLI::App* plan = app.add_subcommand("plan", "Shot count for a target accuracy");
    plan->add_option("--epsilon", plan_flags.epsilon, "Target accuracy")->required();
    plan->add_option("--delta", plan_flags.delta, "Failure probability")->required();
    plan->add_option("--format", plan_flags.format, "Output format: json | csv | text")->capture_default_str();

    SweepFlags sweep_flags;
    CLI::App* sweep = app.add_subcommand("sweep", "Fixed-accuracy run across register widths");
    sweep->add_option("--fraction-family", sweep_flags.family,
                      "Predicate template; the word k stands for the width")
        ->required();
    sweep->add_option("--qubits-list", sweep_flags.qubits_list, "Widths to sweep, e.g. 4,8,12,16")
        ->required()
        ->delimiter(',')
        ->check(CLI::Range(qfrac::kMinWidth, qfrac::kMaxWidth));
    sweep->add_option("--shots", sweep_flags.shots, "Shots per width")->required();
    sweep->add_option("--seed", sweep_flags.seed, "RNG seed (u64) or 'random'")->capture_default_str();
    sweep->add_option("--alpha", sweep_flags.alpha, "Confidence interval level")->capture_default_str();
    sweep->add_option("--ci", sweep_flags.ci, "Interval method: wilson | clopper-pearson")->capture_default_str();
    sweep->add_option("--mode", sweep_flags.mode, "Sampling mode: statevector | analytic")->capture_default_str();
    sweep->add_option("--format", sweep_flags.format, "Output format: json | csv | text")->capture_default_str();

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(run_flags);
        if (compare->parsed()) return cmd_compare(compare_flags);
        if (count->parsed()) return cmd_count(count_flags);
        if (plan->parsed()) return cmd_plan(plan_flags);
        if (sweep->parsed()) return cmd_sweep(sweep_flags);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const qfrac::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 1;
    }
}
