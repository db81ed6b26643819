#include "qfrac/experiment.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <utility>

#include "qfrac/rng.hpp"
#include "qfrac/simulator.hpp"

namespace qfrac {

namespace {

constexpr std::uint64_t kQuantumTag = 0x71;    // 'q'
constexpr std::uint64_t kClassicalTag = 0x63;  // 'c'

void check_plan(const SamplingPlan& plan) {
    if (plan.shots == 0) throw std::invalid_argument("shot count must be positive");
}

// Fills bits[first..last) of a run; pure function of (seed, index).
template <typename ShotFn>
void fill_range(std::vector<std::uint8_t>& bits, std::uint64_t first, std::uint64_t last,
                std::uint64_t seed, const ShotFn& shot) {
    for (std::uint64_t i = first; i < last; ++i) {
        bits[i] = shot(rng::shot_value(seed, i));
    }
}

template <typename ShotFn>
std::vector<std::uint8_t> run_shots(std::uint64_t shots, std::uint64_t seed, const ShotFn& shot) {
    std::vector<std::uint8_t> bits(shots);
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), shots));
    if (workers <= 1) {
        fill_range(bits, 0, shots, seed, shot);
        return bits;
    }
    const std::uint64_t chunk = (shots + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t first = w * chunk;
        const std::uint64_t last = std::min<std::uint64_t>(first + chunk, shots);
        if (first >= last) break;
        pool.emplace_back(
            [&bits, first, last, seed, &shot] { fill_range(bits, first, last, seed, shot); });
    }
    for (auto& t : pool) t.join();
    return bits;
}

struct CompiledPredicate {
    PredicateAst ast;
    OracleTable table;
};

CompiledPredicate compile(const std::string& text, int width) {
    CompiledPredicate c;
    c.ast = parse_predicate(text, width);
    c.table = build_oracle_table(c.ast, width);
    return c;
}

EstimateResult finish(const ExperimentConfig& config, const OracleTable& table,
                      std::span<const std::uint8_t> bits) {
    std::optional<Fraction> exact;
    if (config.verify) exact = exact_fraction(table);
    return aggregate(bits, config.alpha, config.ci_method, config.seed, exact);
}

}  // namespace

const char* sampling_mode_name(SamplingMode m) {
    return m == SamplingMode::kStatevector ? "statevector" : "analytic";
}

SamplingMode sampling_mode_from_name(std::string_view name) {
    if (name == "statevector") return SamplingMode::kStatevector;
    if (name == "analytic") return SamplingMode::kAnalytic;
    throw std::invalid_argument("unknown sampling mode '" + std::string(name) +
                                "' (expected statevector or analytic)");
}

unsigned worker_count() {
    if (const char* env = std::getenv("QFRAC_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

EstimateResult run_experiment(const ExperimentConfig& config) {
    check_plan(config.plan);
    const CompiledPredicate c = compile(config.predicate_text, config.width);
    std::vector<std::uint8_t> bits;
    if (config.mode == SamplingMode::kAnalytic) {
        const double p1 = analytic_p1(c.table).a_sq;
        bits = run_shots(config.plan.shots, config.seed, [p1](std::uint64_t z) {
            return static_cast<std::uint8_t>(rng::unit_double(z) < p1 ? 1 : 0);
        });
    } else {
        const RegisterSpec spec{config.width};
        bits = run_shots(config.plan.shots, config.seed, [&](std::uint64_t z) {
            return static_cast<std::uint8_t>(run_shot(spec, c.table, rng::unit_double(z)));
        });
    }
    return finish(config, c.table, bits);
}

EstimateResult run_classical_baseline(const ExperimentConfig& config) {
    check_plan(config.plan);
    const CompiledPredicate c = compile(config.predicate_text, config.width);
    std::vector<std::uint8_t> bits;
    if (config.mode == SamplingMode::kAnalytic) {
        const double p1 = analytic_p1(c.table).a_sq;
        bits = run_shots(config.plan.shots, config.seed, [p1](std::uint64_t z) {
            return static_cast<std::uint8_t>(rng::unit_double(z) < p1 ? 1 : 0);
        });
    } else {
        const int width = config.width;
        bits = run_shots(config.plan.shots, config.seed, [&, width](std::uint64_t z) {
            const std::uint64_t x = rng::unit_bits(z, width);
            return static_cast<std::uint8_t>(eval_predicate(c.ast, x) ? 1 : 0);
        });
    }
    return finish(config, c.table, bits);
}

ComparisonReport compare_methods(const ExperimentConfig& config) {
    ExperimentConfig quantum = config;
    quantum.seed = rng::derive_seed(config.seed, kQuantumTag);
    ExperimentConfig classical = config;
    classical.seed = rng::derive_seed(config.seed, kClassicalTag);

    ComparisonReport report;
    report.quantum = run_experiment(quantum);
    report.classical = run_classical_baseline(classical);
    report.abs_difference = std::abs(report.quantum.f_hat - report.classical.f_hat);
    report.ci_overlap = report.quantum.ci_low <= report.classical.ci_high &&
                        report.classical.ci_low <= report.quantum.ci_high;
    report.exact_f = report.quantum.exact_f;
    return report;
}

std::string instantiate_family(std::string_view family, int width) {
    std::string out;
    out.reserve(family.size() + 8);
    std::size_t i = 0;
    while (i < family.size()) {
        const char ch = family[i];
        if (ch == 'k') {
            const bool left_ok = i == 0 || !std::isalnum(static_cast<unsigned char>(family[i - 1]));
            const bool right_ok =
                i + 1 == family.size() || !std::isalnum(static_cast<unsigned char>(family[i + 1]));
            if (left_ok && right_ok) {
                out += std::to_string(width);
                ++i;
                continue;
            }
        }
        out += ch;
        ++i;
    }
    return out;
}

std::vector<SweepRow> sweep_width(std::string_view family, std::span<const int> widths,
                                  const SamplingPlan& plan, std::uint64_t seed, SamplingMode mode,
                                  double alpha, CiMethod ci_method) {
    if (widths.empty()) throw std::invalid_argument("width list must not be empty");
    check_plan(plan);
    const double bound = hoeffding_radius(plan.shots, kSweepBoundDelta);

    std::vector<SweepRow> rows;
    rows.reserve(widths.size());
    for (int k : widths) {
        SweepRow row;
        row.width = k;
        row.predicate = instantiate_family(family, k);
        row.hoeffding_bound = bound;

        ExperimentConfig config;
        config.predicate_text = row.predicate;
        config.width = k;
        config.plan = plan;
        config.seed = seed;
        config.alpha = alpha;
        config.ci_method = ci_method;
        config.verify = true;
        config.mode = mode;

        const auto start = std::chrono::steady_clock::now();
        row.estimate = run_experiment(config);
        const auto stop = std::chrono::steady_clock::now();
        row.wall_clock_s = std::chrono::duration<double>(stop - start).count();

        row.exact_f = *row.estimate.exact_f;
        row.abs_error = std::abs(row.estimate.f_hat - row.exact_f.value());
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qfrac
