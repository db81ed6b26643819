#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qfrac/estimator.hpp"
#include "qfrac/fraction.hpp"
#include "qfrac/predicate.hpp"

// Full runs: the quantum sampling pipeline, the classical uniform-sampling
// baseline, side-by-side comparisons, and the register-width sweep.
//
// Shots are keyed by (seed, shot index) so a run is bit-for-bit reproducible
// no matter how many worker threads execute it. The QFRAC_THREADS environment
// variable (positive integer) overrides the worker count.

namespace qfrac {

enum class SamplingMode : std::uint8_t {
    kStatevector,  // simulate prepare -> oracle -> measure per shot
    kAnalytic,     // sample Bernoulli(S/2^k) from the closed form (cross-check)
};

const char* sampling_mode_name(SamplingMode m);
SamplingMode sampling_mode_from_name(std::string_view name);

struct ExperimentConfig {
    std::string predicate_text;
    int width = 0;
    SamplingPlan plan;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    CiMethod ci_method = CiMethod::kWilson;
    bool verify = false;  // attach the exact brute-force fraction to results
    SamplingMode mode = SamplingMode::kStatevector;
};

// P independent shots of the quantum experiment, aggregated into an estimate.
EstimateResult run_experiment(const ExperimentConfig& config);

// P repetitions of: draw x uniformly from [0, 2^k), test the predicate. In
// analytic mode this collapses to the same Bernoulli(S/2^k) sampler as the
// quantum path, so matched seeds give matched bit streams.
EstimateResult run_classical_baseline(const ExperimentConfig& config);

struct ComparisonReport {
    EstimateResult quantum;
    EstimateResult classical;
    double abs_difference = 0.0;
    bool ci_overlap = false;
    std::optional<Fraction> exact_f;
};

// Runs both paths with seeds derived independently from config.seed.
ComparisonReport compare_methods(const ExperimentConfig& config);

// delta used for the informational error bound attached to sweep rows.
inline constexpr double kSweepBoundDelta = 1e-6;

struct SweepRow {
    int width = 0;
    std::string predicate;     // family instantiated at this width
    EstimateResult estimate;
    Fraction exact_f;
    double abs_error = 0.0;
    double hoeffding_bound = 0.0;  // depends only on (shots, delta), never on width
    double wall_clock_s = 0.0;
};

// Substitutes the standalone word `k` in a family template with the width,
// e.g. "x < (1 << (k - 2))" at k=4 becomes "x < (1 << (4 - 2))".
std::string instantiate_family(std::string_view family, int width);

// Runs the experiment at each width with the identical plan and seed. The
// error bound column is constant across widths; wall clock is informational.
std::vector<SweepRow> sweep_width(std::string_view family, std::span<const int> widths,
                                  const SamplingPlan& plan, std::uint64_t seed,
                                  SamplingMode mode = SamplingMode::kStatevector,
                                  double alpha = 0.05, CiMethod ci_method = CiMethod::kWilson);

// Worker threads the next run will use (QFRAC_THREADS override, else hardware).
unsigned worker_count();

}  // namespace qfrac
