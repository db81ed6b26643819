#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "qfrac/fraction.hpp"

// Turns a stream of measurement bits into a fraction estimate with a
// confidence interval, and sizes the number of shots for a target accuracy.

namespace qfrac {

enum class CiMethod : std::uint8_t { kWilson, kClopperPearson };

const char* ci_method_name(CiMethod m);
CiMethod ci_method_from_name(std::string_view name);

struct SamplingPlan {
    std::uint64_t shots = 0;
    // Present when the plan was derived from an accuracy target.
    std::optional<double> epsilon;
    std::optional<double> delta;
};

// Two-sided Hoeffding bound: P = ceil(ln(2/delta) / (2 epsilon^2)) shots
// guarantee Pr[|f_hat - f| > epsilon] <= delta for any f and any register
// width. The width does not appear anywhere in this computation.
SamplingPlan plan_shots(double epsilon, double delta);

// The additive error radius the Hoeffding bound certifies for a given shot
// count at confidence 1 - delta: sqrt(ln(2/delta) / (2 P)).
double hoeffding_radius(std::uint64_t shots, double delta);

double estimate_fraction(std::uint64_t ones, std::uint64_t shots);

struct Interval {
    double low = 0.0;
    double high = 1.0;
};

// Wilson score interval (default) or Clopper-Pearson exact interval for a
// binomial proportion, two-sided at level alpha, clamped to [0,1].
Interval confidence_interval(std::uint64_t ones, std::uint64_t shots, double alpha,
                             CiMethod method);

struct EstimateResult {
    std::uint64_t ones = 0;
    std::uint64_t shots = 0;
    double f_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    CiMethod ci_method = CiMethod::kWilson;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::optional<Fraction> exact_f;  // attached when brute-force verification ran
};

EstimateResult aggregate(std::span<const std::uint8_t> bits, double alpha, CiMethod method,
                         std::uint64_t seed, std::optional<Fraction> exact_f = std::nullopt);

}  // namespace qfrac
