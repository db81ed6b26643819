#include "qfrac/estimator.hpp"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qfrac {

namespace {

void check_unit_open(double v, const char* name) {
    if (!(v > 0.0) || !(v < 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in (0, 1), got " +
                                    std::to_string(v));
    }
}

Interval wilson_interval(std::uint64_t ones, std::uint64_t shots, double alpha) {
    const boost::math::normal_distribution<double> unit_normal;
    const double z = boost::math::quantile(unit_normal, 1.0 - alpha / 2.0);
    const double n = static_cast<double>(shots);
    const double p_hat = static_cast<double>(ones) / n;
    const double zz = z * z;
    const double denom = 1.0 + zz / n;
    const double center = (p_hat + zz / (2.0 * n)) / denom;
    const double half =
        (z / denom) * std::sqrt(p_hat * (1.0 - p_hat) / n + zz / (4.0 * n * n));
    return Interval{std::max(0.0, center - half), std::min(1.0, center + half)};
}

Interval clopper_pearson_interval(std::uint64_t ones, std::uint64_t shots, double alpha) {
    const double n = static_cast<double>(shots);
    const double s = static_cast<double>(ones);
    Interval out{0.0, 1.0};
    if (ones > 0) {
        const boost::math::beta_distribution<double> lower(s, n - s + 1.0);
        out.low = boost::math::quantile(lower, alpha / 2.0);
    }
    if (ones < shots) {
        const boost::math::beta_distribution<double> upper(s + 1.0, n - s);
        out.high = boost::math::quantile(upper, 1.0 - alpha / 2.0);
    }
    return out;
}

}  // namespace

const char* ci_method_name(CiMethod m) {
    return m == CiMethod::kWilson ? "wilson" : "clopper-pearson";
}

CiMethod ci_method_from_name(std::string_view name) {
    if (name == "wilson") return CiMethod::kWilson;
    if (name == "clopper-pearson") return CiMethod::kClopperPearson;
    throw std::invalid_argument("unknown confidence interval method '" + std::string(name) +
                                "' (expected wilson or clopper-pearson)");
}

SamplingPlan plan_shots(double epsilon, double delta) {
    check_unit_open(epsilon, "epsilon");
    check_unit_open(delta, "delta");
    const double raw = std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon));
    if (!(raw < 1e18)) {
        throw std::invalid_argument("requested accuracy needs more than 1e18 shots");
    }
    SamplingPlan plan;
    plan.shots = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(raw));
    plan.epsilon = epsilon;
    plan.delta = delta;
    return plan;
}

double hoeffding_radius(std::uint64_t shots, double delta) {
    check_unit_open(delta, "delta");
    if (shots == 0) throw std::invalid_argument("shots must be positive");
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(shots)));
}

double estimate_fraction(std::uint64_t ones, std::uint64_t shots) {
    if (shots == 0) throw std::invalid_argument("shots must be positive");
    if (ones > shots) throw std::invalid_argument("ones count exceeds shot count");
    return static_cast<double>(ones) / static_cast<double>(shots);
}

Interval confidence_interval(std::uint64_t ones, std::uint64_t shots, double alpha,
                             CiMethod method) {
    if (shots == 0) throw std::invalid_argument("shots must be positive");
    if (ones > shots) throw std::invalid_argument("ones count exceeds shot count");
    check_unit_open(alpha, "alpha");
    return method == CiMethod::kWilson ? wilson_interval(ones, shots, alpha)
                                       : clopper_pearson_interval(ones, shots, alpha);
}

EstimateResult aggregate(std::span<const std::uint8_t> bits, double alpha, CiMethod method,
                         std::uint64_t seed, std::optional<Fraction> exact_f) {
    if (bits.empty()) throw std::invalid_argument("cannot aggregate an empty bit sequence");
    EstimateResult r;
    r.shots = bits.size();
    for (std::uint8_t b : bits) r.ones += b ? 1 : 0;
    r.f_hat = estimate_fraction(r.ones, r.shots);
    const Interval ci = confidence_interval(r.ones, r.shots, alpha, method);
    r.ci_low = ci.low;
    r.ci_high = ci.high;
    r.ci_method = method;
    r.alpha = alpha;
    r.seed = seed;
    r.exact_f = exact_f;
    return r;
}

}  // namespace qfrac
