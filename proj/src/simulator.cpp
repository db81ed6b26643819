#include "qfrac/simulator.hpp"

#include <cmath>
#include <new>
#include <stdexcept>
#include <string>

namespace qfrac {

namespace {

void check_spec(const RegisterSpec& spec) {
    if (spec.width < kMinWidth || spec.width > kMaxWidth) {
        throw std::invalid_argument("register width must be in [" + std::to_string(kMinWidth) +
                                    ", " + std::to_string(kMaxWidth) + "], got " +
                                    std::to_string(spec.width));
    }
}

// Kahan-compensated |amp|^2 sum over a stride-2 slice. Plain accumulation
// drifts past the 1e-10 norm budget near k = 24.
double branch_norm_sq(const std::vector<Amplitude>& amps, std::size_t first) {
    double sum = 0.0;
    double carry = 0.0;
    for (std::size_t i = first; i < amps.size(); i += 2) {
        const double term = std::norm(amps[i]) - carry;
        const double next = sum + term;
        carry = (next - sum) - term;
        sum = next;
    }
    return sum;
}

void check_normalized(const StateVector& state, const char* op) {
    const double n = state.norm_sq();
    if (std::abs(n - 1.0) > kNormTolerance) {
        throw std::runtime_error(std::string(op) + ": state norm drifted to " + std::to_string(n));
    }
}

}  // namespace

double StateVector::norm_sq() const {
    return branch_norm_sq(amps, 0) + branch_norm_sq(amps, 1);
}

StateVector prepare_uniform(const RegisterSpec& spec) {
    check_spec(spec);
    StateVector state;
    state.width = spec.width;
    const std::size_t dim = std::size_t{1} << (spec.width + 1);
    try {
        state.amps.assign(dim, Amplitude{0.0, 0.0});
    } catch (const std::bad_alloc&) {
        throw std::runtime_error("statevector allocation failed for width " +
                                 std::to_string(spec.width));
    }
    // 1/sqrt(2^k); exactly 2^(-k/2) for even k
    const double amp = 1.0 / std::sqrt(static_cast<double>(std::size_t{1} << spec.width));
    for (std::size_t i = 0; i < dim; i += 2) {
        state.amps[i] = Amplitude{amp, 0.0};
    }
    check_normalized(state, "prepare_uniform");
    return state;
}

StateVector apply_oracle(StateVector state, const OracleTable& table) {
    if (state.width != table.width) {
        throw std::invalid_argument("state width " + std::to_string(state.width) +
                                    " does not match oracle width " + std::to_string(table.width));
    }
    const std::uint64_t n = table.size();
    for (std::uint64_t x = 0; x < n; ++x) {
        if (table.bit(x)) {
            std::swap(state.amps[2 * x], state.amps[2 * x + 1]);
        }
    }
    check_normalized(state, "apply_oracle");
    return state;
}

double prob_y1(const StateVector& state) { return branch_norm_sq(state.amps, 1); }

Measurement measure_y(StateVector state, double rand01) {
    const double p1 = branch_norm_sq(state.amps, 1);
    const int outcome = rand01 < p1 ? 1 : 0;
    const double p = outcome == 1 ? p1 : branch_norm_sq(state.amps, 0);
    if (p < kDegenerateProb) {
        throw std::runtime_error("measure_y: realised outcome probability " + std::to_string(p) +
                                 " is numerically degenerate");
    }
    const double scale = 1.0 / std::sqrt(p);
    const std::size_t keep = static_cast<std::size_t>(outcome);
    for (std::size_t i = 0; i < state.amps.size(); i += 2) {
        state.amps[i + keep] *= scale;
        state.amps[i + (1 - keep)] = Amplitude{0.0, 0.0};
    }
    check_normalized(state, "measure_y");
    return Measurement{outcome, std::move(state)};
}

PostOracleSummary analytic_p1(const OracleTable& table) {
    PostOracleSummary summary;
    summary.solution_count = table.solution_count;
    const std::uint64_t n = table.size();
    summary.a_sq_exact = Fraction{table.solution_count, n};
    // Dyadic with a 24-bit numerator, so both quotients are exact doubles.
    summary.a_sq = static_cast<double>(table.solution_count) / static_cast<double>(n);
    summary.b_sq = static_cast<double>(n - table.solution_count) / static_cast<double>(n);
    return summary;
}

int run_shot(const RegisterSpec& spec, const OracleTable& table, double rand01) {
    return measure_y(apply_oracle(prepare_uniform(spec), table), rand01).outcome;
}

}  // namespace qfrac
