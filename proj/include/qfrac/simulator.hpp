#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qfrac/fraction.hpp"
#include "qfrac/predicate.hpp"

// Dense statevector simulation of the (k+1)-qubit system: k-qubit input
// register X plus a single output qubit Y. Basis state |x>_X |y>_Y lives at
// index x*2 + y (the ancilla is the least significant index bit).

namespace qfrac {

using Amplitude = std::complex<double>;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kDegenerateProb = 1e-15;

struct RegisterSpec {
    int width = 0;  // X register qubit count, in [1, 24]
};

struct StateVector {
    int width = 0;
    std::vector<Amplitude> amps;  // length 2^(width+1)

    double norm_sq() const;  // compensated sum of |amp|^2
};

// |0...0> ancilla with the X register in the equal superposition: every
// amplitude at (x, y=0) is 2^(-k/2).
StateVector prepare_uniform(const RegisterSpec& spec);

// Writes y(x) into the ancilla by XOR: swaps the (x,0)/(x,1) amplitudes for
// every solution x. A permutation, so its own inverse and exactly
// norm-preserving.
StateVector apply_oracle(StateVector state, const OracleTable& table);

// Probability of reading Y=1, straight from the statevector.
double prob_y1(const StateVector& state);

struct Measurement {
    int outcome = 0;   // measured Y bit
    StateVector state; // collapsed and renormalised
};

// Born-rule measurement of the ancilla: outcome is 1 iff rand01 < P(Y=1).
// The unselected branch is zeroed and the survivor rescaled by 1/sqrt(p).
// Throws if the realised outcome probability is below kDegenerateProb.
Measurement measure_y(StateVector state, double rand01);

// Closed-form measurement statistics: P(Y=1) = S / 2^k exactly.
struct PostOracleSummary {
    std::uint64_t solution_count = 0;
    Fraction a_sq_exact;  // S / 2^k
    double a_sq = 0.0;
    double b_sq = 0.0;
};

PostOracleSummary analytic_p1(const OracleTable& table);

// One full repetition: fresh preparation, oracle, ancilla measurement.
int run_shot(const RegisterSpec& spec, const OracleTable& table, double rand01);

}  // namespace qfrac
