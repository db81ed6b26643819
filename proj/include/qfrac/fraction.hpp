#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace qfrac {

// Exact dyadic rational. Everything in this project has the form S / 2^k with
// k <= 24, so 64-bit arithmetic never overflows here.
struct Fraction {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    Fraction reduced() const {
        const std::uint64_t g = std::gcd(num == 0 ? den : num, den);
        return Fraction{num / g, den / g};
    }

    // "1/4", or a bare integer when the reduced denominator is 1.
    std::string to_string() const {
        const Fraction r = reduced();
        if (r.den == 1) return std::to_string(r.num);
        return std::to_string(r.num) + "/" + std::to_string(r.den);
    }

    friend bool operator==(const Fraction& a, const Fraction& b) {
        const Fraction ra = a.reduced();
        const Fraction rb = b.reduced();
        return ra.num == rb.num && ra.den == rb.den;
    }
};

}  // namespace qfrac
