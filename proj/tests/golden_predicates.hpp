#pragma once

#include <cstddef>
#include <vector>

#include "qfrac/predicate.hpp"

// Frozen parse trees and rejection cases shared by the unit and acceptance
// suites. Offsets follow the documented convention: the start of the
// offending token, or of the last consumed token at end of input.

namespace qfrac::testgolden {

struct GoldenCase {
    const char* text;
    ExprPtr expected;
};

struct RejectCase {
    const char* text;
    ParseErrorKind kind;
    std::size_t offset;
};

inline ExprPtr lit(std::uint64_t v) { return make_literal(v); }
inline ExprPtr var() { return make_var(); }
inline ExprPtr bin(ExprKind k, ExprPtr a, ExprPtr b) {
    return make_binary(k, std::move(a), std::move(b));
}
inline ExprPtr neg(ExprPtr a) { return make_unary(ExprKind::kNot, std::move(a)); }

inline std::vector<GoldenCase> golden_cases() {
    using K = ExprKind;
    std::vector<GoldenCase> cases;
    auto add = [&](const char* text, ExprPtr e) { cases.push_back({text, std::move(e)}); };

    add("x*x mod 16 == 1", bin(K::kEq, bin(K::kMod, bin(K::kMul, var(), var()), lit(16)), lit(1)));
    add("0 == 0", bin(K::kEq, lit(0), lit(0)));
    add("x", bin(K::kNe, var(), lit(0)));          // bare arithmetic shorthand
    add("x + 1", bin(K::kNe, bin(K::kAdd, var(), lit(1)), lit(0)));
    add("x == 1", bin(K::kEq, var(), lit(1)));
    add("x != 1", bin(K::kNe, var(), lit(1)));
    add("x < 4", bin(K::kLt, var(), lit(4)));
    add("x <= 4", bin(K::kLe, var(), lit(4)));
    add("x > 4", bin(K::kGt, var(), lit(4)));
    add("x >= 4", bin(K::kGe, var(), lit(4)));
    add("x + 2 * 3 == 7", bin(K::kEq, bin(K::kAdd, var(), bin(K::kMul, lit(2), lit(3))), lit(7)));
    add("x - 1 - 2 == 0",
        bin(K::kEq, bin(K::kSub, bin(K::kSub, var(), lit(1)), lit(2)), lit(0)));
    // addition binds tighter than shifts
    add("x << 1 + 1 == 8", bin(K::kEq, bin(K::kShl, var(), bin(K::kAdd, lit(1), lit(1))), lit(8)));
    // bitwise binds tighter than comparisons
    add("x & 3 == 1", bin(K::kEq, bin(K::kBitAnd, var(), lit(3)), lit(1)));
    add("x & 3 ^ 5 | 9 == 9",
        bin(K::kEq,
            bin(K::kBitOr, bin(K::kBitXor, bin(K::kBitAnd, var(), lit(3)), lit(5)), lit(9)),
            lit(9)));
    add("x == 1 && x != 2", bin(K::kAnd, bin(K::kEq, var(), lit(1)), bin(K::kNe, var(), lit(2))));
    add("x == 1 || x == 2 && x != 3",
        bin(K::kOr, bin(K::kEq, var(), lit(1)),
            bin(K::kAnd, bin(K::kEq, var(), lit(2)), bin(K::kNe, var(), lit(3)))));
    add("!(x == 1)", neg(bin(K::kEq, var(), lit(1))));
    add("!(x == 1) && (x < 9)",
        bin(K::kAnd, neg(bin(K::kEq, var(), lit(1))), bin(K::kLt, var(), lit(9))));
    add("(x + 1) * 2 == 6", bin(K::kEq, bin(K::kMul, bin(K::kAdd, var(), lit(1)), lit(2)), lit(6)));
    add("0x1F == 31", bin(K::kEq, lit(31), lit(31)));
    add("0xff & x == 2", bin(K::kEq, bin(K::kBitAnd, lit(255), var()), lit(2)));
    add("18446744073709551615 == x", bin(K::kEq, lit(UINT64_MAX), var()));
    add("x mod 0 == x", bin(K::kEq, bin(K::kMod, var(), lit(0)), var()));
    add("x >> 2 >> 1 == 1",
        bin(K::kEq, bin(K::kShr, bin(K::kShr, var(), lit(2)), lit(1)), lit(1)));
    add("x * x + x == 2", bin(K::kEq, bin(K::kAdd, bin(K::kMul, var(), var()), var()), lit(2)));
    add("  x   ==  1  ", bin(K::kEq, var(), lit(1)));
    add("((x))", bin(K::kNe, var(), lit(0)));
    add("x mod 2 == 0 || x mod 3 == 0",
        bin(K::kOr, bin(K::kEq, bin(K::kMod, var(), lit(2)), lit(0)),
            bin(K::kEq, bin(K::kMod, var(), lit(3)), lit(0))));
    add("!(x != 0) || x - 1 < 3",
        bin(K::kOr, neg(bin(K::kNe, var(), lit(0))), bin(K::kLt, bin(K::kSub, var(), lit(1)), lit(3))));
    return cases;
}

inline std::vector<RejectCase> reject_cases() {
    return {
        {"x == (", ParseErrorKind::kSyntax, 5},
        {"", ParseErrorKind::kSyntax, 0},
        {"x +", ParseErrorKind::kSyntax, 2},
        {"(x == 1", ParseErrorKind::kSyntax, 6},
        {"x == )", ParseErrorKind::kSyntax, 5},
        {"x 5", ParseErrorKind::kSyntax, 2},
        {"y", ParseErrorKind::kSyntax, 0},
        {"x == 18446744073709551616", ParseErrorKind::kLiteralOverflow, 5},
        {"0x", ParseErrorKind::kSyntax, 0},
        {"x + * 2", ParseErrorKind::kSyntax, 4},
        {"!x", ParseErrorKind::kType, 0},
        {"x + (x == 1)", ParseErrorKind::kType, 2},
        {"(x + 1) && (x == 0)", ParseErrorKind::kType, 8},
        {"x << x == 2 == 3", ParseErrorKind::kSyntax, 12},
        {"x = 1", ParseErrorKind::kSyntax, 2},
    };
}

}  // namespace qfrac::testgolden
