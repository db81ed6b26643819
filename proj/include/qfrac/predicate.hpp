#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qfrac/fraction.hpp"

// Predicate DSL over a single unsigned k-bit variable `x`.
//
// Grammar (loosest to tightest binding):
//
//   expr    := orB ; orB := andB {"||" andB} ; andB := cmp {"&&" cmp}
//   cmp     := bor [("=="|"!="|"<"|"<="|">"|">=") bor]
//   bor     := bxor {"|" bxor} ; bxor := band {"^" band} ; band := shift {"&" shift}
//   shift   := add {("<<"|">>") add} ; add := mul {("+"|"-") mul}
//   mul     := unary {("*"|"mod") unary} ; unary := ["!"] atom
//   atom    := "x" | decimal-literal | "0x" hex-literal | "(" expr ")"
//
// Evaluation is total: arithmetic is unsigned and wraps mod 2^64, `a mod 0`
// is `a`, and shifts by 64 or more yield 0. The variable is masked to the
// declared width on read. Comparisons take arithmetic operands and yield
// booleans; `&&`, `||`, `!` take booleans. The whole predicate must be
// boolean, except that a bare arithmetic expression is shorthand for
// `expr != 0`.

namespace qfrac {

inline constexpr int kMinWidth = 1;
inline constexpr int kMaxWidth = 24;  // dense table / statevector stays desk-sized

enum class ExprKind : std::uint8_t {
    kLiteral,
    kVar,
    // arithmetic / bitwise (operands and result unsigned 64-bit)
    kAdd,
    kSub,
    kMul,
    kMod,
    kBitAnd,
    kBitOr,
    kBitXor,
    kShl,
    kShr,
    // comparisons (arithmetic operands, boolean result)
    kEq,
    kNe,
    kLt,
    kLe,
    kGt,
    kGe,
    // boolean connectives
    kAnd,
    kOr,
    kNot,
};

bool is_comparison(ExprKind k);
bool is_boolean_op(ExprKind k);
const char* expr_kind_symbol(ExprKind k);

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    ExprKind kind{};
    std::uint64_t literal = 0;  // kLiteral only
    std::size_t offset = 0;     // byte offset of the token that introduced the node
    ExprPtr lhs;                // null for leaves
    ExprPtr rhs;                // null for leaves and kNot
};

ExprPtr make_literal(std::uint64_t value);
ExprPtr make_var();
ExprPtr make_unary(ExprKind kind, ExprPtr child);
ExprPtr make_binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs);

// Structural equality; source offsets are ignored.
bool equal(const Expr& a, const Expr& b);
ExprPtr clone(const Expr& e);

struct PredicateAst {
    int width = 0;  // x is drawn from [0, 2^width)
    ExprPtr root;   // boolean-typed by construction
};

bool equal(const PredicateAst& a, const PredicateAst& b);

enum class ParseErrorKind : std::uint8_t {
    kSyntax,
    kType,
    kLiteralOverflow,
};

// Raised for anything wrong with the predicate text. `offset` is a byte
// offset into the input: the start of the offending token for syntax errors
// (for an unexpected end of input, the start of the last consumed token),
// the operator's position for type errors, and the start of the literal for
// overflows. `expected` lists acceptable tokens for syntax errors.
class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::size_t offset, const std::string& message,
               std::vector<std::string> expected = {});

    ParseErrorKind kind() const { return kind_; }
    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    ParseErrorKind kind_;
    std::size_t offset_;
    std::vector<std::string> expected_;
};

PredicateAst parse_predicate(std::string_view text, int width);

// Indicator bit y(x): true iff the predicate holds at x. Total; never throws.
bool eval_predicate(const PredicateAst& ast, std::uint64_t x);

// Fully parenthesised form; parsing it back yields a structurally equal tree.
std::string pretty_print(const Expr& e);
std::string pretty_print(const PredicateAst& ast);

// Compiled truth table: one indicator bit per x in [0, 2^width).
struct OracleTable {
    int width = 0;
    std::vector<bool> bits;
    std::uint64_t solution_count = 0;

    std::uint64_t size() const { return std::uint64_t{1} << width; }
    bool bit(std::uint64_t x) const { return bits[x]; }
    std::uint64_t recount() const;  // popcount of bits, for consistency checks
};

// Evaluates the predicate at every x. `width` must match the width the AST
// was parsed with.
OracleTable build_oracle_table(const PredicateAst& ast, int width);

// Exact solution fraction f = S / 2^k.
Fraction exact_fraction(const OracleTable& table);

}  // namespace qfrac
