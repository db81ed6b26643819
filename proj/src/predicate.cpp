#include "qfrac/predicate.hpp"

#include <cctype>
#include <sstream>
#include <utility>

namespace qfrac {

namespace {

enum class TokenKind : std::uint8_t {
    kLiteral,
    kVar,
    kPlus,
    kMinus,
    kStar,
    kMod,
    kAmp,
    kPipe,
    kCaret,
    kShl,
    kShr,
    kEq,
    kNe,
    kLt,
    kLe,
    kGt,
    kGe,
    kAndAnd,
    kOrOr,
    kBang,
    kLParen,
    kRParen,
    kEnd,
};

const char* token_spelling(TokenKind k) {
    switch (k) {
        case TokenKind::kLiteral: return "literal";
        case TokenKind::kVar: return "'x'";
        case TokenKind::kPlus: return "'+'";
        case TokenKind::kMinus: return "'-'";
        case TokenKind::kStar: return "'*'";
        case TokenKind::kMod: return "'mod'";
        case TokenKind::kAmp: return "'&'";
        case TokenKind::kPipe: return "'|'";
        case TokenKind::kCaret: return "'^'";
        case TokenKind::kShl: return "'<<'";
        case TokenKind::kShr: return "'>>'";
        case TokenKind::kEq: return "'=='";
        case TokenKind::kNe: return "'!='";
        case TokenKind::kLt: return "'<'";
        case TokenKind::kLe: return "'<='";
        case TokenKind::kGt: return "'>'";
        case TokenKind::kGe: return "'>='";
        case TokenKind::kAndAnd: return "'&&'";
        case TokenKind::kOrOr: return "'||'";
        case TokenKind::kBang: return "'!'";
        case TokenKind::kLParen: return "'('";
        case TokenKind::kRParen: return "')'";
        case TokenKind::kEnd: return "end of input";
    }
    return "?";
}

struct Token {
    TokenKind kind;
    std::size_t offset;
    std::uint64_t value = 0;  // kLiteral only
};

[[noreturn]] void syntax_error(std::size_t offset, const std::string& found,
                               std::vector<TokenKind> expected) {
    std::vector<std::string> names;
    names.reserve(expected.size());
    std::ostringstream msg;
    msg << "syntax error at offset " << offset << ": unexpected " << found;
    if (!expected.empty()) {
        msg << "; expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            names.emplace_back(token_spelling(expected[i]));
            if (i > 0) msg << (i + 1 == expected.size() ? " or " : ", ");
            msg << names.back();
        }
    }
    throw ParseError(ParseErrorKind::kSyntax, offset, msg.str(), std::move(names));
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            if (pos_ >= text_.size()) {
                out.push_back({TokenKind::kEnd, text_.size()});
                return out;
            }
            out.push_back(next());
            // tree depth (and so the depth of every recursive walk over it)
            // is bounded by the token count
            if (out.size() > kMaxTokens) {
                throw ParseError(ParseErrorKind::kSyntax, out.back().offset,
                                 "syntax error at offset " + std::to_string(out.back().offset) +
                                     ": predicate exceeds " + std::to_string(kMaxTokens) +
                                     " tokens");
            }
        }
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    Token next() {
        const std::size_t start = pos_;
        const char c = text_[pos_];
        switch (c) {
            case '+': ++pos_; return {TokenKind::kPlus, start};
            case '-': ++pos_; return {TokenKind::kMinus, start};
            case '*': ++pos_; return {TokenKind::kStar, start};
            case '^': ++pos_; return {TokenKind::kCaret, start};
            case '(': ++pos_; return {TokenKind::kLParen, start};
            case ')': ++pos_; return {TokenKind::kRParen, start};
            case '&': return twin(start, '&', TokenKind::kAndAnd, TokenKind::kAmp);
            case '|': return twin(start, '|', TokenKind::kOrOr, TokenKind::kPipe);
            case '<': return angle(start, '<', TokenKind::kShl, TokenKind::kLe, TokenKind::kLt);
            case '>': return angle(start, '>', TokenKind::kShr, TokenKind::kGe, TokenKind::kGt);
            case '=':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
                    pos_ += 2;
                    return {TokenKind::kEq, start};
                }
                syntax_error(start, "'='", {});
            case '!':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
                    pos_ += 2;
                    return {TokenKind::kNe, start};
                }
                ++pos_;
                return {TokenKind::kBang, start};
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number(start);
        if (std::isalpha(static_cast<unsigned char>(c))) return word(start);
        syntax_error(start, "character '" + std::string(1, c) + "'", {});
    }

    static constexpr std::size_t kMaxTokens = 20000;

    Token twin(std::size_t start, char c, TokenKind doubled, TokenKind single) {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == c) {
            pos_ += 2;
            return {doubled, start};
        }
        ++pos_;
        return {single, start};
    }

    Token angle(std::size_t start, char c, TokenKind shift, TokenKind cmp_eq, TokenKind cmp) {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == c) {
            pos_ += 2;
            return {shift, start};
        }
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
            pos_ += 2;
            return {cmp_eq, start};
        }
        ++pos_;
        return {cmp, start};
    }

    Token number(std::size_t start) {
        if (text_[pos_] == '0' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'x') {
            pos_ += 2;
            return hex(start);
        }
        std::uint64_t value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            const std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
            if (value > (UINT64_MAX - digit) / 10) {
                throw ParseError(ParseErrorKind::kLiteralOverflow, start,
                                 "literal overflow at offset " + std::to_string(start) +
                                     ": value does not fit in 64 bits");
            }
            value = value * 10 + digit;
            ++pos_;
        }
        return {TokenKind::kLiteral, start, value};
    }

    Token hex(std::size_t start) {
        std::uint64_t value = 0;
        std::size_t digits = 0;
        while (pos_ < text_.size() && std::isxdigit(static_cast<unsigned char>(text_[pos_]))) {
            const char c = text_[pos_];
            const std::uint64_t digit =
                std::isdigit(static_cast<unsigned char>(c))
                    ? static_cast<std::uint64_t>(c - '0')
                    : static_cast<std::uint64_t>(std::tolower(static_cast<unsigned char>(c)) - 'a' + 10);
            if (value > (UINT64_MAX >> 4)) {
                throw ParseError(ParseErrorKind::kLiteralOverflow, start,
                                 "literal overflow at offset " + std::to_string(start) +
                                     ": value does not fit in 64 bits");
            }
            value = (value << 4) | digit;
            ++pos_;
            ++digits;
        }
        if (digits == 0) {
            syntax_error(start, "'0x' without hex digits", {TokenKind::kLiteral});
        }
        return {TokenKind::kLiteral, start, value};
    }

    Token word(std::size_t start) {
        std::size_t end = pos_;
        while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) ++end;
        const std::string_view w = text_.substr(pos_, end - pos_);
        pos_ = end;
        if (w == "x") return {TokenKind::kVar, start};
        if (w == "mod") return {TokenKind::kMod, start};
        syntax_error(start, "identifier '" + std::string(w) + "'", {});
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

ExprKind binary_kind(TokenKind t) {
    switch (t) {
        case TokenKind::kPlus: return ExprKind::kAdd;
        case TokenKind::kMinus: return ExprKind::kSub;
        case TokenKind::kStar: return ExprKind::kMul;
        case TokenKind::kMod: return ExprKind::kMod;
        case TokenKind::kAmp: return ExprKind::kBitAnd;
        case TokenKind::kPipe: return ExprKind::kBitOr;
        case TokenKind::kCaret: return ExprKind::kBitXor;
        case TokenKind::kShl: return ExprKind::kShl;
        case TokenKind::kShr: return ExprKind::kShr;
        case TokenKind::kEq: return ExprKind::kEq;
        case TokenKind::kNe: return ExprKind::kNe;
        case TokenKind::kLt: return ExprKind::kLt;
        case TokenKind::kLe: return ExprKind::kLe;
        case TokenKind::kGt: return ExprKind::kGt;
        case TokenKind::kGe: return ExprKind::kGe;
        case TokenKind::kAndAnd: return ExprKind::kAnd;
        case TokenKind::kOrOr: return ExprKind::kOr;
        default: break;
    }
    throw std::logic_error("not a binary operator token");
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    ExprPtr run() {
        ExprPtr e = or_bool();
        if (peek().kind != TokenKind::kEnd) {
            unexpected({TokenKind::kAndAnd, TokenKind::kOrOr, TokenKind::kEnd});
        }
        return e;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }

    Token take() { return tokens_[pos_++]; }

    bool accept(TokenKind k) {
        if (peek().kind == k) {
            ++pos_;
            return true;
        }
        return false;
    }

    // Errors point at the unexpected token; when that token is the end of
    // input, at the last consumed token instead (e.g. the '(' of an
    // unterminated group).
    [[noreturn]] void unexpected(std::vector<TokenKind> expected) {
        const Token& t = peek();
        std::size_t offset = t.offset;
        if (t.kind == TokenKind::kEnd && pos_ > 0) offset = tokens_[pos_ - 1].offset;
        syntax_error(offset, token_spelling(t.kind), std::move(expected));
    }

    template <typename Next>
    ExprPtr left_chain(Next next, std::initializer_list<TokenKind> ops) {
        ExprPtr lhs = (this->*next)();
        while (true) {
            bool matched = false;
            for (TokenKind op : ops) {
                if (peek().kind != op) continue;
                const Token t = take();
                ExprPtr rhs = (this->*next)();
                ExprPtr node = make_binary(binary_kind(op), std::move(lhs), std::move(rhs));
                node->offset = t.offset;
                lhs = std::move(node);
                matched = true;
                break;
            }
            if (!matched) return lhs;
        }
    }

    using Rule = ExprPtr (Parser::*)();

    ExprPtr or_bool() { return left_chain<Rule>(&Parser::and_bool, {TokenKind::kOrOr}); }
    ExprPtr and_bool() { return left_chain<Rule>(&Parser::comparison, {TokenKind::kAndAnd}); }

    ExprPtr comparison() {
        ExprPtr lhs = bit_or();
        for (TokenKind op : {TokenKind::kEq, TokenKind::kNe, TokenKind::kLt, TokenKind::kLe,
                             TokenKind::kGt, TokenKind::kGe}) {
            if (peek().kind != op) continue;
            const Token t = take();
            ExprPtr rhs = bit_or();
            ExprPtr node = make_binary(binary_kind(op), std::move(lhs), std::move(rhs));
            node->offset = t.offset;
            return node;
        }
        return lhs;
    }

    ExprPtr bit_or() { return left_chain<Rule>(&Parser::bit_xor, {TokenKind::kPipe}); }
    ExprPtr bit_xor() { return left_chain<Rule>(&Parser::bit_and, {TokenKind::kCaret}); }
    ExprPtr bit_and() { return left_chain<Rule>(&Parser::shift, {TokenKind::kAmp}); }
    ExprPtr shift() { return left_chain<Rule>(&Parser::additive, {TokenKind::kShl, TokenKind::kShr}); }
    ExprPtr additive() { return left_chain<Rule>(&Parser::multiplicative, {TokenKind::kPlus, TokenKind::kMinus}); }
    ExprPtr multiplicative() { return left_chain<Rule>(&Parser::unary, {TokenKind::kStar, TokenKind::kMod}); }

    ExprPtr unary() {
        if (peek().kind == TokenKind::kBang) {
            const Token t = take();
            ExprPtr node = make_unary(ExprKind::kNot, atom());
            node->offset = t.offset;
            return node;
        }
        return atom();
    }

    ExprPtr atom() {
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::kVar: {
                const Token v = take();
                ExprPtr node = make_var();
                node->offset = v.offset;
                return node;
            }
            case TokenKind::kLiteral: {
                const Token v = take();
                ExprPtr node = make_literal(v.value);
                node->offset = v.offset;
                return node;
            }
            case TokenKind::kLParen: {
                const Token open = take();
                // each level costs a full precedence chain of stack frames
                if (++paren_depth_ > kMaxParenDepth) {
                    throw ParseError(ParseErrorKind::kSyntax, open.offset,
                                     "syntax error at offset " + std::to_string(open.offset) +
                                         ": expression nests deeper than " +
                                         std::to_string(kMaxParenDepth) + " levels");
                }
                ExprPtr inner = or_bool();
                --paren_depth_;
                if (!accept(TokenKind::kRParen)) {
                    unexpected({TokenKind::kRParen});
                }
                return inner;
            }
            default:
                unexpected({TokenKind::kVar, TokenKind::kLiteral, TokenKind::kLParen, TokenKind::kBang});
        }
    }

    static constexpr std::size_t kMaxParenDepth = 1000;

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::size_t paren_depth_ = 0;
};

enum class ValueType : std::uint8_t { kArith, kBool };

[[noreturn]] void type_error(const Expr& node, const char* what) {
    throw ParseError(ParseErrorKind::kType, node.offset,
                     "type error at offset " + std::to_string(node.offset) + ": " + what +
                         " '" + expr_kind_symbol(node.kind) + "'");
}

ValueType check_types(const Expr& e) {
    switch (e.kind) {
        case ExprKind::kLiteral:
        case ExprKind::kVar:
            return ValueType::kArith;
        case ExprKind::kNot:
            if (check_types(*e.lhs) != ValueType::kBool) {
                type_error(e, "boolean operand required for");
            }
            return ValueType::kBool;
        case ExprKind::kAnd:
        case ExprKind::kOr:
            if (check_types(*e.lhs) != ValueType::kBool || check_types(*e.rhs) != ValueType::kBool) {
                type_error(e, "boolean operands required for");
            }
            return ValueType::kBool;
        default: {
            if (check_types(*e.lhs) != ValueType::kArith || check_types(*e.rhs) != ValueType::kArith) {
                type_error(e, "arithmetic operands required for");
            }
            return is_comparison(e.kind) ? ValueType::kBool : ValueType::kArith;
        }
    }
}

std::uint64_t eval_node(const Expr& e, std::uint64_t x) {
    switch (e.kind) {
        case ExprKind::kLiteral: return e.literal;
        case ExprKind::kVar: return x;
        case ExprKind::kNot: return eval_node(*e.lhs, x) ? 0 : 1;
        default: break;
    }
    const std::uint64_t a = eval_node(*e.lhs, x);
    const std::uint64_t b = eval_node(*e.rhs, x);
    switch (e.kind) {
        case ExprKind::kAdd: return a + b;
        case ExprKind::kSub: return a - b;
        case ExprKind::kMul: return a * b;
        case ExprKind::kMod: return b == 0 ? a : a % b;  // mod 0 is the identity, keeps eval total
        case ExprKind::kBitAnd: return a & b;
        case ExprKind::kBitOr: return a | b;
        case ExprKind::kBitXor: return a ^ b;
        case ExprKind::kShl: return b >= 64 ? 0 : a << b;
        case ExprKind::kShr: return b >= 64 ? 0 : a >> b;
        case ExprKind::kEq: return a == b;
        case ExprKind::kNe: return a != b;
        case ExprKind::kLt: return a < b;
        case ExprKind::kLe: return a <= b;
        case ExprKind::kGt: return a > b;
        case ExprKind::kGe: return a >= b;
        case ExprKind::kAnd: return (a != 0) && (b != 0);
        case ExprKind::kOr: return (a != 0) || (b != 0);
        default: throw std::logic_error("unreachable expression kind");
    }
}

void check_width(int width) {
    if (width < kMinWidth || width > kMaxWidth) {
        throw std::invalid_argument("register width must be in [" + std::to_string(kMinWidth) +
                                    ", " + std::to_string(kMaxWidth) + "], got " +
                                    std::to_string(width));
    }
}

}  // namespace

bool is_comparison(ExprKind k) {
    switch (k) {
        case ExprKind::kEq:
        case ExprKind::kNe:
        case ExprKind::kLt:
        case ExprKind::kLe:
        case ExprKind::kGt:
        case ExprKind::kGe:
            return true;
        default:
            return false;
    }
}

bool is_boolean_op(ExprKind k) {
    return k == ExprKind::kAnd || k == ExprKind::kOr || k == ExprKind::kNot;
}

const char* expr_kind_symbol(ExprKind k) {
    switch (k) {
        case ExprKind::kLiteral: return "literal";
        case ExprKind::kVar: return "x";
        case ExprKind::kAdd: return "+";
        case ExprKind::kSub: return "-";
        case ExprKind::kMul: return "*";
        case ExprKind::kMod: return "mod";
        case ExprKind::kBitAnd: return "&";
        case ExprKind::kBitOr: return "|";
        case ExprKind::kBitXor: return "^";
        case ExprKind::kShl: return "<<";
        case ExprKind::kShr: return ">>";
        case ExprKind::kEq: return "==";
        case ExprKind::kNe: return "!=";
        case ExprKind::kLt: return "<";
        case ExprKind::kLe: return "<=";
        case ExprKind::kGt: return ">";
        case ExprKind::kGe: return ">=";
        case ExprKind::kAnd: return "&&";
        case ExprKind::kOr: return "||";
        case ExprKind::kNot: return "!";
    }
    return "?";
}

ExprPtr make_literal(std::uint64_t value) {
    auto e = std::make_unique<Expr>();
    e->kind = ExprKind::kLiteral;
    e->literal = value;
    return e;
}

ExprPtr make_var() {
    auto e = std::make_unique<Expr>();
    e->kind = ExprKind::kVar;
    return e;
}

ExprPtr make_unary(ExprKind kind, ExprPtr child) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->lhs = std::move(child);
    return e;
}

ExprPtr make_binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
}

bool equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == ExprKind::kLiteral) return a.literal == b.literal;
    if (a.lhs && (!b.lhs || !equal(*a.lhs, *b.lhs))) return false;
    if (!a.lhs && b.lhs) return false;
    if (a.rhs && (!b.rhs || !equal(*a.rhs, *b.rhs))) return false;
    if (!a.rhs && b.rhs) return false;
    return true;
}

ExprPtr clone(const Expr& e) {
    auto out = std::make_unique<Expr>();
    out->kind = e.kind;
    out->literal = e.literal;
    out->offset = e.offset;
    if (e.lhs) out->lhs = clone(*e.lhs);
    if (e.rhs) out->rhs = clone(*e.rhs);
    return out;
}

bool equal(const PredicateAst& a, const PredicateAst& b) {
    return a.width == b.width && a.root && b.root && equal(*a.root, *b.root);
}

ParseError::ParseError(ParseErrorKind kind, std::size_t offset, const std::string& message,
                       std::vector<std::string> expected)
    : std::runtime_error(message), kind_(kind), offset_(offset), expected_(std::move(expected)) {}

PredicateAst parse_predicate(std::string_view text, int width) {
    check_width(width);
    ExprPtr root = Parser(Lexer(text).run()).run();
    if (check_types(*root) == ValueType::kArith) {
        // Bare arithmetic predicate is shorthand for `expr != 0`.
        const std::size_t at = root->offset;
        root = make_binary(ExprKind::kNe, std::move(root), make_literal(0));
        root->offset = at;
        root->rhs->offset = at;
    }
    return PredicateAst{width, std::move(root)};
}

bool eval_predicate(const PredicateAst& ast, std::uint64_t x) {
    const std::uint64_t mask = (ast.width == 64) ? ~std::uint64_t{0}
                                                 : (std::uint64_t{1} << ast.width) - 1;
    return eval_node(*ast.root, x & mask) != 0;
}

namespace {

bool prints_as_atom(const Expr& e) {
    return e.kind == ExprKind::kLiteral || e.kind == ExprKind::kVar;
}

void print_node(const Expr& e, std::string& out) {
    switch (e.kind) {
        case ExprKind::kLiteral:
            out += std::to_string(e.literal);
            return;
        case ExprKind::kVar:
            out += 'x';
            return;
        case ExprKind::kNot:
            out += '!';
            if (prints_as_atom(*e.lhs) || e.lhs->kind == ExprKind::kNot) {
                // `!` takes an atom; wrap anything that does not print as `(...)`.
                out += '(';
                print_node(*e.lhs, out);
                out += ')';
            } else {
                print_node(*e.lhs, out);
            }
            return;
        default:
            out += '(';
            print_node(*e.lhs, out);
            out += ' ';
            out += expr_kind_symbol(e.kind);
            out += ' ';
            print_node(*e.rhs, out);
            out += ')';
            return;
    }
}

}  // namespace

std::string pretty_print(const Expr& e) {
    std::string out;
    print_node(e, out);
    return out;
}

std::string pretty_print(const PredicateAst& ast) { return pretty_print(*ast.root); }

std::uint64_t OracleTable::recount() const {
    std::uint64_t n = 0;
    for (bool b : bits) n += b ? 1 : 0;
    return n;
}

OracleTable build_oracle_table(const PredicateAst& ast, int width) {
    check_width(width);
    if (width != ast.width) {
        throw std::invalid_argument("table width " + std::to_string(width) +
                                    " does not match predicate width " + std::to_string(ast.width));
    }
    OracleTable table;
    table.width = width;
    const std::uint64_t n = std::uint64_t{1} << width;
    table.bits.resize(n);
    for (std::uint64_t x = 0; x < n; ++x) {
        const bool y = eval_predicate(ast, x);
        table.bits[x] = y;
        table.solution_count += y ? 1 : 0;
    }
    return table;
}

Fraction exact_fraction(const OracleTable& table) {
    return Fraction{table.solution_count, std::uint64_t{1} << table.width};
}

}  // namespace qfrac
