#pragma once

// Eta-quotient expression language.
//
//   expr    := ["-"] term (("+" | "-") term)*
//   term    := factor (("*" | "/") factor | factor)*     implicit "*" only after
//                                                        an integer or q-power
//   factor  := atom ("^" ["-"] uint)?
//   atom    := uint | "q" | "f" uint | "(" expr ")"
//            | "extract" "(" expr "," uint "," uint ")"
//            | "inflate" "(" expr "," uint ")"
//            | "mod" "(" expr "," uint ")"
//
// Examples: "f3/(f1*f6)", "2q^3 f6^2 f24^5/(f1^3 f2^5 f8 f12^3)",
// "extract(f3/(f1*f6), 4, 2)".

#include <cctype>
#include <cstddef>
#include <cstdlib>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "series.hpp"

namespace qseries {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

inline constexpr long max_exponent = 64;

struct IntLiteral {
    integer value;
};

struct QPower {
    std::size_t exponent;
};

struct FAtom {
    std::size_t r;
};

struct Neg {
    ExprPtr operand;
};

enum class BinaryOp { add, sub, mul, div };

struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct Pow {
    ExprPtr base;
    long exponent;
};

struct Extract {
    ExprPtr child;
    std::size_t m;
    std::size_t j;
};

struct Inflate {
    ExprPtr child;
    std::size_t m;
};

struct ModRed {
    ExprPtr child;
    integer modulus;
};

struct Expr {
    std::variant<IntLiteral, QPower, FAtom, Neg, Binary, Pow, Extract, Inflate, ModRed> node;
};

bool operator==(const Expr& a, const Expr& b);

namespace detail {
inline bool same(const ExprPtr& a, const ExprPtr& b) { return a == b || (a && b && *a == *b); }
} // namespace detail

inline bool operator==(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) {
        return false;
    }
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, IntLiteral>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<T, QPower>) {
                return x.exponent == y.exponent;
            } else if constexpr (std::is_same_v<T, FAtom>) {
                return x.r == y.r;
            } else if constexpr (std::is_same_v<T, Neg>) {
                return detail::same(x.operand, y.operand);
            } else if constexpr (std::is_same_v<T, Binary>) {
                return x.op == y.op && detail::same(x.lhs, y.lhs) && detail::same(x.rhs, y.rhs);
            } else if constexpr (std::is_same_v<T, Pow>) {
                return x.exponent == y.exponent && detail::same(x.base, y.base);
            } else if constexpr (std::is_same_v<T, Extract>) {
                return x.m == y.m && x.j == y.j && detail::same(x.child, y.child);
            } else if constexpr (std::is_same_v<T, Inflate>) {
                return x.m == y.m && detail::same(x.child, y.child);
            } else {
                return x.modulus == y.modulus && detail::same(x.child, y.child);
            }
        },
        a.node);
}

/// Node constructors. They enforce the same domain rules as the parser.
namespace ast {

inline ExprPtr make(auto node) { return std::make_shared<const Expr>(Expr{std::move(node)}); }

inline ExprPtr lit(const integer& v) {
    if (v < 0) {
        throw domain_error("integer literals are non-negative; use negation");
    }
    return make(IntLiteral{v});
}

inline ExprPtr qpow(std::size_t k) { return make(QPower{k}); }

inline ExprPtr f(std::size_t r) {
    if (r == 0) {
        throw domain_error("f_r needs r >= 1");
    }
    return make(FAtom{r});
}

inline ExprPtr neg(ExprPtr x) { return make(Neg{std::move(x)}); }

inline ExprPtr binary(BinaryOp op, ExprPtr a, ExprPtr b) { return make(Binary{op, std::move(a), std::move(b)}); }
inline ExprPtr add(ExprPtr a, ExprPtr b) { return binary(BinaryOp::add, std::move(a), std::move(b)); }
inline ExprPtr sub(ExprPtr a, ExprPtr b) { return binary(BinaryOp::sub, std::move(a), std::move(b)); }
inline ExprPtr mul(ExprPtr a, ExprPtr b) { return binary(BinaryOp::mul, std::move(a), std::move(b)); }
inline ExprPtr div(ExprPtr a, ExprPtr b) { return binary(BinaryOp::div, std::move(a), std::move(b)); }

inline ExprPtr pow(ExprPtr base, long k) {
    if (k > max_exponent || k < -max_exponent) {
        throw domain_error("exponent " + std::to_string(k) + " exceeds the bound of " +
                           std::to_string(max_exponent));
    }
    return make(Pow{std::move(base), k});
}

inline ExprPtr extract(ExprPtr child, std::size_t m, std::size_t j) {
    if (m == 0) {
        throw domain_error("extract modulus must be positive");
    }
    if (j >= m) {
        throw domain_error("extract residue " + std::to_string(j) + " must be below modulus " +
                           std::to_string(m));
    }
    return make(Extract{std::move(child), m, j});
}

inline ExprPtr inflate(ExprPtr child, std::size_t m) {
    if (m == 0) {
        throw domain_error("inflate factor must be positive");
    }
    return make(Inflate{std::move(child), m});
}

inline ExprPtr mod(ExprPtr child, const integer& modulus) {
    if (modulus < 2) {
        throw domain_error("mod needs a modulus of at least 2");
    }
    return make(ModRed{std::move(child), modulus});
}

} // namespace ast

namespace detail {

enum class tok { number, q, f, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct token {
    tok kind;
    std::size_t offset;
    std::string text; // digits for number/f, name for ident
};

inline std::string describe(const token& t) {
    switch (t.kind) {
    case tok::number: return "number '" + t.text + "'";
    case tok::q: return "'q'";
    case tok::f: return "'f" + t.text + "'";
    case tok::ident: return "identifier '" + t.text + "'";
    case tok::plus: return "'+'";
    case tok::minus: return "'-'";
    case tok::star: return "'*'";
    case tok::slash: return "'/'";
    case tok::caret: return "'^'";
    case tok::lparen: return "'('";
    case tok::rparen: return "')'";
    case tok::comma: return "','";
    case tok::end: return "end of input";
    }
    return "?";
}

inline std::vector<token> lex(std::string_view text) {
    std::vector<token> out;
    std::size_t i = 0;
    auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    auto is_alpha = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (is_digit(c)) {
            while (i < text.size() && is_digit(text[i])) {
                ++i;
            }
            out.push_back({tok::number, start, std::string(text.substr(start, i - start))});
            continue;
        }
        if (is_alpha(c)) {
            // "f" directly followed by digits is an eta atom; other words are
            // keywords. Digits never continue a keyword.
            if (c == 'f' && i + 1 < text.size() && is_digit(text[i + 1])) {
                ++i;
                const std::size_t digits = i;
                while (i < text.size() && is_digit(text[i])) {
                    ++i;
                }
                out.push_back({tok::f, start, std::string(text.substr(digits, i - digits))});
                continue;
            }
            while (i < text.size() && is_alpha(text[i])) {
                ++i;
            }
            std::string word(text.substr(start, i - start));
            if (word == "q") {
                out.push_back({tok::q, start, word});
            } else if (word == "extract" || word == "inflate" || word == "mod") {
                out.push_back({tok::ident, start, word});
            } else if (word == "f") {
                throw syntax_error(start, "subscript digits after 'f'", "'f' without subscript");
            } else {
                throw syntax_error(start, "'q', 'f<r>', extract, inflate or mod", "identifier '" + word + "'");
            }
            continue;
        }
        tok kind;
        switch (c) {
        case '+': kind = tok::plus; break;
        case '-': kind = tok::minus; break;
        case '*': kind = tok::star; break;
        case '/': kind = tok::slash; break;
        case '^': kind = tok::caret; break;
        case '(': kind = tok::lparen; break;
        case ')': kind = tok::rparen; break;
        case ',': kind = tok::comma; break;
        default:
            throw syntax_error(start, "an expression character", "'" + std::string(1, c) + "'");
        }
        out.push_back({kind, start, std::string(1, c)});
        ++i;
    }
    out.push_back({tok::end, text.size(), ""});
    return out;
}

class parser {
public:
    explicit parser(std::string_view text) : tokens_(lex(text)) {}

    ExprPtr parse_all() {
        ExprPtr e = parse_expr();
        expect(tok::end, "an operator or end of input");
        return e;
    }

private:
    std::vector<token> tokens_;
    std::size_t pos_ = 0;

    const token& peek() const { return tokens_[pos_]; }

    bool accept(tok k) {
        if (peek().kind == k) {
            ++pos_;
            return true;
        }
        return false;
    }

    const token& expect(tok k, const char* what) {
        if (peek().kind != k) {
            throw syntax_error(peek().offset, what, describe(peek()));
        }
        return tokens_[pos_++];
    }

    std::size_t parse_uint(const char* what) {
        const token& t = expect(tok::number, what);
        return to_size(t);
    }

    static std::size_t to_size(const token& t) {
        if (t.text.size() > 18) {
            throw domain_error("number " + t.text + " at offset " + std::to_string(t.offset) + " is too large");
        }
        return static_cast<std::size_t>(std::stoull(t.text));
    }

    ExprPtr parse_expr() {
        const bool negate = accept(tok::minus);
        ExprPtr lhs = parse_term();
        if (negate) {
            lhs = ast::neg(std::move(lhs));
        }
        while (true) {
            if (accept(tok::plus)) {
                lhs = ast::add(std::move(lhs), parse_term());
            } else if (accept(tok::minus)) {
                lhs = ast::sub(std::move(lhs), parse_term());
            } else {
                return lhs;
            }
        }
    }

    static bool allows_juxtaposition(const ExprPtr& e) {
        return std::holds_alternative<IntLiteral>(e->node) || std::holds_alternative<QPower>(e->node);
    }

    bool starts_implicit_factor() const {
        const tok k = peek().kind;
        return k == tok::q || k == tok::f || k == tok::ident || k == tok::lparen;
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        bool juxtapose_ok = allows_juxtaposition(lhs);
        while (true) {
            if (accept(tok::star)) {
                ExprPtr rhs = parse_factor();
                juxtapose_ok = allows_juxtaposition(rhs);
                lhs = ast::mul(std::move(lhs), std::move(rhs));
            } else if (accept(tok::slash)) {
                ExprPtr rhs = parse_factor();
                juxtapose_ok = allows_juxtaposition(rhs);
                lhs = ast::div(std::move(lhs), std::move(rhs));
            } else if (juxtapose_ok && starts_implicit_factor()) {
                ExprPtr rhs = parse_factor();
                juxtapose_ok = allows_juxtaposition(rhs);
                lhs = ast::mul(std::move(lhs), std::move(rhs));
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_factor() {
        const bool bare_q = peek().kind == tok::q;
        ExprPtr base = parse_atom();
        if (!accept(tok::caret)) {
            return base;
        }
        const std::size_t at = peek().offset;
        const bool negative = accept(tok::minus);
        const token& t = expect(tok::number, "an integer exponent");
        if (t.text.size() > 3 || std::stol(t.text) > max_exponent) {
            throw domain_error("exponent at offset " + std::to_string(at) + " exceeds the bound of " +
                               std::to_string(max_exponent));
        }
        const long k = negative ? -std::stol(t.text) : std::stol(t.text);
        if (bare_q && k >= 0) {
            return ast::qpow(static_cast<std::size_t>(k));
        }
        return ast::pow(std::move(base), k);
    }

    ExprPtr parse_atom() {
        const token& t = peek();
        switch (t.kind) {
        case tok::number:
            ++pos_;
            return ast::lit(integer(t.text));
        case tok::q:
            ++pos_;
            return ast::qpow(1);
        case tok::f: {
            ++pos_;
            const std::size_t r = to_size(t);
            if (r == 0) {
                throw domain_error("f0 at offset " + std::to_string(t.offset) + ": f_r needs r >= 1");
            }
            return ast::f(r);
        }
        case tok::lparen: {
            ++pos_;
            ExprPtr e = parse_expr();
            expect(tok::rparen, "')'");
            return e;
        }
        case tok::ident:
            return parse_call();
        default:
            throw syntax_error(t.offset, "a number, 'q', 'f<r>', '(' or a function", describe(t));
        }
    }

    ExprPtr parse_call() {
        const token name = tokens_[pos_++];
        expect(tok::lparen, "'(' after function name");
        ExprPtr child = parse_expr();
        expect(tok::comma, "','");
        if (name.text == "extract") {
            const std::size_t m = parse_uint("a modulus");
            expect(tok::comma, "','");
            const std::size_t j = parse_uint("a residue");
            expect(tok::rparen, "')'");
            if (m == 0 || j >= m) {
                throw domain_error("extract at offset " + std::to_string(name.offset) + ": need 0 <= j < m, got m=" +
                                   std::to_string(m) + ", j=" + std::to_string(j));
            }
            return ast::extract(std::move(child), m, j);
        }
        if (name.text == "inflate") {
            const std::size_t m = parse_uint("an inflation factor");
            expect(tok::rparen, "')'");
            if (m == 0) {
                throw domain_error("inflate at offset " + std::to_string(name.offset) + ": factor must be >= 1");
            }
            return ast::inflate(std::move(child), m);
        }
        const token& mt = expect(tok::number, "a modulus");
        expect(tok::rparen, "')'");
        integer modulus(mt.text);
        if (modulus < 2) {
            throw domain_error("mod at offset " + std::to_string(name.offset) + ": modulus must be >= 2");
        }
        return ast::mod(std::move(child), modulus);
    }
};

inline int precedence(const Expr& e) {
    if (const auto* b = std::get_if<Binary>(&e.node)) {
        return (b->op == BinaryOp::add || b->op == BinaryOp::sub) ? 1 : 2;
    }
    return 3;
}

inline void format_into(const Expr& e, std::string& out);

inline void format_child(const Expr& e, bool parens, std::string& out) {
    if (parens) {
        out += '(';
    }
    format_into(e, out);
    if (parens) {
        out += ')';
    }
}

inline void format_into(const Expr& e, std::string& out) {
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, IntLiteral>) {
                out += x.value.get_str();
            } else if constexpr (std::is_same_v<T, QPower>) {
                out += 'q';
                if (x.exponent != 1) {
                    out += '^' + std::to_string(x.exponent);
                }
            } else if constexpr (std::is_same_v<T, FAtom>) {
                out += 'f' + std::to_string(x.r);
            } else if constexpr (std::is_same_v<T, Neg>) {
                out += "(-";
                format_child(*x.operand, precedence(*x.operand) < 2, out);
                out += ')';
            } else if constexpr (std::is_same_v<T, Binary>) {
                const int p = precedence(e);
                format_child(*x.lhs, precedence(*x.lhs) < p, out);
                switch (x.op) {
                case BinaryOp::add: out += " + "; break;
                case BinaryOp::sub: out += " - "; break;
                case BinaryOp::mul: out += '*'; break;
                case BinaryOp::div: out += '/'; break;
                }
                format_child(*x.rhs, precedence(*x.rhs) <= p, out);
            } else if constexpr (std::is_same_v<T, Pow>) {
                const Expr& b = *x.base;
                const bool plain = std::holds_alternative<FAtom>(b.node) || std::holds_alternative<IntLiteral>(b.node) ||
                                   (x.exponent < 0 && std::holds_alternative<QPower>(b.node) &&
                                    std::get<QPower>(b.node).exponent == 1);
                format_child(b, !plain, out);
                out += '^' + std::to_string(x.exponent);
            } else if constexpr (std::is_same_v<T, Extract>) {
                out += "extract(";
                format_into(*x.child, out);
                out += ", " + std::to_string(x.m) + ", " + std::to_string(x.j) + ')';
            } else if constexpr (std::is_same_v<T, Inflate>) {
                out += "inflate(";
                format_into(*x.child, out);
                out += ", " + std::to_string(x.m) + ')';
            } else {
                out += "mod(";
                format_into(*x.child, out);
                out += ", " + x.modulus.get_str() + ')';
            }
        },
        e.node);
}

} // namespace detail

/// Parse DSL text. Throws syntax_error or domain_error.
inline ExprPtr parse(std::string_view text) { return detail::parser(text).parse_all(); }

/// Canonical text; parse(format(e)) is structurally equal to e.
inline std::string format(const Expr& e) {
    std::string out;
    detail::format_into(e, out);
    return out;
}

inline std::string format(const ExprPtr& e) { return format(*e); }

} // namespace qseries
