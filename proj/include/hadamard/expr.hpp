#pragma once

/**
 * @file expr.hpp
 * @brief Two-variable function expressions: parsing, printing, evaluation
 *        and exact mixed partials.
 *
 * Grammar (whitespace ignored):
 *
 *   expr   := term (('+' | '-') term)*
 *   term   := factor (('*' | '/') factor)*
 *   factor := ['-'] power
 *   power  := atom ['^' factor]            (exponent must be variable-free)
 *   atom   := number | 'x' | 'y' | func '(' expr ')' | '(' expr ')'
 *   func   := exp | log | sin | cos | abs | sqrt
 *
 * The tree is stored in postfix order and shared immutably, so copies are
 * cheap and concurrent evaluation needs no synchronisation.
 */

#include "hadamard/dual.hpp"
#include "hadamard/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace hadamard {

enum class Op : std::uint8_t {
    number,
    var_x,
    var_y,
    add,
    sub,
    mul,
    div,
    neg,
    pow,
    exp,
    log,
    sin,
    cos,
    abs,
    sqrt,
};

struct Node {
    Op op = Op::number;
    double value = 0.0; // only meaningful for Op::number

    bool operator==(const Node&) const = default;
};

namespace detail {

constexpr int arity(Op op) {
    switch (op) {
    case Op::number:
    case Op::var_x:
    case Op::var_y: return 0;
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div:
    case Op::pow: return 2;
    default: return 1;
    }
}

constexpr bool is_function(Op op) {
    return op == Op::exp || op == Op::log || op == Op::sin || op == Op::cos || op == Op::abs ||
           op == Op::sqrt;
}

constexpr std::string_view function_name(Op op) {
    switch (op) {
    case Op::exp: return "exp";
    case Op::log: return "log";
    case Op::sin: return "sin";
    case Op::cos: return "cos";
    case Op::abs: return "abs";
    case Op::sqrt: return "sqrt";
    default: return "";
    }
}

inline std::string format_number(double v) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

// precedence levels used by the printer; higher binds tighter
constexpr int precedence(Op op) {
    switch (op) {
    case Op::add:
    case Op::sub: return 1;
    case Op::mul:
    case Op::div: return 2;
    case Op::neg: return 3;
    case Op::pow: return 4;
    default: return 5;
    }
}

inline double value_of(double v) { return v; }
inline double value_of(const DualValue& v) { return v.value; }

inline bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v; }

} // namespace detail

class Expression {
public:
    /// Builds from a postfix node list. Callers normally go through parse().
    explicit Expression(std::vector<Node> postfix)
        : nodes_(std::make_shared<const std::vector<Node>>(std::move(postfix))) {
        std::size_t depth = 0;
        for (const Node& n : *nodes_) {
            depth = depth + 1 - static_cast<std::size_t>(detail::arity(n.op));
            max_depth_ = std::max(max_depth_, depth);
        }
    }

    std::span<const Node> nodes() const { return *nodes_; }

    bool operator==(const Expression& other) const { return *nodes_ == *other.nodes_; }

    bool contains(Op op) const {
        return std::any_of(nodes_->begin(), nodes_->end(), [op](const Node& n) { return n.op == op; });
    }

    /// Evaluates at (x, y). T is double or DualValue.
    template <typename T>
    T evaluate(const T& x, const T& y) const;

    double operator()(double x, double y) const { return evaluate<double>(x, y); }

    /// Re-parseable text with the minimum of parentheses.
    std::string to_string() const { return print_range(0, nodes_->size()); }

    /// Tree form such as "Mul(Var x, Var y)", for diagnostics and tests.
    std::string describe() const;

    /// Printed text of the subtree rooted at postfix index `root`.
    std::string subterm(std::size_t root) const { return print_range(subtree_start(root), root + 1); }

private:
    std::size_t subtree_start(std::size_t root) const {
        std::ptrdiff_t need = 1;
        std::size_t i = root + 1;
        while (need > 0) {
            --i;
            need += detail::arity((*nodes_)[i].op) - 1;
        }
        return i;
    }

    std::string print_range(std::size_t begin, std::size_t end) const;

    std::shared_ptr<const std::vector<Node>> nodes_;
    std::size_t max_depth_ = 0;
};

// ----------------------------------------------------------------------------
// Printing
// ----------------------------------------------------------------------------

inline std::string Expression::print_range(std::size_t begin, std::size_t end) const {
    struct Piece {
        std::string text;
        int prec;
    };
    std::vector<Piece> stack;
    auto wrap = [](const Piece& p, int min_prec) {
        return p.prec >= min_prec ? p.text : "(" + p.text + ")";
    };
    for (std::size_t i = begin; i < end; ++i) {
        const Node& n = (*nodes_)[i];
        switch (n.op) {
        case Op::number: stack.push_back({detail::format_number(n.value), 5}); break;
        case Op::var_x: stack.push_back({"x", 5}); break;
        case Op::var_y: stack.push_back({"y", 5}); break;
        case Op::neg: {
            Piece a = std::move(stack.back());
            stack.back() = {"-" + wrap(a, 4), 3};
            break;
        }
        case Op::add:
        case Op::sub:
        case Op::mul:
        case Op::div:
        case Op::pow: {
            Piece rhs = std::move(stack.back());
            stack.pop_back();
            Piece lhs = std::move(stack.back());
            const int p = detail::precedence(n.op);
            std::string text;
            switch (n.op) {
            case Op::add: text = wrap(lhs, 1) + " + " + wrap(rhs, 2); break;
            case Op::sub: text = wrap(lhs, 1) + " - " + wrap(rhs, 2); break;
            case Op::mul: text = wrap(lhs, 2) + "*" + wrap(rhs, 3); break;
            case Op::div: text = wrap(lhs, 2) + "/" + wrap(rhs, 3); break;
            default: text = wrap(lhs, 5) + "^" + wrap(rhs, 3); break;
            }
            stack.back() = {std::move(text), p};
            break;
        }
        default: {
            Piece a = std::move(stack.back());
            stack.back() = {std::string(detail::function_name(n.op)) + "(" + a.text + ")", 5};
            break;
        }
        }
    }
    return stack.empty() ? std::string{} : stack.back().text;
}

inline std::string Expression::describe() const {
    std::vector<std::string> stack;
    for (const Node& n : *nodes_) {
        switch (n.op) {
        case Op::number: stack.push_back("Num " + detail::format_number(n.value)); break;
        case Op::var_x: stack.push_back("Var x"); break;
        case Op::var_y: stack.push_back("Var y"); break;
        case Op::add:
        case Op::sub:
        case Op::mul:
        case Op::div:
        case Op::pow: {
            static constexpr std::array names{"Add", "Sub", "Mul", "Div"};
            std::string rhs = std::move(stack.back());
            stack.pop_back();
            const std::string name =
                n.op == Op::pow ? "Pow" : names[static_cast<int>(n.op) - static_cast<int>(Op::add)];
            stack.back() = name + "(" + stack.back() + ", " + rhs + ")";
            break;
        }
        case Op::neg: stack.back() = "Neg(" + stack.back() + ")"; break;
        default: {
            std::string fn(detail::function_name(n.op));
            fn[0] = static_cast<char>(fn[0] - 'a' + 'A');
            stack.back() = fn + "(" + stack.back() + ")";
            break;
        }
        }
    }
    return stack.empty() ? std::string{} : stack.back();
}

// ----------------------------------------------------------------------------
// Evaluation
// ----------------------------------------------------------------------------

template <typename T>
T Expression::evaluate(const T& x, const T& y) const {
    static_assert(std::is_same_v<T, double> || std::is_same_v<T, DualValue>);
    constexpr bool dual = std::is_same_v<T, DualValue>;
    using std::cos, std::exp, std::log, std::sin, std::sqrt, std::abs, std::pow;

    constexpr std::size_t inline_depth = 48;
    std::array<T, inline_depth> fixed{};
    std::vector<T> heap;
    T* stack = fixed.data();
    if (max_depth_ > inline_depth) {
        heap.resize(max_depth_);
        stack = heap.data();
    }
    std::size_t top = 0;

    const auto& nodes = *nodes_;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        auto domain = [&](const char* why) -> DomainError {
            const std::string term = subterm(i);
            return DomainError(std::string("domain error: ") + why + " in '" + term + "'", term);
        };
        auto kink = [&](const char* why) -> NonDifferentiableError {
            const std::string term = subterm(i);
            return NonDifferentiableError(std::string("not differentiable: ") + why + " in '" + term + "'",
                                          term);
        };
        switch (n.op) {
        case Op::number: stack[top++] = T(n.value); break;
        case Op::var_x: stack[top++] = x; break;
        case Op::var_y: stack[top++] = y; break;
        case Op::add: --top; stack[top - 1] = stack[top - 1] + stack[top]; break;
        case Op::sub: --top; stack[top - 1] = stack[top - 1] - stack[top]; break;
        case Op::mul: --top; stack[top - 1] = stack[top - 1] * stack[top]; break;
        case Op::div:
            --top;
            if (detail::value_of(stack[top]) == 0.0) throw domain("division by zero");
            stack[top - 1] = stack[top - 1] / stack[top];
            break;
        case Op::neg: stack[top - 1] = -stack[top - 1]; break;
        case Op::pow: {
            --top;
            const double base = detail::value_of(stack[top - 1]);
            const double k = detail::value_of(stack[top]);
            if (base < 0.0 && !detail::is_integer(k)) throw domain("negative base with non-integer exponent");
            if (base == 0.0 && k < 0.0) throw domain("division by zero");
            stack[top - 1] = pow(stack[top - 1], k);
            break;
        }
        case Op::exp: stack[top - 1] = exp(stack[top - 1]); break;
        case Op::log:
            if (detail::value_of(stack[top - 1]) <= 0.0) throw domain("log of nonpositive value");
            stack[top - 1] = log(stack[top - 1]);
            break;
        case Op::sin: stack[top - 1] = sin(stack[top - 1]); break;
        case Op::cos: stack[top - 1] = cos(stack[top - 1]); break;
        case Op::abs:
            if constexpr (dual) {
                if (detail::value_of(stack[top - 1]) == 0.0) throw kink("abs at 0");
            }
            stack[top - 1] = abs(stack[top - 1]);
            break;
        case Op::sqrt:
            if (detail::value_of(stack[top - 1]) < 0.0) throw domain("sqrt of negative value");
            if constexpr (dual) {
                if (detail::value_of(stack[top - 1]) == 0.0) throw kink("sqrt at 0");
            }
            stack[top - 1] = sqrt(stack[top - 1]);
            break;
        }
        if constexpr (dual) {
            const DualValue& r = stack[top - 1];
            if (std::isfinite(r.value) && !r.derivatives_finite()) throw kink("singular derivative");
        }
    }
    return stack[0];
}

inline double eval(const Expression& e, double x, double y) { return e.evaluate<double>(x, y); }

/// f, f_x, f_y, f_xy at (x, y) in one pass.
inline DualValue eval_dual(const Expression& e, double x, double y) {
    return e.evaluate(DualValue::seed_x(x), DualValue::seed_y(y));
}

// ----------------------------------------------------------------------------
// Parsing
// ----------------------------------------------------------------------------

namespace detail {

enum class TokenKind { number, identifier, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    TokenKind kind = TokenKind::end;
    std::string_view text;
    std::size_t position = 0;
    double number = 0.0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
        Token tok;
        tok.position = pos_;
        if (pos_ >= src_.size()) return tok;

        const char c = src_[pos_];
        if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) return number();
        if (is_alpha(c)) {
            std::size_t end = pos_;
            while (end < src_.size() && (is_alpha(src_[end]) || is_digit(src_[end]))) ++end;
            tok.kind = TokenKind::identifier;
            tok.text = src_.substr(pos_, end - pos_);
            pos_ = end;
            return tok;
        }
        switch (c) {
        case '+': tok.kind = TokenKind::plus; break;
        case '-': tok.kind = TokenKind::minus; break;
        case '*': tok.kind = TokenKind::star; break;
        case '/': tok.kind = TokenKind::slash; break;
        case '^': tok.kind = TokenKind::caret; break;
        case '(': tok.kind = TokenKind::lparen; break;
        case ')': tok.kind = TokenKind::rparen; break;
        default:
            throw ParseError(ParseError::Kind::lex, pos_, std::string(1, c),
                             "lex error: unexpected character '" + std::string(1, c) + "'");
        }
        tok.text = src_.substr(pos_, 1);
        ++pos_;
        return tok;
    }

private:
    static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

    Token number() {
        Token tok;
        tok.kind = TokenKind::number;
        tok.position = pos_;
        std::size_t end = pos_;
        while (end < src_.size() && is_digit(src_[end])) ++end;
        if (end < src_.size() && src_[end] == '.') {
            ++end;
            while (end < src_.size() && is_digit(src_[end])) ++end;
        }
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            std::size_t exp_end = end + 1;
            if (exp_end < src_.size() && (src_[exp_end] == '+' || src_[exp_end] == '-')) ++exp_end;
            if (exp_end < src_.size() && is_digit(src_[exp_end])) {
                while (exp_end < src_.size() && is_digit(src_[exp_end])) ++exp_end;
                end = exp_end;
            }
        }
        tok.text = src_.substr(pos_, end - pos_);
        const char* first = tok.text.data();
        if (*first == '.') {
            // from_chars rejects a leading '.', so prepend a zero
            const std::string padded = "0" + std::string(tok.text);
            std::from_chars(padded.data(), padded.data() + padded.size(), tok.number);
        } else {
            std::from_chars(first, first + tok.text.size(), tok.number);
        }
        pos_ = end;
        return tok;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { advance(); }

    std::vector<Node> run() {
        if (current_.kind == TokenKind::end) fail_syntax("empty expression");
        expr();
        if (current_.kind != TokenKind::end) unexpected();
        return std::move(out_);
    }

private:
    void advance() { current_ = lexer_.next(); }

    [[noreturn]] void fail_syntax(const std::string& why) const {
        throw ParseError(ParseError::Kind::syntax, current_.position, std::string(current_.text),
                         "parse error: " + why);
    }

    [[noreturn]] void unexpected() const {
        if (current_.kind == TokenKind::end) fail_syntax("unexpected end of input");
        fail_syntax("unexpected token '" + std::string(current_.text) + "'");
    }

    void expect(TokenKind kind, const char* what) {
        if (current_.kind != kind) {
            if (current_.kind == TokenKind::end) fail_syntax(std::string("expected ") + what + ", found end of input");
            fail_syntax(std::string("expected ") + what + ", found '" + std::string(current_.text) + "'");
        }
        advance();
    }

    void expr() {
        term();
        while (current_.kind == TokenKind::plus || current_.kind == TokenKind::minus) {
            const Op op = current_.kind == TokenKind::plus ? Op::add : Op::sub;
            advance();
            term();
            out_.push_back({op});
        }
    }

    void term() {
        factor();
        while (current_.kind == TokenKind::star || current_.kind == TokenKind::slash) {
            const Op op = current_.kind == TokenKind::star ? Op::mul : Op::div;
            advance();
            factor();
            out_.push_back({op});
        }
    }

    void factor() {
        if (current_.kind == TokenKind::minus) {
            advance();
            power();
            out_.push_back({Op::neg});
        } else {
            power();
        }
    }

    void power() {
        atom();
        if (current_.kind == TokenKind::caret) {
            const Token caret = current_;
            advance();
            const std::size_t exponent_begin = out_.size();
            factor();
            const bool has_variable = std::any_of(out_.begin() + static_cast<std::ptrdiff_t>(exponent_begin),
                                                  out_.end(), [](const Node& n) {
                                                      return n.op == Op::var_x || n.op == Op::var_y;
                                                  });
            if (has_variable) {
                throw ParseError(ParseError::Kind::syntax, caret.position, "^",
                                 "parse error: exponent must be a constant");
            }
            out_.push_back({Op::pow});
        }
    }

    void atom() {
        switch (current_.kind) {
        case TokenKind::number:
            out_.push_back({Op::number, current_.number});
            advance();
            return;
        case TokenKind::lparen:
            advance();
            expr();
            expect(TokenKind::rparen, "')'");
            return;
        case TokenKind::identifier: {
            const Token id = current_;
            if (id.text == "x" || id.text == "y") {
                out_.push_back({id.text == "x" ? Op::var_x : Op::var_y});
                advance();
                return;
            }
            const Op fn = lookup_function(id.text);
            if (fn == Op::number) {
                throw ParseError(ParseError::Kind::unknown_identifier, id.position, std::string(id.text),
                                 "unknown identifier '" + std::string(id.text) + "'");
            }
            advance();
            expect(TokenKind::lparen, "'(' after function name");
            expr();
            expect(TokenKind::rparen, "')'");
            out_.push_back({fn});
            return;
        }
        default: unexpected();
        }
    }

    static Op lookup_function(std::string_view name) {
        for (Op op : {Op::exp, Op::log, Op::sin, Op::cos, Op::abs, Op::sqrt}) {
            if (function_name(op) == name) return op;
        }
        return Op::number;
    }

    Lexer lexer_;
    Token current_;
    std::vector<Node> out_;
};

} // namespace detail

inline Expression parse(std::string_view source) { return Expression(detail::Parser(source).run()); }

// ----------------------------------------------------------------------------
// Mixed partial derivative
// ----------------------------------------------------------------------------

struct DerivativeMethod {
    enum class Kind { dual, central_fd };

    Kind kind = Kind::dual;
    double step = 0.0; // central_fd only; 0 selects the default step

    static DerivativeMethod exact() { return {}; }
    static DerivativeMethod central_fd(double h = 0.0) { return {Kind::central_fd, h}; }
};

/// cbrt(machine epsilon) scaled by the size of the point.
inline double default_fd_step(double x, double y) {
    return std::cbrt(std::numeric_limits<double>::epsilon()) * std::max({1.0, std::fabs(x), std::fabs(y)});
}

/// d2f/dxdy at (x, y).
inline double mixed_partial(const Expression& e, double x, double y,
                            DerivativeMethod method = DerivativeMethod::exact()) {
    if (method.kind == DerivativeMethod::Kind::dual) return eval_dual(e, x, y).dxy;

    const double h = method.step > 0.0 ? method.step : default_fd_step(x, y);
    const double pp = e(x + h, y + h);
    const double pm = e(x + h, y - h);
    const double mp = e(x - h, y + h);
    const double mm = e(x - h, y - h);
    return (pp - pm - mp + mm) / (4.0 * h * h);
}

} // namespace hadamard
