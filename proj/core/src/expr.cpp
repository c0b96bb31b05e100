#include "sdgreen/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace sdgreen {

struct Expression::Node {
    enum class Kind { Number, VarX, VarY, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp };
    Kind kind;
    double number = 0.0;
    std::unique_ptr<Node> a, b;
};

namespace detail {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    using N = std::unique_ptr<Expression::Node>;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& what) { throw ExprError(pos, what); }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    N make(Expression::Node::Kind k, N a = nullptr, N b = nullptr) {
        auto n = std::make_unique<Expression::Node>();
        n->kind = k;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    N parse_expression() {
        N left = parse_term();
        for (;;) {
            if (eat('+'))
                left = make(Expression::Node::Kind::Add, std::move(left), parse_term());
            else if (eat('-'))
                left = make(Expression::Node::Kind::Sub, std::move(left), parse_term());
            else
                return left;
        }
    }

    N parse_term() {
        N left = parse_unary();
        for (;;) {
            if (eat('*'))
                left = make(Expression::Node::Kind::Mul, std::move(left), parse_unary());
            else if (eat('/'))
                left = make(Expression::Node::Kind::Div, std::move(left), parse_unary());
            else
                return left;
        }
    }

    N parse_unary() {
        if (eat('-')) return make(Expression::Node::Kind::Neg, parse_unary());
        if (eat('+')) return parse_unary();
        return parse_power();
    }

    N parse_power() {
        N base = parse_primary();
        if (eat('^'))  // right-associative
            return make(Expression::Node::Kind::Pow, std::move(base), parse_unary());
        return base;
    }

    N parse_primary() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        const char c = s[pos];
        if (c == '(') {
            ++pos;
            N e = parse_expression();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s.c_str() + pos;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin) fail("malformed number");
            pos += static_cast<std::size_t>(end - begin);
            auto n = make(Expression::Node::Kind::Number);
            n->number = v;
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
            const std::string name = s.substr(start, pos - start);
            if (name == "x") return make(Expression::Node::Kind::VarX);
            if (name == "y") return make(Expression::Node::Kind::VarY);
            Expression::Node::Kind k;
            if (name == "sin")
                k = Expression::Node::Kind::Sin;
            else if (name == "cos")
                k = Expression::Node::Kind::Cos;
            else if (name == "exp")
                k = Expression::Node::Kind::Exp;
            else {
                pos = start;
                fail("unknown identifier '" + name + "'");
            }
            if (!eat('(')) fail("expected '(' after function name");
            N arg = parse_expression();
            if (!eat(')')) fail("expected ')'");
            return make(k, std::move(arg));
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace detail

Expression Expression::parse(const std::string& text) {
    detail::Parser p{text};
    auto root = p.parse_expression();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return Expression(std::move(root));
}

namespace {

double eval_node(const Expression::Node&, double, double);

}  // namespace

Expression::Expression(std::unique_ptr<Node> root) : root_(std::move(root)) {}
Expression::Expression(Expression&&) noexcept = default;
Expression& Expression::operator=(Expression&&) noexcept = default;
Expression::~Expression() = default;

namespace {

double eval_node(const Expression::Node& n, double x, double y) {
    using K = Expression::Node::Kind;
    switch (n.kind) {
        case K::Number: return n.number;
        case K::VarX: return x;
        case K::VarY: return y;
        case K::Add: return eval_node(*n.a, x, y) + eval_node(*n.b, x, y);
        case K::Sub: return eval_node(*n.a, x, y) - eval_node(*n.b, x, y);
        case K::Mul: return eval_node(*n.a, x, y) * eval_node(*n.b, x, y);
        case K::Div: return eval_node(*n.a, x, y) / eval_node(*n.b, x, y);
        case K::Pow: return std::pow(eval_node(*n.a, x, y), eval_node(*n.b, x, y));
        case K::Neg: return -eval_node(*n.a, x, y);
        case K::Sin: return std::sin(eval_node(*n.a, x, y));
        case K::Cos: return std::cos(eval_node(*n.a, x, y));
        case K::Exp: return std::exp(eval_node(*n.a, x, y));
    }
    return 0.0;
}

std::string print_node(const Expression::Node& n) {
    using K = Expression::Node::Kind;
    char buf[48];
    switch (n.kind) {
        case K::Number:
            std::snprintf(buf, sizeof buf, "%.17g", n.number);
            return buf;
        case K::VarX: return "x";
        case K::VarY: return "y";
        case K::Add: return "(" + print_node(*n.a) + "+" + print_node(*n.b) + ")";
        case K::Sub: return "(" + print_node(*n.a) + "-" + print_node(*n.b) + ")";
        case K::Mul: return "(" + print_node(*n.a) + "*" + print_node(*n.b) + ")";
        case K::Div: return "(" + print_node(*n.a) + "/" + print_node(*n.b) + ")";
        case K::Pow: return "(" + print_node(*n.a) + "^" + print_node(*n.b) + ")";
        case K::Neg: return "(-" + print_node(*n.a) + ")";
        case K::Sin: return "sin(" + print_node(*n.a) + ")";
        case K::Cos: return "cos(" + print_node(*n.a) + ")";
        case K::Exp: return "exp(" + print_node(*n.a) + ")";
    }
    return "?";
}

}  // namespace

double Expression::eval(double x, double y) const { return eval_node(*root_, x, y); }

std::string Expression::to_string() const { return print_node(*root_); }

}  // namespace sdgreen
