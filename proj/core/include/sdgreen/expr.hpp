#pragma once
#include <memory>
#include <stdexcept>
#include <string>

namespace sdgreen {

/// Parse failure with the 0-based position in the source text.
class ExprError : public std::runtime_error {
public:
    ExprError(std::size_t pos, const std::string& what)
        : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + what),
          position(pos) {}
    std::size_t position;
};

/// Minimal arithmetic over x and y: numbers, + - * / ^, parentheses, unary
/// minus, and the functions sin, cos, exp. Enough to describe load terms on
/// the command line.
class Expression {
public:
    struct Node;  // AST node, defined in the implementation

    static Expression parse(const std::string& text);
    double eval(double x, double y) const;
    std::string to_string() const;

    Expression(Expression&&) noexcept;
    Expression& operator=(Expression&&) noexcept;
    ~Expression();

private:
    explicit Expression(std::unique_ptr<Node> root);
    std::unique_ptr<Node> root_;
};

}  // namespace sdgreen
