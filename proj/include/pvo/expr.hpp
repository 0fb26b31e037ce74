#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "pvo/polynomial.hpp"
#include "pvo/util.hpp"

namespace pvo {

// Raised by the constraint/expression parser; carries the 0-based character
// position where parsing failed.
struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

// Expression tree over x1..xn with {+, -, *, integer ^, exp}. No division,
// so every tree is finite-valued and continuous on all of R^n.
class Expr {
public:
    enum class Kind { Const, Var, Add, Sub, Mul, Neg, Pow, Exp };

    using Ptr = std::shared_ptr<const Expr>;

    static Ptr constant(double v);
    static Ptr variable(int index);  // 0-based
    static Ptr add(Ptr a, Ptr b);
    static Ptr sub(Ptr a, Ptr b);
    static Ptr mul(Ptr a, Ptr b);
    static Ptr neg(Ptr a);
    static Ptr pow(Ptr a, int exponent);  // exponent >= 0
    static Ptr exp(Ptr a);

    Kind kind() const { return kind_; }
    double value() const { return value_; }
    int varIndex() const { return var_index_; }
    int exponent() const { return exponent_; }
    const Ptr& left() const { return left_; }
    const Ptr& right() const { return right_; }

    double eval(const Vec& x) const;

    // Highest variable index referenced, plus one (0 for constants).
    int minDimension() const;

    // True iff the tree contains no exp node.
    bool isPolynomial() const;

private:
    Expr(Kind k) : kind_(k) {}

    Kind kind_;
    double value_ = 0.0;
    int var_index_ = -1;
    int exponent_ = 0;
    Ptr left_, right_;
};

// Parses an expression over `x1..xn`, numeric literals, `+ - * ^` and
// `exp(...)`, with parentheses. Implicit multiplication is not supported;
// `^` takes a nonnegative integer literal exponent.
Expr::Ptr parseExpr(const std::string& text);

// Parses a constraint string, normalizing `lhs <= rhs`, `lhs >= rhs`, and
// `lhs = rhs` to one or two expressions e with meaning e <= 0.
std::vector<Expr::Ptr> parseConstraint(const std::string& text);

// Expands a purely polynomial tree into a Polynomial of the given dimension.
// Throws std::invalid_argument if the tree contains exp or references a
// variable beyond the dimension.
Polynomial exprToPolynomial(const Expr::Ptr& e, int dimension);

}  // namespace pvo
