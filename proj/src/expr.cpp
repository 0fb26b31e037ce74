#include "pvo/expr.hpp"

#include <cctype>
#include <cmath>

namespace pvo {

Expr::Ptr Expr::constant(double v) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Const));
    e->value_ = v;
    return e;
}

Expr::Ptr Expr::variable(int index) {
    if (index < 0) throw std::invalid_argument("negative variable index");
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Var));
    e->var_index_ = index;
    return e;
}

Expr::Ptr Expr::add(Ptr a, Ptr b) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Add));
    e->left_ = std::move(a);
    e->right_ = std::move(b);
    return e;
}

Expr::Ptr Expr::sub(Ptr a, Ptr b) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Sub));
    e->left_ = std::move(a);
    e->right_ = std::move(b);
    return e;
}

Expr::Ptr Expr::mul(Ptr a, Ptr b) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Mul));
    e->left_ = std::move(a);
    e->right_ = std::move(b);
    return e;
}

Expr::Ptr Expr::neg(Ptr a) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Neg));
    e->left_ = std::move(a);
    return e;
}

Expr::Ptr Expr::pow(Ptr a, int exponent) {
    if (exponent < 0) throw std::invalid_argument("negative exponent in expression");
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Pow));
    e->left_ = std::move(a);
    e->exponent_ = exponent;
    return e;
}

Expr::Ptr Expr::exp(Ptr a) {
    auto e = std::shared_ptr<Expr>(new Expr(Kind::Exp));
    e->left_ = std::move(a);
    return e;
}

double Expr::eval(const Vec& x) const {
    switch (kind_) {
        case Kind::Const: return value_;
        case Kind::Var:
            if (var_index_ >= static_cast<int>(x.size()))
                throw std::invalid_argument("point dimension too small for expression");
            return x[var_index_];
        case Kind::Add: return left_->eval(x) + right_->eval(x);
        case Kind::Sub: return left_->eval(x) - right_->eval(x);
        case Kind::Mul: return left_->eval(x) * right_->eval(x);
        case Kind::Neg: return -left_->eval(x);
        case Kind::Pow: {
            double b = left_->eval(x), r = 1.0;
            for (int i = 0; i < exponent_; ++i) r *= b;
            return r;
        }
        case Kind::Exp: return std::exp(left_->eval(x));
    }
    throw std::logic_error("unreachable expression kind");
}

int Expr::minDimension() const {
    switch (kind_) {
        case Kind::Const: return 0;
        case Kind::Var: return var_index_ + 1;
        case Kind::Neg:
        case Kind::Pow:
        case Kind::Exp: return left_->minDimension();
        default: return std::max(left_->minDimension(), right_->minDimension());
    }
}

bool Expr::isPolynomial() const {
    switch (kind_) {
        case Kind::Const:
        case Kind::Var: return true;
        case Kind::Exp: return false;
        case Kind::Neg:
        case Kind::Pow: return left_->isPolynomial();
        default: return left_->isPolynomial() && right_->isPolynomial();
    }
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    Expr::Ptr parseFull() {
        Expr::Ptr e = parseSum();
        skipSpace();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;

    void skipSpace() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skipSpace();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    Expr::Ptr parseSum() {
        Expr::Ptr e = parseTerm();
        for (;;) {
            if (accept('+')) e = Expr::add(e, parseTerm());
            else if (accept('-')) e = Expr::sub(e, parseTerm());
            else return e;
        }
    }

    Expr::Ptr parseTerm() {
        Expr::Ptr e = parseUnary();
        while (accept('*')) e = Expr::mul(e, parseUnary());
        return e;
    }

    Expr::Ptr parseUnary() {
        if (accept('-')) return Expr::neg(parseUnary());
        if (accept('+')) return parseUnary();
        return parsePower();
    }

    Expr::Ptr parsePower() {
        Expr::Ptr base = parseAtom();
        if (accept('^')) {
            skipSpace();
            std::size_t start = pos_;
            int e = parseIntLiteral();
            if (e < 0) throw ParseError("exponent must be a nonnegative integer", start);
            return Expr::pow(base, e);
        }
        return base;
    }

    int parseIntLiteral() {
        skipSpace();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected integer exponent", start);
        return std::stoi(text_.substr(start, pos_ - start));
    }

    Expr::Ptr parseAtom() {
        skipSpace();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr::Ptr e = parseSum();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parseNumber();
        if (std::isalpha(static_cast<unsigned char>(c))) return parseIdentifier();
        throw ParseError("unexpected character", pos_);
    }

    Expr::Ptr parseNumber() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        // optional exponent part, e.g. 1e-3
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            } else {
                pos_ = save;  // 'e' belonged to an identifier context; not valid here
            }
        }
        try {
            return Expr::constant(std::stod(text_.substr(start, pos_ - start)));
        } catch (const std::exception&) {
            throw ParseError("malformed numeric literal", start);
        }
    }

    Expr::Ptr parseIdentifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_]))))
            ++pos_;
        std::string name = text_.substr(start, pos_ - start);
        if (name == "exp") {
            expect('(');
            Expr::Ptr inner = parseSum();
            expect(')');
            return Expr::exp(inner);
        }
        if (name.size() >= 2 && name[0] == 'x') {
            bool digits = true;
            for (std::size_t i = 1; i < name.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
            if (digits) {
                int idx = std::stoi(name.substr(1));
                if (idx < 1) throw ParseError("variable indices start at x1", start);
                return Expr::variable(idx - 1);
            }
        }
        throw ParseError("unknown identifier '" + name + "'", start);
    }
};

}  // namespace

Expr::Ptr parseExpr(const std::string& text) {
    return Parser(text).parseFull();
}

std::vector<Expr::Ptr> parseConstraint(const std::string& text) {
    // Find a top-level comparison operator; split and normalize to <= 0.
    std::size_t depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '(') ++depth;
        else if (c == ')') {
            if (depth == 0) throw ParseError("unbalanced ')'", i);
            --depth;
        } else if (depth == 0 && (c == '<' || c == '>' || c == '=')) {
            std::string lhs = text.substr(0, i);
            std::size_t j = i + 1;
            if (c != '=' && j < text.size() && text[j] == '=') ++j;
            else if (c != '=')
                throw ParseError("strict inequalities are not supported; use <= or >=", i);
            std::string rhs = text.substr(j);
            Expr::Ptr l = parseExpr(lhs);
            Expr::Ptr r = parseExpr(rhs);
            std::vector<Expr::Ptr> out;
            if (c == '<') out.push_back(Expr::sub(l, r));
            else if (c == '>') out.push_back(Expr::sub(r, l));
            else {
                out.push_back(Expr::sub(l, r));
                out.push_back(Expr::sub(r, l));
            }
            return out;
        }
    }
    // No comparison: interpret the bare expression as expr <= 0.
    return {parseExpr(text)};
}

namespace {

Polynomial toPoly(const Expr::Ptr& e, int dimension) {
    switch (e->kind()) {
        case Expr::Kind::Const: return Polynomial::constant(dimension, e->value());
        case Expr::Kind::Var:
            if (e->varIndex() >= dimension)
                throw std::invalid_argument("expression references variable beyond dimension");
            return Polynomial::variable(dimension, e->varIndex());
        case Expr::Kind::Add: return toPoly(e->left(), dimension) + toPoly(e->right(), dimension);
        case Expr::Kind::Sub: return toPoly(e->left(), dimension) - toPoly(e->right(), dimension);
        case Expr::Kind::Neg: return toPoly(e->left(), dimension).scaled(-1.0);
        case Expr::Kind::Mul: {
            Polynomial a = toPoly(e->left(), dimension);
            Polynomial b = toPoly(e->right(), dimension);
            PolynomialBuilder out(dimension);
            for (const auto& [ea, ca] : a.terms())
                for (const auto& [eb, cb] : b.terms()) {
                    std::vector<int> m(dimension);
                    for (int k = 0; k < dimension; ++k) m[k] = ea[k] + eb[k];
                    out.add(m, ca * cb);
                }
            return out.build();
        }
        case Expr::Kind::Pow: {
            Polynomial base = toPoly(e->left(), dimension);
            Polynomial acc = Polynomial::constant(dimension, 1.0);
            for (int i = 0; i < e->exponent(); ++i) {
                PolynomialBuilder out(dimension);
                for (const auto& [ea, ca] : acc.terms())
                    for (const auto& [eb, cb] : base.terms()) {
                        std::vector<int> m(dimension);
                        for (int k = 0; k < dimension; ++k) m[k] = ea[k] + eb[k];
                        out.add(m, ca * cb);
                    }
                acc = out.build();
            }
            return acc;
        }
        case Expr::Kind::Exp:
            throw std::invalid_argument("exp(...) is not a polynomial");
    }
    throw std::logic_error("unreachable expression kind");
}

}  // namespace

Polynomial exprToPolynomial(const Expr::Ptr& e, int dimension) {
    return toPoly(e, dimension);
}

}  // namespace pvo
