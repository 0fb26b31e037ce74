#include "pvo/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace pvo {

namespace {

int totalDegree(const std::vector<int>& exponents) {
    return std::accumulate(exponents.begin(), exponents.end(), 0);
}

double powInt(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

Polynomial::Polynomial(int dimension) : dimension_(dimension) {
    if (dimension < 1) throw std::invalid_argument("polynomial dimension must be >= 1");
}

Polynomial Polynomial::fromTerms(int dimension, const std::vector<Monomial>& terms) {
    Polynomial p(dimension);
    for (const Monomial& m : terms) p.insertTerm(m.exponents, m.coeff);
    p.recomputeDegree();
    return p;
}

Polynomial Polynomial::constant(int dimension, double value) {
    Polynomial p(dimension);
    if (value != 0.0) p.insertTerm(std::vector<int>(dimension, 0), value);
    p.recomputeDegree();
    return p;
}

Polynomial Polynomial::variable(int dimension, int index) {
    if (index < 0 || index >= dimension) throw std::invalid_argument("variable index out of range");
    std::vector<int> e(dimension, 0);
    e[index] = 1;
    Polynomial p(dimension);
    p.insertTerm(e, 1.0);
    p.recomputeDegree();
    return p;
}

void Polynomial::insertTerm(const std::vector<int>& exponents, double coeff) {
    if (static_cast<int>(exponents.size()) != dimension_)
        throw std::invalid_argument("exponent tuple length does not match dimension");
    for (int e : exponents)
        if (e < 0) throw std::invalid_argument("negative exponent");
    if (coeff == 0.0) return;
    auto [it, inserted] = terms_.emplace(exponents, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0.0) terms_.erase(it);
    }
}

void Polynomial::recomputeDegree() {
    degree_ = kZeroPolyDegree;
    for (const auto& [e, c] : terms_) degree_ = std::max(degree_, totalDegree(e));
}

double Polynomial::eval(const Vec& x) const {
    if (static_cast<int>(x.size()) != dimension_)
        throw std::invalid_argument("point dimension mismatch in eval");
    double s = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c;
        for (int j = 0; j < dimension_; ++j)
            if (e[j] != 0) t *= powInt(x[j], e[j]);
        s += t;
    }
    return s;
}

Vec Polynomial::grad(const Vec& x) const {
    if (static_cast<int>(x.size()) != dimension_)
        throw std::invalid_argument("point dimension mismatch in grad");
    Vec g(dimension_, 0.0);
    for (const auto& [e, c] : terms_) {
        for (int j = 0; j < dimension_; ++j) {
            if (e[j] == 0) continue;
            double t = c * e[j] * powInt(x[j], e[j] - 1);
            for (int k = 0; k < dimension_; ++k)
                if (k != j && e[k] != 0) t *= powInt(x[k], e[k]);
            g[j] += t;
        }
    }
    return g;
}

Polynomial Polynomial::leadingForm() const {
    if (degree_ < 1)
        throw std::invalid_argument("leading form requires degree >= 1");
    Polynomial p(dimension_);
    for (const auto& [e, c] : terms_)
        if (totalDegree(e) == degree_) p.insertTerm(e, c);
    p.recomputeDegree();
    return p;
}

bool Polynomial::isHomogeneous() const {
    if (terms_.empty()) return true;
    for (const auto& [e, c] : terms_)
        if (totalDegree(e) != degree_) return false;
    return true;
}

double Polynomial::coeffNorm() const {
    double s = 0.0;
    for (const auto& [e, c] : terms_) s += c * c;
    return std::sqrt(s);
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    if (dimension_ != other.dimension_) throw std::invalid_argument("dimension mismatch in +");
    PolynomialBuilder b(dimension_);
    b.addAll(*this);
    b.addAll(other);
    return b.build();
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
    if (dimension_ != other.dimension_) throw std::invalid_argument("dimension mismatch in -");
    PolynomialBuilder b(dimension_);
    b.addAll(*this);
    b.addAll(other, -1.0);
    return b.build();
}

Polynomial Polynomial::scaled(double s) const {
    PolynomialBuilder b(dimension_);
    b.addAll(*this, s);
    return b.build();
}

nlohmann::json Polynomial::toJson() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : terms_)
        arr.push_back({{"exponents", e}, {"coeff", c}});
    return arr;
}

Polynomial Polynomial::fromJson(int dimension, const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("polynomial json must be an array of terms");
    Polynomial p(dimension);
    for (const auto& t : j) {
        std::vector<int> e = t.at("exponents").get<std::vector<int>>();
        double c = t.at("coeff").get<double>();
        if (c == 0.0) throw std::invalid_argument("zero coefficient in polynomial record");
        if (p.terms_.count(e)) throw std::invalid_argument("duplicate exponent tuple in polynomial record");
        p.insertTerm(e, c);
    }
    p.recomputeDegree();
    return p;
}

std::string Polynomial::toString() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        double coeff = c;
        if (!first) {
            os << (coeff < 0 ? " - " : " + ");
            coeff = std::abs(coeff);
        }
        first = false;
        bool hasVar = totalDegree(e) > 0;
        if (!hasVar || coeff != 1.0) os << coeff;
        bool star = !hasVar || coeff != 1.0;
        for (int j = 0; j < dimension_; ++j) {
            if (e[j] == 0) continue;
            if (star) os << "*";
            os << "x" << (j + 1);
            if (e[j] > 1) os << "^" << e[j];
            star = true;
        }
    }
    return os.str();
}

void PolynomialBuilder::add(const std::vector<int>& exponents, double coeff) {
    poly_.insertTerm(exponents, coeff);
}

void PolynomialBuilder::addAll(const Polynomial& p, double scale) {
    if (p.dimension() != poly_.dimension())
        throw std::invalid_argument("dimension mismatch in builder");
    for (const auto& [e, c] : p.terms()) poly_.insertTerm(e, scale * c);
}

Polynomial PolynomialBuilder::build() {
    poly_.recomputeDegree();
    return poly_;
}

VectorObjective::VectorObjective(std::vector<Polynomial> components)
    : components_(std::move(components)) {
    if (components_.empty()) throw std::invalid_argument("vector objective needs at least one component");
    int n = components_.front().dimension();
    for (const Polynomial& p : components_) {
        if (p.dimension() != n) throw std::invalid_argument("objective components must share dimension");
        if (p.degree() < 1)
            throw std::invalid_argument("every objective component must have degree >= 1");
        degrees_.push_back(p.degree());
    }
}

Vec VectorObjective::eval(const Vec& x) const {
    Vec v;
    v.reserve(components_.size());
    for (const Polynomial& p : components_) v.push_back(p.eval(x));
    return v;
}

VectorObjective VectorObjective::leadingForms() const {
    std::vector<Polynomial> lf;
    lf.reserve(components_.size());
    for (const Polynomial& p : components_) lf.push_back(p.leadingForm());
    return VectorObjective(std::move(lf));
}

nlohmann::json VectorObjective::toJson() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const Polynomial& p : components_) arr.push_back(p.toJson());
    return arr;
}

static void checkWeights(const VectorObjective& f, const Vec& lambda) {
    if (static_cast<int>(lambda.size()) != f.size())
        throw std::invalid_argument("weight vector length does not match objective count");
    bool any = false;
    for (double l : lambda) {
        if (l < 0.0) throw std::invalid_argument("negative weight");
        if (l != 0.0) any = true;
    }
    if (!any) throw std::invalid_argument("all-zero weight vector");
}

Polynomial weightedSum(const VectorObjective& f, const Vec& lambda) {
    checkWeights(f, lambda);
    PolynomialBuilder b(f.dimension());
    for (int i = 0; i < f.size(); ++i)
        if (lambda[i] != 0.0) b.addAll(f.component(i), lambda[i]);
    return b.build();
}

Polynomial weightedLeadingForm(const VectorObjective& f, const Vec& lambda) {
    checkWeights(f, lambda);
    int dmax = 0;
    for (int i = 0; i < f.size(); ++i)
        if (lambda[i] != 0.0) dmax = std::max(dmax, f.degreeVector()[i]);
    PolynomialBuilder b(f.dimension());
    for (int i = 0; i < f.size(); ++i)
        if (lambda[i] != 0.0 && f.degreeVector()[i] == dmax)
            b.addAll(f.component(i).leadingForm(), lambda[i]);
    Polynomial lf = b.build();
    if (lf.isZero()) throw LeadingCancellation();
    return lf;
}

Polynomial perturb(const Polynomial& p, const Polynomial& g) {
    if (p.dimension() != g.dimension()) throw std::invalid_argument("dimension mismatch in perturb");
    return p + g;
}

std::vector<std::vector<int>> exponentsOfDegree(int dimension, int degree) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(dimension, 0);
    // lexicographic enumeration by recursion on the first variable
    struct Rec {
        int dim;
        std::vector<std::vector<int>>& out;
        std::vector<int>& cur;
        void go(int idx, int remaining) {
            if (idx == dim - 1) {
                cur[idx] = remaining;
                out.push_back(cur);
                return;
            }
            for (int e = remaining; e >= 0; --e) {
                cur[idx] = e;
                go(idx + 1, remaining - e);
            }
        }
    } rec{dimension, out, cur};
    rec.go(0, degree);
    return out;
}

Polynomial randomPolynomial(int dimension, int degree, Rng& rng, double scale) {
    if (dimension < 1 || degree < 1)
        throw std::invalid_argument("randomPolynomial requires n >= 1 and d >= 1");
    PolynomialBuilder b(dimension);
    for (int d = 0; d < degree; ++d)
        for (const auto& e : exponentsOfDegree(dimension, d))
            b.add(e, rng.uniform(-scale, scale));
    // top block: resample until some degree-d coefficient is nonzero
    auto top = exponentsOfDegree(dimension, degree);
    for (;;) {
        std::vector<double> coeffs;
        bool any = false;
        for (std::size_t i = 0; i < top.size(); ++i) {
            double c = rng.uniform(-scale, scale);
            coeffs.push_back(c);
            if (c != 0.0) any = true;
        }
        if (!any) continue;
        for (std::size_t i = 0; i < top.size(); ++i) b.add(top[i], coeffs[i]);
        break;
    }
    return b.build();
}

}  // namespace pvo
