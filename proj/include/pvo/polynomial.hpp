#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pvo/util.hpp"

namespace pvo {

// Degree of the zero polynomial. Every operation whose mathematics assumes
// degree >= 1 rejects it explicitly.
inline constexpr int kZeroPolyDegree = -1;

struct Monomial {
    std::vector<int> exponents;
    double coeff = 0.0;
};

// Raised by weightedLeadingForm when the top-degree terms cancel exactly;
// callers fall back to the recomputed-degree route.
struct LeadingCancellation : std::runtime_error {
    LeadingCancellation() : std::runtime_error("leading terms cancel in the weighted sum") {}
};

// Sparse multivariate polynomial with double coefficients. Terms are kept in
// a map keyed by the exponent tuple (lexicographic order), so equality is a
// direct comparison and serialization is stable. Immutable after
// construction; all operations return new values.
class Polynomial {
public:
    using TermMap = std::map<std::vector<int>, double>;

    explicit Polynomial(int dimension);

    static Polynomial fromTerms(int dimension, const std::vector<Monomial>& terms);
    static Polynomial constant(int dimension, double value);
    static Polynomial variable(int dimension, int index);  // x_{index}, 0-based

    int dimension() const { return dimension_; }
    int degree() const { return degree_; }
    bool isZero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    std::size_t termCount() const { return terms_.size(); }

    double eval(const Vec& x) const;
    Vec grad(const Vec& x) const;

    // Sum of all terms of total degree exactly deg; requires degree >= 1.
    Polynomial leadingForm() const;
    bool isHomogeneous() const;

    // Euclidean norm of the coefficient vector.
    double coeffNorm() const;

    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial scaled(double s) const;

    bool operator==(const Polynomial& other) const {
        return dimension_ == other.dimension_ && terms_ == other.terms_;
    }

    nlohmann::json toJson() const;
    static Polynomial fromJson(int dimension, const nlohmann::json& j);

    std::string toString() const;

private:
    int dimension_;
    int degree_ = kZeroPolyDegree;
    TermMap terms_;

    void insertTerm(const std::vector<int>& exponents, double coeff);
    void recomputeDegree();
    friend class PolynomialBuilder;
};

// Accumulates terms with merging; used by parsing and arithmetic.
class PolynomialBuilder {
public:
    explicit PolynomialBuilder(int dimension) : poly_(dimension) {}
    void add(const std::vector<int>& exponents, double coeff);
    void addAll(const Polynomial& p, double scale = 1.0);
    Polynomial build();

private:
    Polynomial poly_;
};

// f = (f_1, ..., f_q) sharing one ambient dimension; each component must
// have degree >= 1.
class VectorObjective {
public:
    explicit VectorObjective(std::vector<Polynomial> components);

    int dimension() const { return components_.front().dimension(); }
    int size() const { return static_cast<int>(components_.size()); }
    const Polynomial& component(int i) const { return components_.at(i); }
    const std::vector<Polynomial>& components() const { return components_; }
    const std::vector<int>& degreeVector() const { return degrees_; }

    Vec eval(const Vec& x) const;
    VectorObjective leadingForms() const;

    nlohmann::json toJson() const;

private:
    std::vector<Polynomial> components_;
    std::vector<int> degrees_;
};

// Sum_i lambda_i f_i with exact term merging. Cancellation is permitted; the
// degree is recomputed. lambda must be nonnegative and not all zero.
Polynomial weightedSum(const VectorObjective& f, const Vec& lambda);

// Leading form of the weighted sum via the top-degree index set
// I = argmax_{lambda_i != 0} d_i. Throws LeadingCancellation if the sum over
// I is identically zero.
Polynomial weightedLeadingForm(const VectorObjective& f, const Vec& lambda);

// p + g. When deg g < deg p the leading form is unchanged coefficient-exactly.
Polynomial perturb(const Polynomial& p, const Polynomial& g);

// Dense random polynomial of degree exactly d with coefficients uniform in
// [-scale, scale]; the top block is resampled until some degree-d term is
// nonzero. Deterministic per rng state.
Polynomial randomPolynomial(int dimension, int degree, Rng& rng, double scale = 1.0);

// All exponent tuples of total degree exactly d (lexicographic order).
std::vector<std::vector<int>> exponentsOfDegree(int dimension, int degree);

}  // namespace pvo
