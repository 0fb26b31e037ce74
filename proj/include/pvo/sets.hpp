#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pvo/config.hpp"
#include "pvo/expr.hpp"
#include "pvo/polynomial.hpp"
#include "pvo/util.hpp"

namespace pvo {

// Ax <= b. Rows are stored as given; constraint values are normalized by the
// row norm when violations are compared across constraints.
struct Polyhedron {
    Matrix A;
    Vec b;

    int dimension() const { return A.empty() ? 0 : static_cast<int>(A.front().size()); }
};

// Closed feasible set: either a polyhedron or a list of expression
// constraints e_i(x) <= 0 (which may contain exp). Nonemptiness is the
// caller's responsibility at load time (see findFeasiblePoint).
class FeasibleSet {
public:
    static FeasibleSet polyhedral(Polyhedron P);
    static FeasibleSet fromConstraints(int dimension, std::vector<Expr::Ptr> constraints);

    int dimension() const { return dimension_; }
    bool isPolyhedral() const { return poly_.has_value(); }
    const Polyhedron& polyhedron() const;
    const std::vector<Expr::Ptr>& constraints() const { return exprs_; }

    // max over constraints of the row-normalized violation, <= 0 iff feasible.
    double maxViolation(const Vec& x) const;
    bool contains(const Vec& x, double tol) const;

    // Appends constraints (moving to expression form if needed).
    FeasibleSet withExtraConstraints(const std::vector<Expr::Ptr>& extra) const;

private:
    FeasibleSet() = default;
    int dimension_ = 0;
    std::optional<Polyhedron> poly_;
    std::vector<Expr::Ptr> exprs_;  // always populated (polyhedron rows mirrored)
};

// K_xbar = {x in K : f(x) <= f(xbar)}. Throws if xbar is infeasible (beyond
// feas_tol).
FeasibleSet sublevelSet(const FeasibleSet& K, const VectorObjective& f, const Vec& xbar,
                        double feas_tol = 1e-9);

// Exact asymptotic cone of a polyhedron: {Ax <= 0}.
Polyhedron polyhedralAsymptoticCone(const Polyhedron& P);

// Numerical surrogate for v in K_infinity: for each scale t a feasible point
// near t*v must exist (penalty direct search from t*v), and the normalized
// distance ||x/t - v|| must fall within tol at the largest scales.
bool rayInCone(const FeasibleSet& K, const Vec& v, const SamplerConfig& cfg);

// Searches for a feasible point of K: tries 0, coordinate points, then
// penalty search from scattered starts. Throws std::runtime_error if none is
// found (the set is treated as empty -- a load error).
Vec findFeasiblePoint(const FeasibleSet& K, const SamplerConfig& cfg);

// Deterministic unit-sphere grid with the given angular resolution in
// degrees. n = 1 gives {+1, -1}; n in {2,3,4} use spherical coordinates.
// Throws for n > 4.
std::vector<Vec> unitSphereGrid(int dimension, double resolution_deg);

// Closed cone containing 0. Either exact polyhedral {Ax <= 0} or a sampled
// cone whose membership test is a numerical surrogate. Unit-sphere samples
// are computed once on demand and cached.
class Cone {
public:
    static Cone polyhedral(Polyhedron P);
    static Cone sampled(int dimension, std::function<bool(const Vec&)> membership,
                        std::string label);
    static Cone zero(int dimension);
    static Cone intersectWithLeadingSlice(const Cone& base, const VectorObjective& f,
                                          double tol);

    int dimension() const { return dimension_; }
    bool isPolyhedral() const { return poly_.has_value(); }
    const std::optional<Polyhedron>& polyhedron() const { return poly_; }
    const std::string& label() const { return label_; }

    // Whether containsDirection is inexpensive (exact row checks rather than
    // the multi-scale ray probe); used to decide if local refinement on the
    // sphere slice is worthwhile.
    bool cheapMembership() const { return cheap_membership_; }

    // True for v on the unit sphere (or any nonzero v; scaled internally).
    bool containsDirection(const Vec& v) const;

    // Unit-sphere grid points passing the membership test; deterministic
    // given the resolution. Cached per resolution.
    const std::vector<Vec>& sphereSamples(double resolution_deg) const;

private:
    Cone() = default;
    int dimension_ = 0;
    std::optional<Polyhedron> poly_;
    std::function<bool(const Vec&)> membership_;
    std::string label_;
    bool cheap_membership_ = false;
    mutable std::vector<std::pair<double, std::shared_ptr<std::vector<Vec>>>> cache_;
};

// Choice of the recession carrier S_infinity.
struct WholeSetCone {};
struct SublevelCone {
    Vec xbar;
};
struct LeadingSlice {};
using SChoice = std::variant<WholeSetCone, SublevelCone, LeadingSlice>;

SChoice sChoiceFromString(const std::string& name, const std::optional<Vec>& xbar);
std::string sChoiceName(const SChoice& choice);

// Builds S_infinity for the given choice. WholeSetCone: asymptotic cone of K
// (exact if polyhedral). SublevelCone: sampled cone over the sublevel set.
// LeadingSlice: K_infinity intersected with {f^inf(v) <= 0 componentwise}.
Cone sInfinity(const FeasibleSet& K, const VectorObjective& f, const SChoice& choice,
               const SamplerConfig& cfg);

enum class BoundedKind { Bounded, UnboundedWitness, Unknown };
struct BoundedProbeResult {
    BoundedKind kind = BoundedKind::Unknown;
    Vec direction;  // unit witness when UnboundedWitness
};

// Decides boundedness of K by scanning radius shells: a feasible point found
// on every shell with a stabilizing normalized direction is an unbounded
// witness; no feasible point beyond some radius (dense shell sampling plus
// local feasibility search) means bounded.
BoundedProbeResult boundedProbe(const FeasibleSet& K, const std::vector<double>& radii,
                                const SamplerConfig& cfg);

}  // namespace pvo
