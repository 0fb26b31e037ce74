#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pvo/config.hpp"
#include "pvo/regularity.hpp"
#include "pvo/sets.hpp"

namespace pvo {

// Empirical stability of a weighted-sum recession classification under random
// same-degree perturbations of the objective, scaled to prescribed
// coefficient norms. Only ZeroOnly/Empty bases are admitted: those are the
// classes stable under small perturbations; Unbounded has no such guarantee
// and the probe refuses it.
struct StabilityRecord {
    Trichotomy base;
    std::vector<double> eps_tested;          // positive, strictly increasing
    int trials_per_eps = 0;
    std::optional<double> largest_stable_eps;  // largest eps with zero flips
    struct Flip {
        double eps = 0.0;
        int trial = 0;
        std::optional<VectorObjective> perturbed;
        TriTag new_tag = TriTag::ZeroOnly;
    };
    std::optional<Flip> flip;  // first flip encountered (smallest eps)

    nlohmann::json toJson() const;
};

StabilityRecord stabilityProbe(const FeasibleSet& K, const VectorObjective& f,
                               const SChoice& choice, const Vec& lambda,
                               const std::vector<double>& eps_schedule, int trials_per_eps,
                               std::uint64_t seed, const SamplerConfig& cfg);

// Perturbs each component by a random polynomial of strictly lower degree
// and checks that the leading forms (hence the classification on the fixed
// recession carrier) are exactly unchanged. Returns the conjunction over all
// trials.
bool lowerOrderInvarianceCheck(const FeasibleSet& K, const VectorObjective& f,
                               const SChoice& choice, const Vec& lambda, int trials,
                               std::uint64_t seed, const SamplerConfig& cfg);

// Fraction of random objectives with the given degree vector classifying
// zero-regular on the given polyhedral cone (whole-set recession carrier).
// The fraction is a sampled proxy only: a high value is consistent with
// genericity of the regular class, it does not confirm it.
struct GenericityReport {
    int dimension = 0;
    std::vector<int> degrees;
    int samples = 0;
    int regular_count = 0;
    double fraction = 0.0;
    std::vector<bool> per_instance;
    std::uint64_t seed = 0;

    nlohmann::json toJson() const;
};

GenericityReport genericitySample(int dimension, const std::vector<int>& degrees,
                                  const Polyhedron& cone, int samples, std::uint64_t seed,
                                  const SamplerConfig& cfg);

// Reproduces the non-openness of weak regularity: f = (x1, x2) on
// K = {x1 >= 0} with xbar = (0,0) is weakly regular (strict recession set
// empty on the sublevel carrier), while every member of the converging
// family f^n = (x2, x1 - x2/n) has an unbounded strict recession set on the
// whole-set carrier, so none is weakly regular.
struct WeakNonopenReport {
    RegularityReport base;
    struct Variant {
        int n = 0;
        RegularityReport report;
    };
    std::vector<Variant> variants;
    bool base_weakly_regular = false;
    bool all_variants_nonregular = false;

    nlohmann::json toJson() const;
};

WeakNonopenReport weakNonopenDemo(const SamplerConfig& cfg);

// Grid evidence of Pareto nonexistence inside a box: every feasible grid
// candidate in candidate_box that is nondominated within the box is tested
// against a strict dominator search over escape_box. fraction_dominated = 1
// is evidence (never proof) that the box holds no weakly efficient point.
struct NonexistenceReport {
    int feasible_candidates = 0;
    int nondominated_candidates = 0;
    int dominated_by_escape = 0;
    double fraction_dominated = 0.0;
    // one (dominator, value) witness per dominated candidate, first few kept
    std::vector<std::pair<Vec, Vec>> escape_curve;

    nlohmann::json toJson() const;
};

NonexistenceReport nonexistenceDemo(const FeasibleSet& K, const VectorObjective& f,
                                    const Vec& candidate_lo, const Vec& candidate_hi,
                                    const Vec& escape_lo, const Vec& escape_hi,
                                    int grid_per_axis, const SolverConfig& cfg);

}  // namespace pvo
