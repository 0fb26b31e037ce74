#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pvo/config.hpp"
#include "pvo/sets.hpp"

namespace pvo {

enum class TriTag { ZeroOnly, Unbounded, Empty };

std::string triTagName(TriTag tag);

// Outcome of classifying a recession solution set on a cone's sphere slice:
// {0} only, an unbounded set (nonzero ray witness), or empty (certified by a
// strictly negative direction). min_value is the minimum of the deciding
// quantity over unit-sphere samples in the cone; tau is the value-scaled
// threshold; borderline flags minima within (tau, 2*tau] of zero.
struct Trichotomy {
    TriTag tag = TriTag::ZeroOnly;
    std::optional<Vec> witness;
    double min_value = std::numeric_limits<double>::infinity();
    double tau = 0.0;
    bool borderline = false;
    int sample_count = 0;

    nlohmann::json toJson() const;
};

// Minimum of h over the unit sphere intersected with C, classified against
// tau = 1e-6 * (1 + coeff_norm(h)): m > tau -> ZeroOnly; |m| <= tau ->
// Unbounded (argmin witness); m < -tau -> Empty. C = {0} gives ZeroOnly.
Trichotomy scalarRecessionClassify(const Polynomial& h, const Cone& C,
                                   const SamplerConfig& cfg);

// Brute-force pairwise domination filter over the cone's sphere samples;
// returns the nondominated unit directions (sorted lexicographically). An
// independent cross-check for the theorem-based classifiers; note that
// nonempty output does not certify a nonempty recession solution set, since
// positive scaling escapes the sphere.
enum class ParetoMode { Weak, Strict };
std::vector<Vec> sphereParetoOracle(const VectorObjective& F, const Cone& C,
                                    const SamplerConfig& cfg, ParetoMode mode);

// Classifies SOL^w(C, F) for componentwise-homogeneous F: Empty iff some
// sampled direction improves every component strictly below -tau (then 0 is
// not weakly efficient and emptiness follows); ZeroOnly iff every component
// classifies ZeroOnly; otherwise Unbounded with an oracle witness.
Trichotomy weakRecessionClassify(const VectorObjective& F, const Cone& C,
                                 const SamplerConfig& cfg);

// Classifies SOL^s(C, F). When the sampled precondition C subset {F <= 0}
// holds, the componentwise equivalence applies; otherwise classification
// falls back to a direct nondomination scan over {0} and scaled sphere
// samples, with precondition_ok = false.
struct StrictClassification {
    Trichotomy tri;
    bool precondition_ok = true;
};
StrictClassification strictRecessionClassify(const VectorObjective& F, const Cone& C,
                                             const SamplerConfig& cfg);

// Classifies the recession problem of f_lambda = sum lambda_i f_i on S. Uses
// the top-degree leading form; on exact cancellation it falls back to the
// leading form of the merged sum, and when the merged sum is identically
// zero the solution set is all of S (Unbounded on a nontrivial cone).
Trichotomy lambdaRecessionClassify(const VectorObjective& f, const Vec& lambda,
                                   const Cone& S, const SamplerConfig& cfg);

// Numerical test of I-section-boundedness from below: each f_i, i in I, is
// scanned over K_xbar restricted to growing boxes; a minimum that keeps
// deepening across scales is reported as unbounded below with the witness
// index.
struct SectionBoundedResult {
    bool bounded = true;
    std::vector<int> indices;
    std::vector<double> inf_values;        // observed inf per index (largest box)
    std::optional<int> diverging_index;

    nlohmann::json toJson() const;
};
SectionBoundedResult sectionBoundedProbe(const VectorObjective& f, const FeasibleSet& K,
                                         const Vec& xbar, const std::vector<int>& I,
                                         const SamplerConfig& scfg, const SolverConfig& vcfg);

// Full per-choice regularity assessment. The three verdicts follow the
// bounded-solution-set reading: a class counts as regular when its recession
// solution set is {0} or empty.
struct RegularityReport {
    std::string s_choice;
    bool numerical = false;                // cone membership is sampled, not exact
    std::vector<Trichotomy> component;     // per f_i
    std::vector<std::pair<Vec, Trichotomy>> lambda_results;
    Trichotomy weak_class;                 // SOL^w(S_inf, f^inf)
    Trichotomy strict_class;               // SOL^s(S_inf, f^inf)
    bool strict_precondition_ok = true;
    bool zero_regular = false;             // some lambda classifies {0} or empty
    bool weakly_regular = false;           // SOL^s bounded
    bool strongly_regular = false;         // SOL^w bounded

    bool anyRegular() const { return zero_regular || weakly_regular || strongly_regular; }
    nlohmann::json toJson() const;
};

RegularityReport relativeRegularityReport(const FeasibleSet& K, const VectorObjective& f,
                                          const SChoice& choice,
                                          const std::vector<Vec>& lambda_list,
                                          const SamplerConfig& cfg);

}  // namespace pvo
