#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pvo/regularity.hpp"
#include "pvo/sets.hpp"

namespace pvo {

enum class VerifyKind { StrictPareto, WeakParetoOnly, Dominated, Unknown };

std::string verifyKindName(VerifyKind k);

// Brute-force verification verdict. Dominated: a feasible grid point
// improves every component strictly (weak efficiency refuted).
// WeakParetoOnly: no all-components improver, but some point improves one
// component without worsening any (strict efficiency refuted). StrictPareto:
// neither improver exists on the grid. Unknown: the oracle box does not
// cover the candidate's neighborhood.
struct VerifyResult {
    VerifyKind kind = VerifyKind::Unknown;
    std::optional<Vec> witness;
    double tau_dom = 0.0;

    nlohmann::json toJson() const;
};

VerifyResult verifyPareto(const Vec& candidate, const FeasibleSet& K,
                          const VectorObjective& f, const SamplerConfig& scfg,
                          const SolverConfig& vcfg);

// Best feasible point of K inside the centered box of the given radius:
// dense grid scan (plus caller-provided seed points) followed by
// feasibility-preserving pattern-search refinement. Returns nullopt when no
// feasible sample is found.
struct CompactMinimum {
    Vec x;
    double value;
    // near-optimal grid candidates retained for minimal-norm selection
    std::vector<Vec> band;
};
std::optional<CompactMinimum> minimizeOnCompact(const Polynomial& g, const FeasibleSet& K,
                                                double radius, const std::vector<Vec>& seeds,
                                                const SamplerConfig& scfg,
                                                const SolverConfig& vcfg);

enum class SolveStatus { ParetoFound, Inconclusive, NonexistenceEvidence };

struct Iterate {
    double k = 0.0;
    Vec x;
    double value = 0.0;
    double x_norm = 0.0;
};

struct SolveResult {
    SolveStatus status = SolveStatus::Inconclusive;
    std::optional<Vec> x_star;
    Vec value;                 // f(x_star)
    Vec lambda_used;
    VerifyResult verification;
    std::string reason;        // for Inconclusive
    std::string certificate;   // which existence route justified the attempt
    std::vector<Iterate> iterates;
    std::vector<std::pair<Vec, Vec>> descent_curve;  // (point, value) for nonexistence evidence

    nlohmann::json toJson() const;
};

// Truncated-ball scalarization over S = K_xbar: minimize sum lambda_i f_i on
// S intersected with balls of growing radius k, selecting the minimal-norm
// near-optimal candidate at each k, and stopping once two consecutive
// minimizers are interior (norm <= k - margin) and mutually within the
// stabilization distance. Escaping minimizers yield Inconclusive.
SolveResult solveScalarized(const FeasibleSet& K, const VectorObjective& f, const Vec& lambda,
                            const Vec& xbar, const SamplerConfig& scfg,
                            const SolverConfig& vcfg);

// Sampled surrogate for the descent-direction hypothesis: some t in the
// schedule must satisfy x - t*v in K and f(x - t*v) <= f(x) componentwise
// for every sampled x in S. Reported as sampled evidence, never as a proof.
bool descentDirectionCheck(const FeasibleSet& K, const FeasibleSet& S,
                           const VectorObjective& f, const Vec& v,
                           const SamplerConfig& scfg, const SolverConfig& vcfg);

// Full existence pipeline: classify regularity for the chosen S_infinity;
// on a regular verdict, check section-boundedness and scalarize; otherwise
// try the non-regular route through a descent direction extracted from an
// unbounded witness. Inconclusive results name the failed hypothesis.
struct PipelineResult {
    RegularityReport report;
    SolveResult solve;
};
PipelineResult existencePipeline(const FeasibleSet& K, const VectorObjective& f,
                                 const SChoice& choice, const std::vector<Vec>& lambda_list,
                                 const Vec& xbar, const std::optional<Vec>& lambda,
                                 const SamplerConfig& scfg, const SolverConfig& vcfg);

}  // namespace pvo
