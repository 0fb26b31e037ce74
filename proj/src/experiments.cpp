#include "pvo/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pvo/polynomial.hpp"

namespace pvo {

namespace {

nlohmann::json vecToJson(const Vec& v) {
    nlohmann::json a = nlohmann::json::array();
    for (double x : v) a.push_back(x);
    return a;
}

// dense random vector perturbation with the given per-component degrees,
// jointly rescaled to the requested coefficient norm
VectorObjective randomPerturbation(int dimension, const std::vector<int>& degrees, double eps,
                                   Rng& rng) {
    std::vector<Polynomial> comps;
    comps.reserve(degrees.size());
    double sq = 0.0;
    for (int d : degrees) {
        comps.push_back(randomPolynomial(dimension, d, rng));
        sq += comps.back().coeffNorm() * comps.back().coeffNorm();
    }
    double nrm = std::sqrt(sq);
    if (nrm <= 0.0) throw std::logic_error("degenerate random perturbation");
    for (Polynomial& p : comps) p = p.scaled(eps / nrm);
    return VectorObjective(std::move(comps));
}

}  // namespace

nlohmann::json StabilityRecord::toJson() const {
    nlohmann::json j;
    j["experiment"] = "stability_probe";
    j["base"] = base.toJson();
    j["eps_tested"] = eps_tested;
    j["trials_per_eps"] = trials_per_eps;
    if (largest_stable_eps)
        j["largest_stable_eps"] = *largest_stable_eps;
    else
        j["largest_stable_eps"] = nullptr;
    if (flip) {
        nlohmann::json fj;
        fj["eps"] = flip->eps;
        fj["trial"] = flip->trial;
        fj["new_tag"] = triTagName(flip->new_tag);
        nlohmann::json comps = nlohmann::json::array();
        for (const Polynomial& p : flip->perturbed->components()) comps.push_back(p.toJson());
        fj["perturbed"] = comps;
        j["flip"] = fj;
    } else {
        j["flip"] = nullptr;
    }
    return j;
}

StabilityRecord stabilityProbe(const FeasibleSet& K, const VectorObjective& f,
                               const SChoice& choice, const Vec& lambda,
                               const std::vector<double>& eps_schedule, int trials_per_eps,
                               std::uint64_t seed, const SamplerConfig& cfg) {
    if (eps_schedule.empty()) throw std::invalid_argument("empty eps schedule");
    for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
        if (eps_schedule[i] <= 0.0) throw std::invalid_argument("eps must be positive");
        if (i > 0 && eps_schedule[i] <= eps_schedule[i - 1])
            throw std::invalid_argument("eps schedule must be strictly increasing");
    }
    if (trials_per_eps <= 0) throw std::invalid_argument("trials_per_eps must be positive");

    StabilityRecord rec;
    rec.base = lambdaRecessionClassify(f, lambda, sInfinity(K, f, choice, cfg), cfg);
    rec.eps_tested = eps_schedule;
    rec.trials_per_eps = trials_per_eps;
    if (rec.base.tag == TriTag::Unbounded)
        throw std::invalid_argument(
            "stability probe undefined for an Unbounded base classification");

    std::vector<int> degrees;
    for (const Polynomial& p : f.components()) degrees.push_back(p.degree());

    int counter = 0;
    for (double eps : eps_schedule) {
        bool flipped_here = false;
        for (int t = 0; t < trials_per_eps; ++t, ++counter) {
            Rng rng(Rng::deriveSeed(seed, static_cast<std::uint64_t>(counter)));
            VectorObjective g = randomPerturbation(f.dimension(), degrees, eps, rng);
            std::vector<Polynomial> comps;
            for (int i = 0; i < f.size(); ++i)
                comps.push_back(f.components()[i] + g.components()[i]);
            VectorObjective fp(std::move(comps));
            // the carrier is rebuilt from the perturbed problem: sublevel and
            // leading-slice carriers are defined by the objective itself
            Trichotomy t2 = lambdaRecessionClassify(fp, lambda, sInfinity(K, fp, choice, cfg), cfg);
            if (t2.tag != rec.base.tag) {
                flipped_here = true;
                if (!rec.flip) {
                    StabilityRecord::Flip fl;
                    fl.eps = eps;
                    fl.trial = t;
                    fl.perturbed = fp;
                    fl.new_tag = t2.tag;
                    rec.flip = std::move(fl);
                }
            }
        }
        if (!flipped_here && !rec.flip) rec.largest_stable_eps = eps;
    }
    return rec;
}

bool lowerOrderInvarianceCheck(const FeasibleSet& K, const VectorObjective& f,
                               const SChoice& choice, const Vec& lambda, int trials,
                               std::uint64_t seed, const SamplerConfig& cfg) {
    Cone S = sInfinity(K, f, choice, cfg);
    Trichotomy base = lambdaRecessionClassify(f, lambda, S, cfg);

    for (int t = 0; t < trials; ++t) {
        Rng rng(Rng::deriveSeed(seed, static_cast<std::uint64_t>(t)));
        std::vector<Polynomial> comps;
        for (const Polynomial& p : f.components()) {
            Polynomial g = p.degree() > 1
                               ? randomPolynomial(f.dimension(), p.degree() - 1, rng)
                               : Polynomial::constant(f.dimension(), rng.uniform(-1.0, 1.0));
            comps.push_back(perturb(p, g));
            if (!(comps.back().leadingForm() == p.leadingForm())) return false;
        }
        VectorObjective fp(std::move(comps));
        Trichotomy t2 = lambdaRecessionClassify(fp, lambda, S, cfg);
        if (t2.tag != base.tag) return false;
    }
    return true;
}

nlohmann::json GenericityReport::toJson() const {
    nlohmann::json j;
    j["experiment"] = "genericity_sample";
    j["dimension"] = dimension;
    j["degrees"] = degrees;
    j["samples"] = samples;
    j["regular_count"] = regular_count;
    j["fraction"] = fraction;
    j["per_instance"] = per_instance;
    j["seed"] = seed;
    j["note"] = "sampled fraction consistent with genericity; not a confirmation";
    return j;
}

namespace {

int matrixRank(Matrix A, int cols) {
    int rows = static_cast<int>(A.size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int pivot = -1;
        double best = 1e-12;
        for (int r = rank; r < rows; ++r)
            if (std::abs(A[r][c]) > best) {
                best = std::abs(A[r][c]);
                pivot = r;
            }
        if (pivot < 0) continue;
        std::swap(A[rank], A[pivot]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || A[r][c] == 0.0) continue;
            double m = A[r][c] / A[rank][c];
            for (int k = c; k < cols; ++k) A[r][k] -= m * A[rank][k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

GenericityReport genericitySample(int dimension, const std::vector<int>& degrees,
                                  const Polyhedron& cone, int samples, std::uint64_t seed,
                                  const SamplerConfig& cfg) {
    if (samples <= 0) throw std::invalid_argument("sample count must be positive");
    if (degrees.empty()) throw std::invalid_argument("degree vector must be nonempty");
    for (int d : degrees)
        if (d < 1) throw std::invalid_argument("degrees must be >= 1");
    if (cone.dimension() != dimension) throw std::invalid_argument("cone dimension mismatch");
    for (double bi : cone.b)
        if (bi != 0.0) throw std::invalid_argument("cone must have zero offsets");
    int rank = matrixRank(cone.A, dimension);
    if (rank < std::min<int>(static_cast<int>(cone.A.size()), dimension))
        throw std::invalid_argument("cone matrix is rank deficient");

    FeasibleSet K = FeasibleSet::polyhedral(cone);

    GenericityReport rep;
    rep.dimension = dimension;
    rep.degrees = degrees;
    rep.samples = samples;
    rep.seed = seed;
    for (int i = 0; i < samples; ++i) {
        Rng rng(Rng::deriveSeed(seed, static_cast<std::uint64_t>(i)));
        std::vector<Polynomial> comps;
        for (int d : degrees) comps.push_back(randomPolynomial(dimension, d, rng));
        VectorObjective f(std::move(comps));
        RegularityReport r = relativeRegularityReport(K, f, WholeSetCone{}, {}, cfg);
        rep.per_instance.push_back(r.zero_regular);
        if (r.zero_regular) ++rep.regular_count;
    }
    rep.fraction = static_cast<double>(rep.regular_count) / static_cast<double>(samples);
    return rep;
}

nlohmann::json WeakNonopenReport::toJson() const {
    nlohmann::json j;
    j["experiment"] = "weak_nonopen_demo";
    j["base"] = base.toJson();
    j["base_weakly_regular"] = base_weakly_regular;
    nlohmann::json vs = nlohmann::json::array();
    for (const Variant& v : variants) {
        nlohmann::json vj;
        vj["n"] = v.n;
        vj["report"] = v.report.toJson();
        vj["weakly_regular"] = v.report.weakly_regular;
        vs.push_back(vj);
    }
    j["variants"] = vs;
    j["all_variants_nonregular"] = all_variants_nonregular;
    return j;
}

WeakNonopenReport weakNonopenDemo(const SamplerConfig& cfg) {
    // K = {x1 >= 0} as -x1 <= 0
    FeasibleSet K = FeasibleSet::polyhedral(Polyhedron{{{-1.0, 0.0}}, {0.0}});
    VectorObjective base({Polynomial::variable(2, 0), Polynomial::variable(2, 1)});

    WeakNonopenReport rep;
    // weak regularity of the base holds on the sublevel carrier at (0,0)
    rep.base = relativeRegularityReport(K, base, SublevelCone{{0.0, 0.0}}, {}, cfg);
    rep.base_weakly_regular = rep.base.weakly_regular;

    // the variants have an unbounded strict recession set for every carrier
    // between (K_xbar)_inf and K_inf; the whole-set carrier exhibits it
    rep.all_variants_nonregular = true;
    for (int n : {10, 100, 1000}) {
        VectorObjective fn(
            {Polynomial::variable(2, 1),
             Polynomial::variable(2, 0) + Polynomial::variable(2, 1).scaled(-1.0 / n)});
        WeakNonopenReport::Variant v;
        v.n = n;
        v.report = relativeRegularityReport(K, fn, WholeSetCone{}, {}, cfg);
        if (v.report.weakly_regular) rep.all_variants_nonregular = false;
        rep.variants.push_back(std::move(v));
    }
    return rep;
}

nlohmann::json NonexistenceReport::toJson() const {
    nlohmann::json j;
    j["experiment"] = "nonexistence_demo";
    j["feasible_candidates"] = feasible_candidates;
    j["nondominated_candidates"] = nondominated_candidates;
    j["dominated_by_escape"] = dominated_by_escape;
    j["fraction_dominated"] = fraction_dominated;
    nlohmann::json curve = nlohmann::json::array();
    for (const auto& [x, v] : escape_curve) {
        nlohmann::json e;
        e["x"] = vecToJson(x);
        e["value"] = vecToJson(v);
        curve.push_back(e);
    }
    j["escape_curve"] = curve;
    return j;
}

NonexistenceReport nonexistenceDemo(const FeasibleSet& K, const VectorObjective& f,
                                    const Vec& candidate_lo, const Vec& candidate_hi,
                                    const Vec& escape_lo, const Vec& escape_hi,
                                    int grid_per_axis, const SolverConfig& cfg) {
    const int n = K.dimension();
    if (static_cast<int>(candidate_lo.size()) != n || static_cast<int>(candidate_hi.size()) != n ||
        static_cast<int>(escape_lo.size()) != n || static_cast<int>(escape_hi.size()) != n)
        throw std::invalid_argument("box dimension mismatch");
    if (grid_per_axis < 2) throw std::invalid_argument("grid_per_axis must be >= 2");

    auto gridScan = [&](const Vec& lo, const Vec& hi, auto&& visit) {
        std::vector<int> idx(n, 0);
        Vec x(n, 0.0);
        while (true) {
            for (int i = 0; i < n; ++i)
                x[i] = lo[i] + (hi[i] - lo[i]) * idx[i] / (grid_per_axis - 1);
            if (K.contains(x, 1e-9)) visit(x);
            int i = 0;
            while (i < n && ++idx[i] == grid_per_axis) idx[i++] = 0;
            if (i == n) break;
        }
    };

    std::vector<std::pair<Vec, Vec>> candidates;  // (point, value)
    gridScan(candidate_lo, candidate_hi, [&](const Vec& x) { candidates.push_back({x, f.eval(x)}); });

    NonexistenceReport rep;
    rep.feasible_candidates = static_cast<int>(candidates.size());

    auto tauFor = [&](const Vec& value) { return cfg.tau_dom_base * (1.0 + norm(value)); };

    // nondominated within the candidate box under the (<=, !=) order
    std::vector<std::size_t> front;
    for (std::size_t b = 0; b < candidates.size(); ++b) {
        double tau = tauFor(candidates[b].second);
        bool dominated = false;
        for (std::size_t a = 0; a < candidates.size() && !dominated; ++a) {
            if (a == b) continue;
            bool leq = true, strict = false;
            for (int i = 0; i < f.size(); ++i) {
                double d = candidates[a].second[i] - candidates[b].second[i];
                if (d > tau) leq = false;
                if (d < -tau) strict = true;
            }
            dominated = leq && strict;
        }
        if (!dominated) front.push_back(b);
    }
    rep.nondominated_candidates = static_cast<int>(front.size());

    // strict-dominator scan over the escape box
    std::vector<std::pair<Vec, Vec>> escape;
    gridScan(escape_lo, escape_hi, [&](const Vec& x) { escape.push_back({x, f.eval(x)}); });

    for (std::size_t b : front) {
        double tau = tauFor(candidates[b].second);
        for (const auto& [y, vy] : escape) {
            bool allStrict = true;
            for (int i = 0; i < f.size(); ++i)
                if (vy[i] >= candidates[b].second[i] - tau) {
                    allStrict = false;
                    break;
                }
            if (allStrict) {
                ++rep.dominated_by_escape;
                if (rep.escape_curve.size() < 20) rep.escape_curve.push_back({y, vy});
                break;
            }
        }
    }
    rep.fraction_dominated =
        front.empty() ? 0.0
                      : static_cast<double>(rep.dominated_by_escape) /
                            static_cast<double>(front.size());
    return rep;
}

}  // namespace pvo
