#include "pvo/solver.hpp"

#include <algorithm>
#include <cmath>

#include "pvo/direct_search.hpp"

namespace pvo {

namespace {

double tauDomFor(const VectorObjective& f, const Vec& at, const SolverConfig& vcfg) {
    double m = 0.0;
    Vec v = f.eval(at);
    for (double vi : v) m = std::max(m, std::abs(vi));
    return vcfg.tau_dom_base * (1.0 + m);
}

// iterates over the dense grid of `per` points per axis in [lo_i, hi_i]
template <typename Fn>
void forEachGridPoint(const Vec& lo, const Vec& hi, int per, Fn&& fn) {
    const int n = static_cast<int>(lo.size());
    std::vector<int> counter(n, 0);
    Vec x(n);
    for (;;) {
        for (int j = 0; j < n; ++j)
            x[j] = per == 1 ? lo[j] : lo[j] + (hi[j] - lo[j]) * counter[j] / (per - 1);
        fn(x);
        int j = 0;
        while (j < n && ++counter[j] == per) counter[j++] = 0;
        if (j == n) break;
    }
}

}  // namespace

std::string verifyKindName(VerifyKind k) {
    switch (k) {
        case VerifyKind::StrictPareto: return "strict_pareto";
        case VerifyKind::WeakParetoOnly: return "weak_pareto_only";
        case VerifyKind::Dominated: return "dominated";
        case VerifyKind::Unknown: return "unknown";
    }
    return "?";
}

nlohmann::json VerifyResult::toJson() const {
    nlohmann::json j;
    j["verdict"] = verifyKindName(kind);
    j["tau_dom"] = tau_dom;
    if (witness) j["witness"] = *witness;
    return j;
}

VerifyResult verifyPareto(const Vec& candidate, const FeasibleSet& K,
                          const VectorObjective& f, const SamplerConfig& scfg,
                          const SolverConfig& vcfg) {
    const int n = K.dimension();
    if (!K.contains(candidate, 1e-6))
        throw std::invalid_argument("verification candidate is infeasible");

    Vec lo = vcfg.oracle_box_lo, hi = vcfg.oracle_box_hi;
    if (lo.empty()) lo.assign(n, -5.0);
    if (hi.empty()) hi.assign(n, 5.0);
    if (static_cast<int>(lo.size()) != n || static_cast<int>(hi.size()) != n)
        throw std::invalid_argument("oracle box dimension mismatch");

    VerifyResult out;
    out.tau_dom = tauDomFor(f, candidate, vcfg);
    for (int j = 0; j < n; ++j)
        if (candidate[j] < lo[j] - 1e-12 || candidate[j] > hi[j] + 1e-12) {
            out.kind = VerifyKind::Unknown;
            return out;
        }

    const Vec fc = f.eval(candidate);
    const double tau = out.tau_dom;
    std::optional<Vec> sharp, weak;
    forEachGridPoint(lo, hi, vcfg.oracle_grid_per_axis, [&](const Vec& y) {
        if (sharp) return;
        if (!K.contains(y, scfg.feas_tol)) return;
        Vec fy = f.eval(y);
        bool allStrict = true, allLe = true, someStrict = false;
        for (int i = 0; i < f.size(); ++i) {
            if (fy[i] >= fc[i] - tau) allStrict = false;
            if (fy[i] > fc[i] + tau) allLe = false;
            if (fy[i] < fc[i] - tau) someStrict = true;
        }
        if (allStrict) sharp = y;
        else if (allLe && someStrict && !weak) weak = y;
    });

    if (sharp) {
        out.kind = VerifyKind::Dominated;
        out.witness = sharp;
    } else if (weak) {
        out.kind = VerifyKind::WeakParetoOnly;
        out.witness = weak;
    } else {
        out.kind = VerifyKind::StrictPareto;
    }
    return out;
}

std::optional<CompactMinimum> minimizeOnCompact(const Polynomial& g, const FeasibleSet& K,
                                                double radius, const std::vector<Vec>& seeds,
                                                const SamplerConfig& scfg,
                                                const SolverConfig& vcfg) {
    const int n = K.dimension();
    auto feasible = [&](const Vec& x) {
        if (norm(x) > radius) return false;
        return K.contains(x, scfg.feas_tol);
    };

    std::vector<std::pair<double, Vec>> pool;
    Vec lo(n, -radius), hi(n, radius);
    forEachGridPoint(lo, hi, vcfg.gridPerAxis(n), [&](const Vec& x) {
        if (feasible(x)) pool.push_back({g.eval(x), x});
    });
    for (const Vec& s : seeds)
        if (static_cast<int>(s.size()) == n && feasible(s)) pool.push_back({g.eval(s), s});
    if (pool.empty()) return std::nullopt;

    std::stable_sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return lexLess(a.second, b.second);
    });

    // refine from the best point, staying feasible
    double step0 = n >= 1 ? 2.0 * radius / (vcfg.gridPerAxis(n) - 1) : 0.1;
    SearchResult r = patternSearch([&](const Vec& x) { return g.eval(x); }, feasible,
                                   pool.front().second, step0, 6000);
    CompactMinimum out;
    out.x = r.value < pool.front().first ? r.x : pool.front().second;
    out.value = std::min(r.value, pool.front().first);

    const double band = vcfg.near_optimal_band * (1.0 + std::abs(out.value));
    out.band.push_back(out.x);
    for (const auto& [v, x] : pool) {
        if (v > out.value + band) break;
        out.band.push_back(x);
    }
    return out;
}

SolveResult solveScalarized(const FeasibleSet& K, const VectorObjective& f, const Vec& lambda,
                            const Vec& xbar, const SamplerConfig& scfg,
                            const SolverConfig& vcfg) {
    if (static_cast<int>(lambda.size()) != f.size())
        throw std::invalid_argument("weight count mismatch");
    for (double l : lambda)
        if (l <= 0.0) throw std::invalid_argument("scalarization weights must be strictly positive");

    FeasibleSet S = sublevelSet(K, f, xbar, scfg.feas_tol);
    Polynomial g = weightedSum(f, lambda);

    SolveResult out;
    out.lambda_used = lambda;

    std::optional<Vec> prev;
    int interiorStreak = 0;
    for (double k : vcfg.ball_schedule) {
        std::vector<Vec> seeds = {xbar};
        if (prev) seeds.push_back(*prev);
        auto cm = minimizeOnCompact(g, S, k, seeds, scfg, vcfg);
        if (!cm) continue;  // the ball may still be too small to meet S

        // minimal-norm selection over the near-optimal band
        Vec xk = cm->band.front();
        double nk = norm(xk);
        for (const Vec& c : cm->band) {
            double nc = norm(c);
            if (nc < nk - 1e-12 || (std::abs(nc - nk) <= 1e-12 && lexLess(c, xk))) {
                xk = c;
                nk = nc;
            }
        }
        out.iterates.push_back({k, xk, g.eval(xk), nk});

        bool interior = nk <= k - vcfg.interior_margin;
        if (interior && prev && dist(xk, *prev) <= vcfg.stabilization_dist)
            ++interiorStreak;
        else
            interiorStreak = interior ? 1 : 0;
        prev = xk;

        if (interiorStreak >= 2) {
            out.status = SolveStatus::ParetoFound;
            out.x_star = xk;
            out.value = f.eval(xk);
            out.verification = verifyPareto(xk, K, f, scfg, vcfg);
            return out;
        }
    }
    out.status = SolveStatus::Inconclusive;
    out.reason = out.iterates.empty()
                     ? "no feasible point found inside any truncated ball"
                     : "minimizers escape to the boundary of every truncated ball";
    return out;
}

bool descentDirectionCheck(const FeasibleSet& K, const FeasibleSet& S,
                           const VectorObjective& f, const Vec& v,
                           const SamplerConfig& scfg, const SolverConfig& vcfg) {
    const int n = K.dimension();
    if (std::abs(norm(v) - 1.0) > 1e-9)
        throw std::invalid_argument("descent direction must be a unit vector");

    // deterministic sample of S: feasible oracle-box grid points, capped
    Vec lo = vcfg.oracle_box_lo, hi = vcfg.oracle_box_hi;
    if (lo.empty()) lo.assign(n, -5.0);
    if (hi.empty()) hi.assign(n, 5.0);
    std::vector<Vec> all;
    forEachGridPoint(lo, hi, vcfg.oracle_grid_per_axis, [&](const Vec& x) {
        if (S.contains(x, scfg.feas_tol)) all.push_back(x);
    });
    std::vector<Vec> samples;
    if (static_cast<int>(all.size()) <= vcfg.descent_sample_cap) {
        samples = all;
    } else {
        double stride = static_cast<double>(all.size()) / vcfg.descent_sample_cap;
        for (int i = 0; i < vcfg.descent_sample_cap; ++i)
            samples.push_back(all[static_cast<std::size_t>(i * stride)]);
    }
    if (samples.empty()) return false;

    for (double t : vcfg.descent_t_schedule) {
        bool ok = true;
        for (const Vec& x : samples) {
            Vec y = minus(x, scaled(v, t));
            if (!K.contains(y, 1e-6)) {
                ok = false;
                break;
            }
            Vec fx = f.eval(x), fy = f.eval(y);
            double tau = tauDomFor(f, x, vcfg);
            for (int i = 0; i < f.size(); ++i)
                if (fy[i] > fx[i] + tau) {
                    ok = false;
                    break;
                }
            if (!ok) break;
        }
        if (ok) return true;
    }
    return false;
}

nlohmann::json SolveResult::toJson() const {
    nlohmann::json j;
    switch (status) {
        case SolveStatus::ParetoFound: j["status"] = "pareto_found"; break;
        case SolveStatus::Inconclusive: j["status"] = "inconclusive"; break;
        case SolveStatus::NonexistenceEvidence: j["status"] = "nonexistence_evidence"; break;
    }
    if (x_star) {
        j["x_star"] = *x_star;
        j["value"] = value;
        j["verification"] = verification.toJson();
    }
    if (!lambda_used.empty()) j["lambda_used"] = lambda_used;
    if (!reason.empty()) j["reason"] = reason;
    if (!certificate.empty()) j["certificate"] = certificate;
    nlohmann::json its = nlohmann::json::array();
    for (const Iterate& it : iterates)
        its.push_back({{"k", it.k}, {"x", it.x}, {"value", it.value}, {"norm", it.x_norm}});
    j["iterates"] = its;
    if (!descent_curve.empty()) {
        nlohmann::json dc = nlohmann::json::array();
        for (const auto& [x, v] : descent_curve) dc.push_back({{"x", x}, {"f", v}});
        j["descent_curve"] = dc;
    }
    return j;
}

PipelineResult existencePipeline(const FeasibleSet& K, const VectorObjective& f,
                                 const SChoice& choice, const std::vector<Vec>& lambda_list,
                                 const Vec& xbar, const std::optional<Vec>& lambda,
                                 const SamplerConfig& scfg, const SolverConfig& vcfg) {
    PipelineResult out;
    out.report = relativeRegularityReport(K, f, choice, lambda_list, scfg);

    Vec lam = lambda.value_or(Vec(f.size(), 1.0 / f.size()));
    std::vector<int> support;
    for (int i = 0; i < f.size(); ++i)
        if (lam[i] != 0.0) support.push_back(i);

    if (out.report.anyRegular()) {
        SectionBoundedResult sb = sectionBoundedProbe(f, K, xbar, support, scfg, vcfg);
        if (sb.bounded) {
            out.solve = solveScalarized(K, f, lam, xbar, scfg, vcfg);
            out.solve.certificate =
                "regular recession classification with section-bounded scalarization "
                "(sampled evidence)";
            return out;
        }
        out.solve.status = SolveStatus::Inconclusive;
        out.solve.reason = "regular classification, but the scalarized objective is not "
                           "section-bounded from below on the sublevel set";
        return out;
    }

    // non-regular route: pull an unbounded witness and test the descent
    // hypothesis on the sublevel set
    std::optional<Vec> witness;
    if (out.report.weak_class.tag == TriTag::Unbounded && out.report.weak_class.witness)
        witness = out.report.weak_class.witness;
    if (!witness && out.report.strict_class.tag == TriTag::Unbounded &&
        out.report.strict_class.witness)
        witness = out.report.strict_class.witness;
    if (!witness)
        for (const auto& [l, t] : out.report.lambda_results)
            if (t.tag == TriTag::Unbounded && t.witness) {
                witness = t.witness;
                break;
            }
    if (!witness) {
        out.solve.status = SolveStatus::Inconclusive;
        out.solve.reason = "not regular and no unbounded witness direction is available";
        return out;
    }

    FeasibleSet S = sublevelSet(K, f, xbar, scfg.feas_tol);
    bool descentOk = false;
    // the witness ray and its opposite are both candidate descent directions
    for (const Vec& v : {*witness, scaled(*witness, -1.0)}) {
        if (descentDirectionCheck(K, S, f, v, scfg, vcfg)) {
            descentOk = true;
            break;
        }
    }
    if (!descentOk) {
        out.solve.status = SolveStatus::Inconclusive;
        out.solve.reason = "not regular and the sampled descent-direction hypothesis failed "
                           "for the unbounded witness";
        return out;
    }
    out.solve = solveScalarized(K, f, lam, xbar, scfg, vcfg);
    out.solve.certificate =
        "non-regular route: descent direction accepted on sampled evidence";
    return out;
}

}  // namespace pvo
