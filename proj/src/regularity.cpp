#include "pvo/regularity.hpp"

#include <algorithm>
#include <cmath>

#include "pvo/direct_search.hpp"

namespace pvo {

namespace {

double tauFor(double coeff_norm) { return 1e-6 * (1.0 + coeff_norm); }

nlohmann::json vecJson(const Vec& v) { return nlohmann::json(v); }

Trichotomy classifyMin(double m, const Vec& argmin, double tau, int samples) {
    Trichotomy t;
    t.min_value = m;
    t.tau = tau;
    t.sample_count = samples;
    t.borderline = std::abs(m) > tau && std::abs(m) <= 2 * tau;
    if (m > tau) {
        t.tag = TriTag::ZeroOnly;
    } else if (m >= -tau) {
        t.tag = TriTag::Unbounded;
        t.witness = argmin;
    } else {
        t.tag = TriTag::Empty;
        t.witness = argmin;
    }
    return t;
}

}  // namespace

std::string triTagName(TriTag tag) {
    switch (tag) {
        case TriTag::ZeroOnly: return "zero_only";
        case TriTag::Unbounded: return "unbounded";
        case TriTag::Empty: return "empty";
    }
    return "?";
}

nlohmann::json Trichotomy::toJson() const {
    nlohmann::json j;
    j["tag"] = triTagName(tag);
    j["min_value"] = min_value;
    j["tau"] = tau;
    j["borderline"] = borderline;
    j["sample_count"] = sample_count;
    if (witness) j["witness"] = vecJson(*witness);
    return j;
}

Trichotomy scalarRecessionClassify(const Polynomial& h, const Cone& C,
                                   const SamplerConfig& cfg) {
    if (h.degree() < 1) throw std::invalid_argument("classifier needs degree >= 1");
    if (!h.isHomogeneous()) throw std::invalid_argument("classifier needs a homogeneous form");
    if (h.dimension() != C.dimension())
        throw std::invalid_argument("form/cone dimension mismatch");

    const double tau = tauFor(h.coeffNorm());
    const auto& samples = C.sphereSamples(cfg.resolutionFor(C.dimension()));
    if (samples.empty()) {
        Trichotomy t;
        t.tag = TriTag::ZeroOnly;
        t.tau = tau;
        return t;
    }

    // dense scan
    std::vector<std::pair<double, Vec>> scored;
    scored.reserve(samples.size());
    for (const Vec& u : samples) scored.push_back({h.eval(u), u});
    std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return lexLess(a.second, b.second);
    });

    double best = scored.front().first;
    Vec argmin = scored.front().second;

    // local refinement from the best grid points, projected to the sphere
    // and re-tested for cone membership; only worthwhile (and numerically
    // safe) when membership is an exact inexpensive test, since refinement
    // against a ray-probe membership both costs O(ray_budget) per step and
    // can slide the argmin into the probe's acceptance band
    int starts = C.cheapMembership() ? std::min<std::size_t>(5, scored.size()) : 0;
    for (int s = 0; s < starts; ++s) {
        auto phi = [&](const Vec& x) {
            double nx = norm(x);
            if (nx < 1e-8) return 1e300;
            Vec u = scaled(x, 1.0 / nx);
            if (!C.containsDirection(u)) return 1e300;
            return h.eval(u);
        };
        SearchResult r = nelderMead(phi, scored[s].second, 0.02, cfg.refine_iters * 4);
        double nr = norm(r.x);
        if (nr < 1e-8) continue;
        Vec u = scaled(r.x, 1.0 / nr);
        if (!C.containsDirection(u)) continue;
        double v = h.eval(u);
        if (v < best || (v == best && lexLess(u, argmin))) {
            best = v;
            argmin = u;
        }
    }

    return classifyMin(best, argmin, tau, static_cast<int>(samples.size()));
}

std::vector<Vec> sphereParetoOracle(const VectorObjective& F, const Cone& C,
                                    const SamplerConfig& cfg, ParetoMode mode) {
    const auto& samples = C.sphereSamples(cfg.resolutionFor(C.dimension()));
    std::vector<double> taus;
    for (const Polynomial& p : F.components()) taus.push_back(tauFor(p.coeffNorm()));

    std::vector<Vec> values;
    values.reserve(samples.size());
    for (const Vec& u : samples) values.push_back(F.eval(u));

    auto dominates = [&](std::size_t a, std::size_t b) {
        if (mode == ParetoMode::Weak) {
            for (int i = 0; i < F.size(); ++i)
                if (values[a][i] >= values[b][i] - taus[i]) return false;
            return true;
        }
        bool someStrict = false;
        for (int i = 0; i < F.size(); ++i) {
            if (values[a][i] > values[b][i] + taus[i]) return false;
            if (values[a][i] < values[b][i] - taus[i]) someStrict = true;
        }
        return someStrict;
    };

    std::vector<Vec> out;
    for (std::size_t b = 0; b < samples.size(); ++b) {
        bool dominated = false;
        for (std::size_t a = 0; a < samples.size() && !dominated; ++a)
            if (a != b && dominates(a, b)) dominated = true;
        if (!dominated) out.push_back(samples[b]);
    }
    std::sort(out.begin(), out.end(), lexLess);
    return out;
}

namespace {

// Shared emptiness-by-scaling tests on sampled directions. A direction with
// every component strictly negative refutes 0 in SOL^w; one with all
// components <= tau and some < -tau refutes 0 in SOL^s. Either way positive
// scaling improves without bound, so the solution set is empty.
std::optional<Vec> weakEmptinessWitness(const VectorObjective& F,
                                        const std::vector<Vec>& samples,
                                        const std::vector<double>& taus) {
    std::optional<Vec> best;
    double bestScore = 0.0;
    for (const Vec& u : samples) {
        Vec v = F.eval(u);
        bool all = true;
        double worst = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < F.size(); ++i) {
            if (v[i] >= -taus[i]) all = false;
            worst = std::max(worst, v[i]);
        }
        if (all && (!best || worst < bestScore || (worst == bestScore && lexLess(u, *best)))) {
            best = u;
            bestScore = worst;
        }
    }
    return best;
}

std::optional<Vec> strictEmptinessWitness(const VectorObjective& F,
                                          const std::vector<Vec>& samples,
                                          const std::vector<double>& taus) {
    std::optional<Vec> best;
    double bestScore = 0.0;
    for (const Vec& u : samples) {
        Vec v = F.eval(u);
        bool within = true, someNeg = false;
        // score by the worst component: the preferred witness is the one
        // improving every component the most uniformly
        double score = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < F.size(); ++i) {
            if (v[i] > taus[i]) within = false;
            if (v[i] < -taus[i]) someNeg = true;
            score = std::max(score, v[i]);
        }
        if (within && someNeg &&
            (!best || score < bestScore || (score == bestScore && lexLess(u, *best)))) {
            best = u;
            bestScore = score;
        }
    }
    return best;
}

double sliceMinOfMax(const VectorObjective& F, const std::vector<Vec>& samples) {
    double m = std::numeric_limits<double>::infinity();
    for (const Vec& u : samples) {
        Vec v = F.eval(u);
        m = std::min(m, *std::max_element(v.begin(), v.end()));
    }
    return m;
}

}  // namespace

Trichotomy weakRecessionClassify(const VectorObjective& F, const Cone& C,
                                 const SamplerConfig& cfg) {
    std::vector<double> taus;
    double tauMax = 0.0;
    for (const Polynomial& p : F.components()) {
        if (!p.isHomogeneous() || p.degree() < 1)
            throw std::invalid_argument("weak classifier needs homogeneous components");
        taus.push_back(tauFor(p.coeffNorm()));
        tauMax = std::max(tauMax, taus.back());
    }
    const auto& samples = C.sphereSamples(cfg.resolutionFor(C.dimension()));
    Trichotomy t;
    t.tau = tauMax;
    t.sample_count = static_cast<int>(samples.size());
    if (samples.empty()) {
        t.tag = TriTag::ZeroOnly;
        return t;
    }
    t.min_value = sliceMinOfMax(F, samples);

    if (auto w = weakEmptinessWitness(F, samples, taus)) {
        t.tag = TriTag::Empty;
        t.witness = *w;
        return t;
    }
    bool allZero = true;
    for (const Polynomial& p : F.components())
        if (scalarRecessionClassify(p, C, cfg).tag != TriTag::ZeroOnly) {
            allZero = false;
            break;
        }
    if (allZero) {
        t.tag = TriTag::ZeroOnly;
        return t;
    }
    t.tag = TriTag::Unbounded;
    std::vector<Vec> oracle = sphereParetoOracle(F, C, cfg, ParetoMode::Weak);
    t.witness = oracle.empty() ? samples.front() : oracle.front();
    return t;
}

StrictClassification strictRecessionClassify(const VectorObjective& F, const Cone& C,
                                             const SamplerConfig& cfg) {
    std::vector<double> taus;
    double tauMax = 0.0;
    for (const Polynomial& p : F.components()) {
        if (!p.isHomogeneous() || p.degree() < 1)
            throw std::invalid_argument("strict classifier needs homogeneous components");
        taus.push_back(tauFor(p.coeffNorm()));
        tauMax = std::max(tauMax, taus.back());
    }
    const auto& samples = C.sphereSamples(cfg.resolutionFor(C.dimension()));

    StrictClassification out;
    out.tri.tau = tauMax;
    out.tri.sample_count = static_cast<int>(samples.size());
    if (samples.empty()) {
        out.tri.tag = TriTag::ZeroOnly;
        return out;
    }
    out.tri.min_value = sliceMinOfMax(F, samples);

    // sampled precondition: S_inf subset {F <= 0}
    bool pre = true;
    for (const Vec& u : samples) {
        Vec v = F.eval(u);
        for (int i = 0; i < F.size() && pre; ++i)
            if (v[i] > taus[i]) pre = false;
        if (!pre) break;
    }
    out.precondition_ok = pre;

    if (auto w = strictEmptinessWitness(F, samples, taus)) {
        // valid with or without the precondition: 0 is not strictly
        // efficient and scaling diverges
        out.tri.tag = TriTag::Empty;
        out.tri.witness = *w;
        return out;
    }

    if (pre) {
        bool allZero = true;
        for (const Polynomial& p : F.components())
            if (scalarRecessionClassify(p, C, cfg).tag != TriTag::ZeroOnly) {
                allZero = false;
                break;
            }
        if (allZero) {
            out.tri.tag = TriTag::ZeroOnly;
            return out;
        }
        out.tri.tag = TriTag::Unbounded;
        std::vector<Vec> oracle = sphereParetoOracle(F, C, cfg, ParetoMode::Strict);
        out.tri.witness = oracle.empty() ? samples.front() : oracle.front();
        return out;
    }

    // Precondition failed: classify by direct nondomination over candidates
    // {0} and scaled sphere samples (the ladder catches dominations that a
    // single sphere shell hides).
    const std::vector<double> ladder = {0.5, 1.0, 2.0};
    std::vector<std::pair<Vec, Vec>> cand;  // (point, F value)
    cand.push_back({Vec(F.dimension(), 0.0), Vec(F.size(), 0.0)});
    for (const Vec& u : samples)
        for (double s : ladder) {
            Vec x = scaled(u, s);
            cand.push_back({x, F.eval(x)});
        }
    auto dominates = [&](const Vec& a, const Vec& b) {
        bool someStrict = false;
        for (int i = 0; i < F.size(); ++i) {
            if (a[i] > b[i] + taus[i]) return false;
            if (a[i] < b[i] - taus[i]) someStrict = true;
        }
        return someStrict;
    };
    std::optional<Vec> nonzeroNondominated;
    for (std::size_t b = 1; b < cand.size(); ++b) {
        bool dominated = false;
        for (std::size_t a = 0; a < cand.size() && !dominated; ++a)
            if (a != b && dominates(cand[a].second, cand[b].second)) dominated = true;
        if (!dominated) {
            Vec u = normalized(cand[b].first);
            if (!nonzeroNondominated || lexLess(u, *nonzeroNondominated))
                nonzeroNondominated = u;
        }
    }
    if (nonzeroNondominated) {
        out.tri.tag = TriTag::Unbounded;
        out.tri.witness = *nonzeroNondominated;
    } else {
        out.tri.tag = TriTag::ZeroOnly;
    }
    return out;
}

Trichotomy lambdaRecessionClassify(const VectorObjective& f, const Vec& lambda,
                                   const Cone& S, const SamplerConfig& cfg) {
    Polynomial form(f.dimension());
    bool haveForm = false;
    try {
        form = weightedLeadingForm(f, lambda);
        haveForm = true;
    } catch (const LeadingCancellation&) {
        Polynomial sum = weightedSum(f, lambda);
        if (!sum.isZero()) {
            form = sum.leadingForm();
            haveForm = true;
        }
    }
    if (!haveForm) {
        // f_lambda is identically zero: every point of S solves the
        // recession problem, so the set is S itself.
        Trichotomy t;
        const auto& samples = S.sphereSamples(cfg.resolutionFor(S.dimension()));
        t.sample_count = static_cast<int>(samples.size());
        t.min_value = 0.0;
        if (samples.empty()) {
            t.tag = TriTag::ZeroOnly;
        } else {
            t.tag = TriTag::Unbounded;
            t.witness = samples.front();
        }
        return t;
    }
    return scalarRecessionClassify(form, S, cfg);
}

nlohmann::json SectionBoundedResult::toJson() const {
    nlohmann::json j;
    j["bounded"] = bounded;
    j["indices"] = indices;
    j["inf_values"] = inf_values;
    if (diverging_index) j["diverging_index"] = *diverging_index;
    return j;
}

SectionBoundedResult sectionBoundedProbe(const VectorObjective& f, const FeasibleSet& K,
                                         const Vec& xbar, const std::vector<int>& I,
                                         const SamplerConfig& scfg, const SolverConfig& vcfg) {
    if (I.empty()) throw std::invalid_argument("empty index set");
    for (int i : I)
        if (i < 0 || i >= f.size()) throw std::invalid_argument("index out of range");
    FeasibleSet S = sublevelSet(K, f, xbar, scfg.feas_tol);
    const int n = K.dimension();
    const int per = vcfg.gridPerAxis(n);

    SectionBoundedResult out;
    out.indices = I;

    const std::vector<double> boxes = {1.0, 10.0, 100.0, 1000.0};
    for (int idx : I) {
        const Polynomial& fi = f.component(idx);
        std::vector<double> mins;
        for (double r : boxes) {
            double m = fi.eval(xbar);
            Vec bestPt = xbar;
            std::vector<int> counter(n, 0);
            for (;;) {
                Vec x(n);
                for (int j = 0; j < n; ++j) x[j] = -r + 2.0 * r * counter[j] / (per - 1);
                if (S.contains(x, scfg.feas_tol)) {
                    double v = fi.eval(x);
                    if (v < m) {
                        m = v;
                        bestPt = x;
                    }
                }
                int j = 0;
                while (j < n && ++counter[j] == per) counter[j++] = 0;
                if (j == n) break;
            }
            // tighten with a feasibility-preserving pattern search
            auto feas = [&](const Vec& x) {
                if (!S.contains(x, scfg.feas_tol)) return false;
                for (double xi : x)
                    if (std::abs(xi) > r) return false;
                return true;
            };
            if (feas(bestPt)) {
                SearchResult sr = patternSearch([&](const Vec& x) { return fi.eval(x); }, feas,
                                                bestPt, 2.0 * r / (per - 1), 4000);
                m = std::min(m, sr.value);
            }
            mins.push_back(m);
        }
        double last = mins.back(), prev = mins[mins.size() - 2];
        bool diverging = last <= -10.0 && last <= 1.5 * prev;
        out.inf_values.push_back(last);
        if (diverging && !out.diverging_index) {
            out.bounded = false;
            out.diverging_index = idx;
        }
    }
    return out;
}

nlohmann::json RegularityReport::toJson() const {
    nlohmann::json j;
    j["s_choice"] = s_choice;
    j["numerical"] = numerical;
    nlohmann::json comps = nlohmann::json::array();
    for (const Trichotomy& t : component) comps.push_back(t.toJson());
    j["component_trichotomy"] = comps;
    nlohmann::json lams = nlohmann::json::array();
    for (const auto& [lam, t] : lambda_results)
        lams.push_back({{"lambda", lam}, {"result", t.toJson()}});
    j["lambda_results"] = lams;
    j["weak_class"] = weak_class.toJson();
    j["strict_class"] = strict_class.toJson();
    j["strict_precondition_ok"] = strict_precondition_ok;
    j["verdicts"] = {{"relatively_zero_regular", zero_regular},
                     {"relatively_weakly_regular", weakly_regular},
                     {"relatively_strongly_regular", strongly_regular}};
    return j;
}

RegularityReport relativeRegularityReport(const FeasibleSet& K, const VectorObjective& f,
                                          const SChoice& choice,
                                          const std::vector<Vec>& lambda_list,
                                          const SamplerConfig& cfg) {
    RegularityReport rep;
    rep.s_choice = sChoiceName(choice);
    Cone S = sInfinity(K, f, choice, cfg);
    rep.numerical = !S.isPolyhedral();

    VectorObjective F = f.leadingForms();
    for (const Polynomial& p : F.components())
        rep.component.push_back(scalarRecessionClassify(p, S, cfg));

    std::vector<Vec> lams = lambda_list;
    if (lams.empty()) {
        // default probes: uniform weights and each unit weight
        lams.push_back(Vec(f.size(), 1.0 / f.size()));
        for (int i = 0; i < f.size(); ++i) {
            Vec e(f.size(), 0.0);
            e[i] = 1.0;
            lams.push_back(e);
        }
    }
    auto regularTag = [](TriTag t) { return t == TriTag::ZeroOnly || t == TriTag::Empty; };
    for (const Vec& lam : lams) {
        Trichotomy t = lambdaRecessionClassify(f, lam, S, cfg);
        if (regularTag(t.tag)) rep.zero_regular = true;
        rep.lambda_results.push_back({lam, t});
    }

    rep.weak_class = weakRecessionClassify(F, S, cfg);
    StrictClassification sc = strictRecessionClassify(F, S, cfg);
    rep.strict_class = sc.tri;
    rep.strict_precondition_ok = sc.precondition_ok;

    // SOL^s bounded = weakly regular; SOL^w bounded = strongly regular
    // (the weak solution set contains the strict one).
    rep.weakly_regular = regularTag(rep.strict_class.tag);
    rep.strongly_regular = regularTag(rep.weak_class.tag);
    return rep;
}

}  // namespace pvo
