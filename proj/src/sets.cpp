#include "pvo/sets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pvo/direct_search.hpp"

namespace pvo {

namespace {

constexpr double kPi = std::numbers::pi;

Expr::Ptr rowToExpr(const Vec& row, double rhs) {
    Expr::Ptr e = Expr::constant(-rhs);
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] == 0.0) continue;
        e = Expr::add(e, Expr::mul(Expr::constant(row[j]), Expr::variable(static_cast<int>(j))));
    }
    return e;
}

}  // namespace

FeasibleSet FeasibleSet::polyhedral(Polyhedron P) {
    if (P.A.size() != P.b.size())
        throw std::invalid_argument("polyhedron row/rhs count mismatch");
    FeasibleSet K;
    K.dimension_ = P.dimension();
    if (K.dimension_ < 1) throw std::invalid_argument("polyhedron needs at least one column");
    for (const Vec& row : P.A)
        if (static_cast<int>(row.size()) != K.dimension_)
            throw std::invalid_argument("ragged polyhedron matrix");
    for (std::size_t i = 0; i < P.A.size(); ++i) K.exprs_.push_back(rowToExpr(P.A[i], P.b[i]));
    K.poly_ = std::move(P);
    return K;
}

FeasibleSet FeasibleSet::fromConstraints(int dimension, std::vector<Expr::Ptr> constraints) {
    if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
    FeasibleSet K;
    K.dimension_ = dimension;
    for (const Expr::Ptr& c : constraints)
        if (c->minDimension() > dimension)
            throw std::invalid_argument("constraint references variable beyond dimension");
    K.exprs_ = std::move(constraints);
    return K;
}

const Polyhedron& FeasibleSet::polyhedron() const {
    if (!poly_) throw std::logic_error("feasible set is not polyhedral");
    return *poly_;
}

double FeasibleSet::maxViolation(const Vec& x) const {
    if (static_cast<int>(x.size()) != dimension_)
        throw std::invalid_argument("point dimension mismatch");
    double worst = -std::numeric_limits<double>::infinity();
    if (poly_) {
        if (poly_->A.empty()) return 0.0;
        for (std::size_t i = 0; i < poly_->A.size(); ++i) {
            double rn = norm(poly_->A[i]);
            double v = dot(poly_->A[i], x) - poly_->b[i];
            worst = std::max(worst, rn > 0 ? v / rn : v);
        }
        return worst;
    }
    if (exprs_.empty()) return 0.0;
    for (const Expr::Ptr& c : exprs_) worst = std::max(worst, c->eval(x));
    return worst;
}

bool FeasibleSet::contains(const Vec& x, double tol) const {
    if (tol < 0) throw std::invalid_argument("negative tolerance");
    return maxViolation(x) <= tol;
}

FeasibleSet FeasibleSet::withExtraConstraints(const std::vector<Expr::Ptr>& extra) const {
    std::vector<Expr::Ptr> all = exprs_;
    for (const Expr::Ptr& c : extra) {
        if (c->minDimension() > dimension_)
            throw std::invalid_argument("constraint references variable beyond dimension");
        all.push_back(c);
    }
    return fromConstraints(dimension_, std::move(all));
}

FeasibleSet sublevelSet(const FeasibleSet& K, const VectorObjective& f, const Vec& xbar,
                        double feas_tol) {
    if (f.dimension() != K.dimension())
        throw std::invalid_argument("objective/set dimension mismatch");
    if (!K.contains(xbar, feas_tol))
        throw std::invalid_argument("base point is infeasible");
    std::vector<Expr::Ptr> extra;
    for (int i = 0; i < f.size(); ++i) {
        const Polynomial& fi = f.component(i);
        double level = fi.eval(xbar);
        // f_i(x) - f_i(xbar) <= 0, expressed as a term-by-term tree
        Expr::Ptr e = Expr::constant(-level);
        for (const auto& [exps, coeff] : fi.terms()) {
            Expr::Ptr t = Expr::constant(coeff);
            for (int j = 0; j < K.dimension(); ++j)
                if (exps[j] > 0) t = Expr::mul(t, Expr::pow(Expr::variable(j), exps[j]));
            e = Expr::add(e, t);
        }
        extra.push_back(e);
    }
    return K.withExtraConstraints(extra);
}

Polyhedron polyhedralAsymptoticCone(const Polyhedron& P) {
    Polyhedron C;
    C.A = P.A;
    C.b.assign(P.b.size(), 0.0);
    return C;
}

namespace {

// Penalty search for a feasible point near the target: minimizes
// max-violation plus a pull toward the target, extreme objective handled by
// Nelder-Mead.
Vec repairTowards(const FeasibleSet& K, const Vec& target, double pull, int budget) {
    auto G = [&](const Vec& x) {
        double viol = std::max(0.0, K.maxViolation(x));
        return viol + pull * dist(x, target);
    };
    double scale = std::max(1.0, 0.05 * norm(target));
    SearchResult r = nelderMead(G, target, scale, budget);
    return r.x;
}

}  // namespace

bool rayInCone(const FeasibleSet& K, const Vec& v, const SamplerConfig& cfg) {
    if (static_cast<int>(v.size()) != K.dimension())
        throw std::invalid_argument("direction dimension mismatch");
    double nv = norm(v);
    if (nv < 1e-14) return true;  // 0 is in every asymptotic cone
    Vec u = scaled(v, 1.0 / nv);

    // Exact short-circuits: polyhedral membership, or t*u feasible for all
    // tested scales.
    if (K.isPolyhedral()) {
        const Polyhedron& P = K.polyhedron();
        for (std::size_t i = 0; i < P.A.size(); ++i) {
            double rn = norm(P.A[i]);
            if (dot(P.A[i], u) > (rn > 0 ? rn : 1.0) * 1e-9) return false;
        }
        return true;
    }
    bool exact = true;
    for (double t : cfg.ray_scales)
        if (!K.contains(scaled(u, t), cfg.feas_tol)) {
            exact = false;
            break;
        }
    if (exact) return true;

    // Numerical route: repair t*u onto K at each scale; require success at
    // every scale and a normalized distance that trends to zero: within tol
    // at the largest scale and either halved since the smallest scale or
    // absolutely small. A constant distance at the tolerance (a direction
    // just outside the cone) is rejected.
    double first_dist = std::numeric_limits<double>::infinity();
    double last_dist = std::numeric_limits<double>::infinity();
    for (std::size_t si = 0; si < cfg.ray_scales.size(); ++si) {
        double t = cfg.ray_scales[si];
        Vec target = scaled(u, t);
        Vec x = repairTowards(K, target, 1e-6, cfg.ray_budget);
        double viol = K.maxViolation(x);
        if (viol > 1e-4 * t) return false;  // no feasible point anywhere near the ray
        last_dist = dist(scaled(x, 1.0 / t), u);
        if (si == 0) first_dist = last_dist;
    }
    // the absolute fallback stays below the classifier threshold floor so an
    // accepted off-cone direction cannot flip a trichotomy sign
    return last_dist <= cfg.ray_tol && (last_dist <= 0.5 * first_dist || last_dist <= 1e-6);
}

Vec findFeasiblePoint(const FeasibleSet& K, const SamplerConfig& cfg) {
    const int n = K.dimension();
    std::vector<Vec> starts;
    starts.push_back(Vec(n, 0.0));
    for (int j = 0; j < n; ++j)
        for (double s : {1.0, -1.0, 5.0, -5.0}) {
            Vec x(n, 0.0);
            x[j] = s;
            starts.push_back(x);
        }
    Rng rng(Rng::deriveSeed(cfg.seed, 0xFEA5));
    for (int k = 0; k < 40; ++k) {
        Vec x(n);
        for (double& xi : x) xi = rng.uniform(-10.0, 10.0);
        starts.push_back(x);
    }
    for (const Vec& s : starts) {
        if (K.contains(s, cfg.feas_tol)) return s;
        auto G = [&](const Vec& x) { return std::max(0.0, K.maxViolation(x)); };
        SearchResult r = nelderMead(G, s, 1.0, 400);
        if (K.contains(r.x, cfg.feas_tol)) return r.x;
    }
    throw std::runtime_error("no feasible point found: the set appears empty");
}

std::vector<Vec> unitSphereGrid(int dimension, double resolution_deg) {
    if (resolution_deg <= 0) throw std::invalid_argument("resolution must be positive");
    std::vector<Vec> out;
    if (dimension == 1) {
        out.push_back({1.0});
        out.push_back({-1.0});
        return out;
    }
    if (dimension == 2) {
        int steps = static_cast<int>(std::lround(360.0 / resolution_deg));
        for (int k = 0; k < steps; ++k) {
            double th = 2.0 * kPi * k / steps;
            out.push_back({std::cos(th), std::sin(th)});
        }
        return out;
    }
    if (dimension == 3 || dimension == 4) {
        int half = static_cast<int>(std::lround(180.0 / resolution_deg));
        int full = 2 * half;
        if (dimension == 3) {
            for (int i = 0; i <= half; ++i) {
                double phi = kPi * i / half;  // polar angle
                for (int k = 0; k < full; ++k) {
                    double th = 2.0 * kPi * k / full;
                    out.push_back({std::sin(phi) * std::cos(th), std::sin(phi) * std::sin(th),
                                   std::cos(phi)});
                    if (i == 0 || i == half) break;  // poles once
                }
            }
            return out;
        }
        for (int i = 0; i <= half; ++i) {
            double a = kPi * i / half;
            for (int j = 0; j <= half; ++j) {
                double b = kPi * j / half;
                for (int k = 0; k < full; ++k) {
                    double c = 2.0 * kPi * k / full;
                    out.push_back({std::cos(a), std::sin(a) * std::cos(b),
                                   std::sin(a) * std::sin(b) * std::cos(c),
                                   std::sin(a) * std::sin(b) * std::sin(c)});
                    if (j == 0 || j == half) break;
                    if (i == 0 || i == half) break;
                }
                if (i == 0 || i == half) break;
            }
        }
        return out;
    }
    throw std::invalid_argument("dense sphere sampling supports dimension <= 4 only");
}

Cone Cone::polyhedral(Polyhedron P) {
    Cone C;
    C.dimension_ = P.dimension();
    C.label_ = "polyhedral";
    Polyhedron cone = polyhedralAsymptoticCone(P);
    C.membership_ = [cone](const Vec& v) {
        for (const Vec& row : cone.A) {
            double rn = norm(row);
            if (dot(row, v) > (rn > 0 ? rn : 1.0) * 1e-9) return false;
        }
        return true;
    };
    C.poly_ = std::move(cone);
    C.cheap_membership_ = true;
    return C;
}

Cone Cone::sampled(int dimension, std::function<bool(const Vec&)> membership,
                   std::string label) {
    Cone C;
    C.dimension_ = dimension;
    C.membership_ = std::move(membership);
    C.label_ = std::move(label);
    return C;
}

Cone Cone::zero(int dimension) {
    Cone C;
    C.dimension_ = dimension;
    C.label_ = "zero";
    C.membership_ = [](const Vec&) { return false; };
    C.cheap_membership_ = true;
    return C;
}

Cone Cone::intersectWithLeadingSlice(const Cone& base, const VectorObjective& f, double tol) {
    VectorObjective lf = f.leadingForms();
    Cone C;
    C.dimension_ = base.dimension();
    C.label_ = base.label_ + "+leading-slice";
    auto baseMember = base.membership_;
    C.membership_ = [baseMember, lf, tol](const Vec& v) {
        // test the (cheap) polynomial slice first, the cone membership second
        for (const Polynomial& p : lf.components())
            if (p.eval(v) > tol) return false;
        return baseMember(v);
    };
    C.cheap_membership_ = base.cheap_membership_;
    return C;
}

bool Cone::containsDirection(const Vec& v) const {
    double nv = norm(v);
    if (nv < 1e-14) return true;
    return membership_(scaled(v, 1.0 / nv));
}

const std::vector<Vec>& Cone::sphereSamples(double resolution_deg) const {
    for (const auto& [res, samples] : cache_)
        if (res == resolution_deg) return *samples;
    auto samples = std::make_shared<std::vector<Vec>>();
    for (const Vec& u : unitSphereGrid(dimension_, resolution_deg))
        if (membership_(u)) samples->push_back(u);
    // order-independent aggregation: sort lexicographically before reporting
    std::sort(samples->begin(), samples->end(), lexLess);
    cache_.emplace_back(resolution_deg, samples);
    return *cache_.back().second;
}

SChoice sChoiceFromString(const std::string& name, const std::optional<Vec>& xbar) {
    if (name == "whole") return WholeSetCone{};
    if (name == "leading-slice") return LeadingSlice{};
    if (name == "sublevel") {
        if (!xbar) throw std::invalid_argument("sublevel cone requires a base point");
        return SublevelCone{*xbar};
    }
    throw std::invalid_argument("unknown S-choice '" + name + "'");
}

std::string sChoiceName(const SChoice& choice) {
    if (std::holds_alternative<WholeSetCone>(choice)) return "whole";
    if (std::holds_alternative<SublevelCone>(choice)) return "sublevel";
    return "leading-slice";
}

namespace {

Cone asymptoticCone(const FeasibleSet& K, const SamplerConfig& cfg) {
    if (K.isPolyhedral()) return Cone::polyhedral(K.polyhedron());
    return Cone::sampled(
        K.dimension(), [K, cfg](const Vec& v) { return rayInCone(K, v, cfg); },
        "sampled");
}

}  // namespace

Cone sInfinity(const FeasibleSet& K, const VectorObjective& f, const SChoice& choice,
               const SamplerConfig& cfg) {
    if (f.dimension() != K.dimension())
        throw std::invalid_argument("objective/set dimension mismatch");
    if (std::holds_alternative<WholeSetCone>(choice)) return asymptoticCone(K, cfg);
    if (std::holds_alternative<LeadingSlice>(choice))
        return Cone::intersectWithLeadingSlice(asymptoticCone(K, cfg), f, cfg.feas_tol);
    const Vec& xbar = std::get<SublevelCone>(choice).xbar;
    FeasibleSet S = sublevelSet(K, f, xbar, cfg.feas_tol);
    return Cone::sampled(
        K.dimension(), [S, cfg](const Vec& v) { return rayInCone(S, v, cfg); },
        "sublevel-sampled");
}

BoundedProbeResult boundedProbe(const FeasibleSet& K, const std::vector<double>& radii,
                                const SamplerConfig& cfg) {
    if (radii.empty()) throw std::invalid_argument("empty radius schedule");
    const int n = K.dimension();
    if (K.isPolyhedral()) {
        // exact route on the recession cone's sphere slice
        Cone C = Cone::polyhedral(K.polyhedron());
        const auto& samples = C.sphereSamples(cfg.resolutionFor(n));
        if (samples.empty()) return {BoundedKind::Bounded, {}};
        return {BoundedKind::UnboundedWitness, samples.front()};
    }

    double res = cfg.resolutionFor(n);
    std::vector<Vec> dirs = unitSphereGrid(n, std::max(res, 2.0));
    Vec lastDir;
    bool haveLast = false;
    int stable = 0;
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
        double r = radii[ri];
        // find a feasible point on (or near) the shell of radius r
        bool found = false;
        Vec bestDir;
        double bestViol = std::numeric_limits<double>::infinity();
        for (const Vec& u : dirs) {
            Vec x = scaled(u, r);
            double viol = K.maxViolation(x);
            if (viol <= cfg.feas_tol) {
                found = true;
                bestDir = u;
                break;
            }
            if (viol < bestViol) {
                bestViol = viol;
                bestDir = u;
            }
        }
        if (!found) {
            // local repair from the least-violating shell point, keeping the
            // norm pinned near r
            Vec start = scaled(bestDir, r);
            auto G = [&](const Vec& x) {
                double viol = std::max(0.0, K.maxViolation(x));
                return viol + 1e-3 * std::abs(norm(x) - r) / r;
            };
            SearchResult sr = nelderMead(G, start, 0.1 * r, 600);
            if (K.contains(sr.x, cfg.feas_tol) && norm(sr.x) >= 0.5 * r) {
                found = true;
                bestDir = normalized(sr.x);
            }
        }
        if (!found) {
            if (ri == 0) continue;                       // the first shell may be too tight
            return {BoundedKind::Bounded, {}};           // nothing beyond this radius
        }
        if (ri > 0 && haveLast && dist(bestDir, lastDir) <= 0.2) ++stable;
        lastDir = bestDir;
        haveLast = true;
    }
    if (haveLast && stable >= static_cast<int>(radii.size()) / 2)
        return {BoundedKind::UnboundedWitness, lastDir};
    if (haveLast) return {BoundedKind::Unknown, lastDir};
    return {BoundedKind::Bounded, {}};
}

}  // namespace pvo
