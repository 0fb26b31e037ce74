#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pvo/regularity.hpp"

using namespace pvo;

namespace {

Cone wedgeCone() {  // {x2 >= x1 >= 0}
    return Cone::polyhedral(Polyhedron{{{1.0, -1.0}, {-1.0, 0.0}}, {0.0, 0.0}});
}

Cone thirdQuadrant() {  // {x1 <= 0, x2 <= 0}
    return Cone::polyhedral(Polyhedron{{{1.0, 0.0}, {0.0, 1.0}}, {0.0, 0.0}});
}

Cone firstQuadrant() {
    return Cone::polyhedral(Polyhedron{{{-1.0, 0.0}, {0.0, -1.0}}, {0.0, 0.0}});
}

Cone fullPlane() {
    return Cone::sampled(2, [](const Vec&) { return true; }, "plane");
}

// nonnegative half-axes {(t,0), (0,t) : t >= 0}
Cone axesCone() {
    return Cone::sampled(
        2,
        [](const Vec& v) {
            double tol = 1e-9;
            return v[0] >= -tol && v[1] >= -tol && (std::abs(v[0]) <= tol || std::abs(v[1]) <= tol);
        },
        "axes");
}

}  // namespace

TEST_CASE("scalar recession classify") {
    SamplerConfig cfg;
    SUBCASE("x1*x2^2 on the wedge is unbounded with witness (0,1)") {
        Polynomial h = Polynomial::fromTerms(2, {{{1, 2}, 1.0}});
        Trichotomy t = scalarRecessionClassify(h, wedgeCone(), cfg);
        CHECK(t.tag == TriTag::Unbounded);
        REQUIRE(t.witness);
        CHECK(std::abs((*t.witness)[0]) < 1e-6);
        CHECK(std::abs((*t.witness)[1] - 1.0) < 1e-6);
        CHECK(std::abs(t.min_value) <= t.tau);
    }
    SUBCASE("x1 on the third quadrant is empty with witness (-1,0)") {
        Trichotomy t = scalarRecessionClassify(Polynomial::variable(2, 0), thirdQuadrant(), cfg);
        CHECK(t.tag == TriTag::Empty);
        REQUIRE(t.witness);
        CHECK(std::abs((*t.witness)[0] + 1.0) < 1e-9);
        CHECK(t.min_value == doctest::Approx(-1.0).epsilon(1e-9));
    }
    SUBCASE("anything on the zero cone is {0}") {
        Polynomial h = Polynomial::fromTerms(2, {{{1, 1}, -5.0}});
        Trichotomy t = scalarRecessionClassify(h, Cone::zero(2), cfg);
        CHECK(t.tag == TriTag::ZeroOnly);
        CHECK_FALSE(t.witness);
    }
    SUBCASE("positive definite form is {0}") {
        Polynomial h = Polynomial::fromTerms(2, {{{2, 0}, 1.0}, {{0, 2}, 1.0}});
        Trichotomy t = scalarRecessionClassify(h, fullPlane(), cfg);
        CHECK(t.tag == TriTag::ZeroOnly);
        CHECK(t.min_value > t.tau);
    }
    SUBCASE("non-homogeneous input is rejected") {
        Polynomial p = Polynomial::fromTerms(2, {{{2, 0}, 1.0}, {{1, 0}, 1.0}});
        CHECK_THROWS_AS(scalarRecessionClassify(p, fullPlane(), cfg), std::invalid_argument);
        CHECK_THROWS_AS(scalarRecessionClassify(Polynomial::constant(2, 1.0), fullPlane(), cfg),
                        std::invalid_argument);
    }
    SUBCASE("tag matches min_value and tau on every produced instance") {
        Rng rng(5);
        for (int trial = 0; trial < 20; ++trial) {
            Polynomial h = randomPolynomial(2, 2, rng).leadingForm();
            Trichotomy t = scalarRecessionClassify(h, fullPlane(), cfg);
            if (t.tag == TriTag::ZeroOnly) CHECK(t.min_value > t.tau);
            if (t.tag == TriTag::Unbounded) CHECK(std::abs(t.min_value) <= t.tau);
            if (t.tag == TriTag::Empty) CHECK(t.min_value < -t.tau);
            if (t.witness) CHECK(std::abs(norm(*t.witness) - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("weak recession classify") {
    SamplerConfig cfg;
    SUBCASE("identity objective on the third quadrant is empty") {
        VectorObjective F({Polynomial::variable(2, 0), Polynomial::variable(2, 1)});
        Trichotomy t = weakRecessionClassify(F, thirdQuadrant(), cfg);
        CHECK(t.tag == TriTag::Empty);
        REQUIRE(t.witness);
        CHECK((*t.witness)[0] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-6));
        CHECK((*t.witness)[1] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-6));
    }
    SUBCASE("zero cone gives {0}") {
        VectorObjective F({Polynomial::fromTerms(2, {{{0, 3}, 1.0}}),
                           Polynomial::fromTerms(2, {{{2, 0}, 1.0}})});
        CHECK(weakRecessionClassify(F, Cone::zero(2), cfg).tag == TriTag::ZeroOnly);
    }
    SUBCASE("forms vanishing on the axes give an unbounded axis witness") {
        VectorObjective F({Polynomial::fromTerms(2, {{{8, 8}, 1.0}}),
                           Polynomial::fromTerms(2, {{{4, 4}, 1.0}})});
        Trichotomy t = weakRecessionClassify(F, fullPlane(), cfg);
        CHECK(t.tag == TriTag::Unbounded);
        REQUIRE(t.witness);
        CHECK(std::abs((*t.witness)[0] * (*t.witness)[1]) < 1e-6);  // on an axis
    }
}

TEST_CASE("strict recession classify") {
    SamplerConfig cfg;
    SUBCASE("identity on the first quadrant: precondition fails, set is {0}") {
        VectorObjective F({Polynomial::variable(2, 0), Polynomial::variable(2, 1)});
        StrictClassification s = strictRecessionClassify(F, firstQuadrant(), cfg);
        CHECK_FALSE(s.precondition_ok);
        CHECK(s.tri.tag == TriTag::ZeroOnly);
    }
    SUBCASE("identity on the third quadrant: precondition holds, empty") {
        VectorObjective F({Polynomial::variable(2, 0), Polynomial::variable(2, 1)});
        StrictClassification s = strictRecessionClassify(F, thirdQuadrant(), cfg);
        CHECK(s.precondition_ok);
        CHECK(s.tri.tag == TriTag::Empty);
    }
    SUBCASE("zero cone") {
        VectorObjective F({Polynomial::variable(2, 0), Polynomial::variable(2, 1)});
        StrictClassification s = strictRecessionClassify(F, Cone::zero(2), cfg);
        CHECK(s.tri.tag == TriTag::ZeroOnly);
    }
}

TEST_CASE("sphere pareto oracle") {
    SamplerConfig cfg;
    SUBCASE("identity on the quarter circle keeps the axis points") {
        VectorObjective F({Polynomial::variable(2, 0), Polynomial::variable(2, 1)});
        std::vector<Vec> nd = sphereParetoOracle(F, firstQuadrant(), cfg, ParetoMode::Weak);
        bool has10 = false, has01 = false;
        for (const Vec& u : nd) {
            if (dist(u, {1.0, 0.0}) < 1e-9) has10 = true;
            if (dist(u, {0.0, 1.0}) < 1e-9) has01 = true;
        }
        CHECK(has10);
        CHECK(has01);
    }
    SUBCASE("zero cone gives an empty oracle set") {
        VectorObjective F({Polynomial::variable(2, 0), Polynomial::variable(2, 1)});
        CHECK(sphereParetoOracle(F, Cone::zero(2), cfg, ParetoMode::Weak).empty());
    }
    SUBCASE("oracle nonemptiness does not certify solution nonemptiness") {
        // On the third quadrant the oracle keeps (-1,-1)/sqrt(2) (nothing on
        // the sphere improves both components), yet the recession solution
        // set is empty because scaling escapes the sphere. This pins the
        // division of labor: emptiness is decided by the 0-membership test,
        // never by the oracle.
        VectorObjective F({Polynomial::variable(2, 0), Polynomial::variable(2, 1)});
        std::vector<Vec> nd = sphereParetoOracle(F, thirdQuadrant(), cfg, ParetoMode::Weak);
        bool hasDiag = false;
        for (const Vec& u : nd)
            if (dist(u, {-1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)}) < 1e-6) hasDiag = true;
        CHECK(hasDiag);
        CHECK(weakRecessionClassify(F, thirdQuadrant(), cfg).tag == TriTag::Empty);
    }
}

TEST_CASE("lambda recession classify") {
    SamplerConfig cfg;
    SUBCASE("zero cone: every lambda classifies {0}") {
        VectorObjective f(
            {Polynomial::fromTerms(2, {{{0, 3}, 1.0}, {{2, 0}, -1.0}, {{1, 1}, -1.0}, {{0, 0}, 1.0}}),
             Polynomial::fromTerms(2, {{{2, 0}, 1.0}, {{0, 0}, -1.0}})});
        for (Vec lam : {Vec{1.0, 1.0}, Vec{0.0, 1.0}, Vec{2.0, 0.5}})
            CHECK(lambdaRecessionClassify(f, lam, Cone::zero(2), cfg).tag == TriTag::ZeroOnly);
    }
    SUBCASE("cancellation falls back to the merged sum's leading form") {
        // f = (x1^2*x2 + x1, -x1^2*x2 + x2) on the nonnegative axes:
        // lambda = (1,1) cancels the cubic terms, leaving x1 + x2 -> {0};
        // lambda = (0,1) keeps -x1^2*x2, which vanishes on the axes -> unbounded.
        VectorObjective f({Polynomial::fromTerms(2, {{{2, 1}, 1.0}, {{1, 0}, 1.0}}),
                           Polynomial::fromTerms(2, {{{2, 1}, -1.0}, {{0, 1}, 1.0}})});
        CHECK(lambdaRecessionClassify(f, {1.0, 1.0}, axesCone(), cfg).tag == TriTag::ZeroOnly);
        CHECK(lambdaRecessionClassify(f, {0.0, 1.0}, axesCone(), cfg).tag == TriTag::Unbounded);
    }
    SUBCASE("identically zero weighted sum solves everywhere") {
        VectorObjective f({Polynomial::fromTerms(2, {{{1, 0}, 1.0}, {{0, 1}, -1.0}}),
                           Polynomial::fromTerms(2, {{{1, 0}, -1.0}, {{0, 1}, 1.0}})});
        Cone diag = Cone::polyhedral(
            Polyhedron{{{-1.0, 0.0}, {0.0, -1.0}, {1.0, -1.0}, {-1.0, 1.0}}, {0, 0, 0, 0}});
        Trichotomy t = lambdaRecessionClassify(f, {1.0, 1.0}, diag, cfg);
        CHECK(t.tag == TriTag::Unbounded);
        REQUIRE(t.witness);
        CHECK((*t.witness)[0] == doctest::Approx((*t.witness)[1]).epsilon(1e-9));
        CHECK(lambdaRecessionClassify(f, {1.0, 1.0}, Cone::zero(2), cfg).tag == TriTag::ZeroOnly);
    }
    SUBCASE("all-zero lambda is rejected") {
        VectorObjective f({Polynomial::variable(2, 0), Polynomial::variable(2, 1)});
        CHECK_THROWS_AS(lambdaRecessionClassify(f, {0.0, 0.0}, fullPlane(), cfg),
                        std::invalid_argument);
    }
}

TEST_CASE("section bounded probe") {
    SamplerConfig scfg;
    SolverConfig vcfg;
    SUBCASE("wedge problem at (1/2,1/2): bounded with inf near -4/27") {
        VectorObjective f({Polynomial::fromTerms(2, {{{1, 2}, 1.0}, {{1, 1}, -1.0}})});
        FeasibleSet K = FeasibleSet::polyhedral({{{1.0, -1.0}, {-1.0, 0.0}}, {0.0, 0.0}});
        SectionBoundedResult r = sectionBoundedProbe(f, K, {0.5, 0.5}, {0}, scfg, vcfg);
        CHECK(r.bounded);
        CHECK(r.inf_values[0] == doctest::Approx(-4.0 / 27.0).epsilon(1e-3));
    }
    SUBCASE("linear objective on the plane is unbounded below") {
        VectorObjective f({Polynomial::variable(2, 0), Polynomial::variable(2, 1)});
        FeasibleSet plane = FeasibleSet::polyhedral({{{0.0, 0.0}}, {0.0}});
        SectionBoundedResult r = sectionBoundedProbe(f, plane, {0.0, 0.0}, {0}, scfg, vcfg);
        CHECK_FALSE(r.bounded);
        CHECK(r.diverging_index == 0);
    }
    SUBCASE("strict Pareto base point gives a singleton section") {
        std::vector<Expr::Ptr> cs;
        for (const char* s : {"0 - x1", "0 - x2", "x2 - exp(x1)"}) cs.push_back(parseExpr(s));
        FeasibleSet K = FeasibleSet::fromConstraints(2, std::move(cs));
        VectorObjective f(
            {Polynomial::fromTerms(2, {{{0, 3}, 1.0}, {{2, 0}, -1.0}, {{1, 1}, -1.0}, {{0, 0}, 1.0}}),
             Polynomial::fromTerms(2, {{{2, 0}, 1.0}, {{0, 0}, -1.0}})});
        SectionBoundedResult r = sectionBoundedProbe(f, K, {0.0, 0.0}, {0, 1}, scfg, vcfg);
        CHECK(r.bounded);
        CHECK(r.inf_values[0] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(r.inf_values[1] == doctest::Approx(-1.0).epsilon(1e-6));
    }
}

TEST_CASE("relative regularity report") {
    SamplerConfig cfg;
    SUBCASE("exp-bounded benchmark with the leading slice: fully regular") {
        std::vector<Expr::Ptr> cs;
        for (const char* s : {"0 - x1", "0 - x2", "x2 - exp(x1)"}) cs.push_back(parseExpr(s));
        FeasibleSet K = FeasibleSet::fromConstraints(2, std::move(cs));
        VectorObjective f(
            {Polynomial::fromTerms(2, {{{0, 3}, 1.0}, {{2, 0}, -1.0}, {{1, 1}, -1.0}, {{0, 0}, 1.0}}),
             Polynomial::fromTerms(2, {{{2, 0}, 1.0}, {{0, 0}, -1.0}})});
        RegularityReport rep = relativeRegularityReport(K, f, LeadingSlice{}, {}, cfg);
        CHECK(rep.zero_regular);
        CHECK(rep.weakly_regular);
        CHECK(rep.strongly_regular);
        CHECK(rep.weak_class.sample_count == 0);  // S_infinity collapses to {0}
        if (rep.strongly_regular) CHECK(rep.weakly_regular);
    }
    SUBCASE("wedge problem: non-regular on K, regular on the sublevel choice") {
        VectorObjective f({Polynomial::fromTerms(2, {{{1, 2}, 1.0}, {{1, 1}, -1.0}})});
        FeasibleSet K = FeasibleSet::polyhedral({{{1.0, -1.0}, {-1.0, 0.0}}, {0.0, 0.0}});
        RegularityReport whole = relativeRegularityReport(K, f, WholeSetCone{}, {}, cfg);
        CHECK_FALSE(whole.anyRegular());
        CHECK(whole.weak_class.tag == TriTag::Unbounded);
        RegularityReport sub =
            relativeRegularityReport(K, f, SublevelCone{{0.5, 0.5}}, {}, cfg);
        CHECK(sub.zero_regular);
        CHECK(sub.weakly_regular);
        CHECK(sub.strongly_regular);
        if (sub.strongly_regular) CHECK(sub.weakly_regular);
    }
    SUBCASE("diagonal problem: unbounded for every choice") {
        VectorObjective f({Polynomial::fromTerms(2, {{{1, 0}, 1.0}, {{0, 1}, -1.0}}),
                           Polynomial::fromTerms(2, {{{1, 0}, -1.0}, {{0, 1}, 1.0}})});
        FeasibleSet K = FeasibleSet::polyhedral(
            {{{-1.0, 0.0}, {0.0, -1.0}, {1.0, -1.0}, {-1.0, 1.0}}, {0, 0, 0, 0}});
        for (SChoice c : std::vector<SChoice>{WholeSetCone{}, LeadingSlice{},
                                              SublevelCone{{1.0, 1.0}}}) {
            RegularityReport rep = relativeRegularityReport(K, f, c, {{1.0, 1.0}}, cfg);
            CHECK_FALSE(rep.anyRegular());
        }
    }
}

TEST_CASE("componentwise equivalence on randomly generated compatible instances") {
    // Random componentwise-homogeneous objectives built to be <= 0 on a
    // random polyhedral cone (so the strict precondition holds), checked for
    // the three-way equivalence of the {0} classification. Borderline
    // instances (slice min within 2*tau of zero) are excluded.
    SamplerConfig cfg;
    Rng rng(777);
    int tested = 0;
    while (tested < 50) {
        Polyhedron P;
        int m = 1 + static_cast<int>(rng.below(3));
        for (int i = 0; i < m; ++i) {
            Vec row = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
            if (norm(row) < 0.1) { --i; continue; }
            P.A.push_back(row);
            P.b.push_back(0.0);
        }
        Cone C = Cone::polyhedral(P);
        const auto& samples = C.sphereSamples(cfg.resolutionFor(2));

        auto randomNonnegLinear = [&]() -> std::optional<Polynomial> {
            for (int attempt = 0; attempt < 30; ++attempt) {
                Vec a = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
                if (norm(a) < 0.1) continue;
                bool ok = true;
                for (const Vec& u : samples)
                    if (dot(a, u) < 0) { ok = false; break; }
                if (ok)
                    return Polynomial::fromTerms(2, {{{1, 0}, a[0]}, {{0, 1}, a[1]}});
            }
            return std::nullopt;
        };

        std::vector<Polynomial> comps;
        bool built = true;
        for (int i = 0; i < 2 && built; ++i) {
            int d = 1 + static_cast<int>(rng.below(3));
            Polynomial prod = Polynomial::constant(2, -1.0);
            for (int k = 0; k < d; ++k) {
                auto lin = randomNonnegLinear();
                if (!lin) { built = false; break; }
                PolynomialBuilder b(2);
                for (const auto& [ea, ca] : prod.terms())
                    for (const auto& [eb, cb] : lin->terms())
                        b.add({ea[0] + eb[0], ea[1] + eb[1]}, ca * cb);
                prod = b.build();
            }
            if (built && prod.degree() >= 1) comps.push_back(prod);
            else built = false;
        }
        if (!built) continue;
        VectorObjective F(std::move(comps));

        bool borderline = false;
        bool allZero = true;
        for (const Polynomial& p : F.components()) {
            Trichotomy t = scalarRecessionClassify(p, C, cfg);
            if (std::abs(t.min_value) <= 2 * t.tau && t.sample_count > 0) borderline = true;
            if (t.tag != TriTag::ZeroOnly) allZero = false;
        }
        if (borderline) continue;

        Trichotomy w = weakRecessionClassify(F, C, cfg);
        StrictClassification s = strictRecessionClassify(F, C, cfg);
        CHECK(s.precondition_ok);
        CHECK((w.tag == TriTag::ZeroOnly) == allZero);
        CHECK((s.tri.tag == TriTag::ZeroOnly) == allZero);
        ++tested;
    }
}

TEST_CASE("slice minimum is monotone under cone enlargement") {
    SamplerConfig cfg;
    Cone inner = wedgeCone();
    Cone mid = firstQuadrant();
    Cone outer = Cone::polyhedral(Polyhedron{{{0.0, -1.0}}, {0.0}});  // upper half plane
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        Polynomial h = randomPolynomial(2, 3, rng).leadingForm();
        double mi = scalarRecessionClassify(h, inner, cfg).min_value;
        double mm = scalarRecessionClassify(h, mid, cfg).min_value;
        double mo = scalarRecessionClassify(h, outer, cfg).min_value;
        CHECK(mi >= mm - 1e-12);
        CHECK(mm >= mo - 1e-12);
    }
}

TEST_CASE("unbounded weak witnesses come from the oracle") {
    SamplerConfig cfg;
    Rng rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        Polynomial a = randomPolynomial(2, 2, rng).leadingForm();
        Polynomial b = randomPolynomial(2, 2, rng).leadingForm();
        VectorObjective F({a, b});
        Trichotomy t = weakRecessionClassify(F, firstQuadrant(), cfg);
        if (t.tag != TriTag::Unbounded) continue;
        std::vector<Vec> nd = sphereParetoOracle(F, firstQuadrant(), cfg, ParetoMode::Weak);
        double res_rad = cfg.resolutionFor(2) * 3.14159265358979323846 / 180.0;
        double best = 1e300;
        for (const Vec& u : nd) best = std::min(best, dist(u, *t.witness));
        CHECK(best <= 2.0 * res_rad + 1e-12);
    }
}
