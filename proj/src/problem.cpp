#include "pvo/problem.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "pvo/expr.hpp"

namespace pvo {

namespace {

Vec vecField(const nlohmann::json& j, const std::string& key, int expect_dim) {
    if (!j.is_array()) throw ProblemError("'" + key + "' must be an array of numbers");
    Vec v;
    for (const auto& e : j) {
        if (!e.is_number()) throw ProblemError("'" + key + "' must contain numbers only");
        v.push_back(e.get<double>());
    }
    if (expect_dim > 0 && static_cast<int>(v.size()) != expect_dim)
        throw ProblemError("'" + key + "' must have length " + std::to_string(expect_dim));
    return v;
}

Polynomial objectiveFromEntry(int dim, const nlohmann::json& entry, int index) {
    const std::string where = "objectives[" + std::to_string(index) + "]";
    if (entry.is_string()) {
        try {
            Expr::Ptr e = parseExpr(entry.get<std::string>());
            return exprToPolynomial(e, dim);
        } catch (const ParseError& pe) {
            throw ProblemError(where + ": " + pe.what());
        } catch (const std::exception& ex) {
            throw ProblemError(where + ": " + ex.what());
        }
    }
    if (entry.is_array()) {
        try {
            return Polynomial::fromJson(dim, entry);
        } catch (const std::exception& ex) {
            throw ProblemError(where + ": " + ex.what());
        }
    }
    throw ProblemError(where + ": must be an expression string or a term-list array");
}

FeasibleSet feasibleFromJson(int dim, const nlohmann::json& j) {
    if (j.is_object()) {
        if (!j.contains("A") || !j.contains("b"))
            throw ProblemError("polyhedral 'constraints' need fields 'A' and 'b'");
        Polyhedron P;
        for (const auto& row : j.at("A")) P.A.push_back(vecField(row, "A row", dim));
        P.b = vecField(j.at("b"), "b", static_cast<int>(P.A.size()));
        return FeasibleSet::polyhedral(std::move(P));
    }
    if (j.is_array()) {
        std::vector<Expr::Ptr> cs;
        for (std::size_t i = 0; i < j.size(); ++i) {
            const auto& entry = j[i];
            if (!entry.is_string())
                throw ProblemError("constraints[" + std::to_string(i) +
                                   "]: must be an expression string");
            try {
                for (auto& e : parseConstraint(entry.get<std::string>())) {
                    if (e->minDimension() > dim)
                        throw ProblemError("constraints[" + std::to_string(i) +
                                           "]: variable index exceeds dimension");
                    cs.push_back(std::move(e));
                }
            } catch (const ParseError& pe) {
                throw ProblemError("constraints[" + std::to_string(i) + "]: " + pe.what());
            }
        }
        return FeasibleSet::fromConstraints(dim, std::move(cs));
    }
    throw ProblemError("'constraints' must be an array of strings or an {A, b} record");
}

void applyConfig(const nlohmann::json& j, SamplerConfig& s, SolverConfig& v) {
    auto num = [&](const char* key, auto& target) {
        if (j.contains(key)) target = j.at(key).get<std::decay_t<decltype(target)>>();
    };
    num("seed", s.seed);
    num("sphere_res_deg", s.sphere_res_deg);
    num("ray_tol", s.ray_tol);
    num("ray_budget", s.ray_budget);
    num("feas_tol", s.feas_tol);
    num("refine_iters", s.refine_iters);
    if (j.contains("ray_scales")) s.ray_scales = j.at("ray_scales").get<std::vector<double>>();
    num("interior_margin", v.interior_margin);
    num("stabilization_dist", v.stabilization_dist);
    num("near_optimal_band", v.near_optimal_band);
    num("tau_dom_base", v.tau_dom_base);
    num("oracle_grid_per_axis", v.oracle_grid_per_axis);
    if (j.contains("ball_schedule"))
        v.ball_schedule = j.at("ball_schedule").get<std::vector<double>>();
    if (j.contains("oracle_box_lo")) v.oracle_box_lo = j.at("oracle_box_lo").get<Vec>();
    if (j.contains("oracle_box_hi")) v.oracle_box_hi = j.at("oracle_box_hi").get<Vec>();
}

nlohmann::json samplerJson(const SamplerConfig& s) {
    return {{"seed", s.seed},
            {"sphere_res_deg", s.sphere_res_deg},
            {"ray_scales", s.ray_scales},
            {"ray_tol", s.ray_tol},
            {"ray_budget", s.ray_budget},
            {"feas_tol", s.feas_tol},
            {"refine_iters", s.refine_iters}};
}

nlohmann::json solverJson(const SolverConfig& v) {
    return {{"ball_schedule", v.ball_schedule},
            {"interior_margin", v.interior_margin},
            {"stabilization_dist", v.stabilization_dist},
            {"near_optimal_band", v.near_optimal_band},
            {"tau_dom_base", v.tau_dom_base},
            {"oracle_grid_per_axis", v.oracle_grid_per_axis},
            {"oracle_box_lo", v.oracle_box_lo},
            {"oracle_box_hi", v.oracle_box_hi},
            {"descent_t_schedule", v.descent_t_schedule},
            {"descent_sample_cap", v.descent_sample_cap}};
}

}  // namespace

nlohmann::json ProblemSpec::effectiveConfigJson() const {
    return {{"sampler", samplerJson(sampler)}, {"solver", solverJson(solver)}};
}

ProblemSpec problemFromJson(const nlohmann::json& j, const std::string& origin) {
    if (!j.is_object()) throw ProblemError(origin + ": problem record must be an object");
    if (!j.contains("dimension")) throw ProblemError(origin + ": missing 'dimension'");
    int dim = j.at("dimension").get<int>();
    if (dim < 1) throw ProblemError(origin + ": 'dimension' must be >= 1");

    if (!j.contains("objectives") || !j.at("objectives").is_array() ||
        j.at("objectives").empty())
        throw ProblemError(origin + ": 'objectives' must be a nonempty array");
    std::vector<Polynomial> objs;
    for (std::size_t i = 0; i < j.at("objectives").size(); ++i) {
        Polynomial p = objectiveFromEntry(dim, j.at("objectives")[i], static_cast<int>(i));
        if (p.degree() < 1)
            throw ProblemError("objectives[" + std::to_string(i) +
                               "]: degree must be >= 1 (constant objective)");
        objs.push_back(std::move(p));
    }

    if (!j.contains("constraints")) throw ProblemError(origin + ": missing 'constraints'");
    FeasibleSet K = feasibleFromJson(dim, j.at("constraints"));

    ProblemSpec spec(VectorObjective(std::move(objs)), std::move(K));
    spec.dimension = dim;
    spec.name = j.value("name", std::string{});
    spec.source_echo = j;

    if (j.contains("config")) applyConfig(j.at("config"), spec.sampler, spec.solver);

    if (j.contains("basepoint")) {
        Vec xbar = vecField(j.at("basepoint"), "basepoint", dim);
        if (!spec.feasible.contains(xbar, spec.sampler.feas_tol))
            throw ProblemError(origin + ": basepoint is infeasible (violation " +
                               std::to_string(spec.feasible.maxViolation(xbar)) + ")");
        spec.basepoint = std::move(xbar);
    }

    if (j.contains("lambda")) {
        Vec lam = vecField(j.at("lambda"), "lambda",
                           static_cast<int>(spec.objectives.components().size()));
        for (double li : lam)
            if (li < 0.0) throw ProblemError(origin + ": 'lambda' must be componentwise >= 0");
        spec.lambda = std::move(lam);
    }

    std::string sc = j.value("s_choice", std::string("whole"));
    try {
        spec.s_choice = sChoiceFromString(sc, spec.basepoint);
    } catch (const std::exception& ex) {
        throw ProblemError(origin + ": " + ex.what());
    }

    // the feasible set must be demonstrably nonempty
    try {
        Vec probe =
            spec.basepoint ? *spec.basepoint : findFeasiblePoint(spec.feasible, spec.sampler);
        if (!spec.feasible.contains(probe, 1e-6))
            throw std::runtime_error("basepoint fails the feasibility re-check");
    } catch (const std::exception& ex) {
        throw ProblemError(origin + ": no feasible point found (" + std::string(ex.what()) +
                           ")");
    }

    return spec;
}

ProblemSpec loadProblem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ProblemError(path + ": cannot open file");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& pe) {
        throw ProblemError(path + ": json parse error at byte " + std::to_string(pe.byte) +
                           ": " + pe.what());
    }
    return problemFromJson(j, path);
}

nlohmann::json makeReport(const ProblemSpec& spec, const std::string& command,
                          const nlohmann::json& result) {
    nlohmann::json rep;
    rep["schema_version"] = 1;
    rep["problem_echo"] = spec.source_echo;
    rep["command"] = command;
    rep["effective_config"] = spec.effectiveConfigJson();
    rep["result"] = result;
    return rep;
}

void writeReport(const nlohmann::json& report, const std::string& out_path) {
    namespace fs = std::filesystem;
    fs::path target(out_path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw ProblemError(out_path + ": cannot open for writing");
        out << report.dump(2) << "\n";
        if (!out) throw ProblemError(out_path + ": write failed");
    }
    fs::rename(tmp, target);
}

}  // namespace pvo
