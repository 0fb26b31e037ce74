#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pvo/experiments.hpp"
#include "pvo/problem.hpp"
#include "pvo/solver.hpp"

namespace {

using namespace pvo;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

Vec parseVec(const std::string& text) {
    Vec v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            v.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ProblemError("cannot parse number '" + item + "' in '" + text + "'");
        }
    }
    if (v.empty()) throw ProblemError("empty vector argument '" + text + "'");
    return v;
}

struct CommonOpts {
    std::string problem_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> grid;
    std::optional<double> tol;
    std::optional<std::string> s_choice;
    std::optional<std::string> lambda;
    std::string out_path;
};

void addCommon(CLI::App* cmd, CommonOpts& o, bool needs_problem) {
    if (needs_problem)
        cmd->add_option("problem", o.problem_path, "problem file (json)")->required();
    cmd->add_option("--seed", o.seed, "sampler seed override");
    cmd->add_option("--grid", o.grid, "verification grid points per axis");
    cmd->add_option("--tol", o.tol, "domination tolerance base override");
    cmd->add_option("--s-choice", o.s_choice,
                    "recession carrier: whole | sublevel | leading-slice");
    cmd->add_option("--lambda", o.lambda, "weights, comma separated");
    cmd->add_option("--out", o.out_path, "write the report to this path");
}

ProblemSpec loadWithOverrides(const CommonOpts& o) {
    ProblemSpec spec = loadProblem(o.problem_path);
    if (o.seed) spec.sampler.seed = *o.seed;
    if (o.grid) spec.solver.oracle_grid_per_axis = *o.grid;
    if (o.tol) spec.solver.tau_dom_base = *o.tol;
    if (o.lambda) {
        Vec lam = parseVec(*o.lambda);
        if (static_cast<int>(lam.size()) != spec.objectives.size())
            throw ProblemError("--lambda needs " + std::to_string(spec.objectives.size()) +
                               " components");
        spec.lambda = std::move(lam);
    }
    if (o.s_choice) spec.s_choice = sChoiceFromString(*o.s_choice, spec.basepoint);
    return spec;
}

void emit(const ProblemSpec& spec, const std::string& command, const nlohmann::json& result,
          const std::string& out_path) {
    nlohmann::json report = makeReport(spec, command, result);
    if (out_path.empty())
        std::cout << report.dump(2) << "\n";
    else
        writeReport(report, out_path);
}

std::vector<Vec> lambdaList(const ProblemSpec& spec) {
    std::vector<Vec> ls;
    if (spec.lambda) ls.push_back(*spec.lambda);
    return ls;
}

Vec basepointOrProbe(const ProblemSpec& spec) {
    if (spec.basepoint) return *spec.basepoint;
    return findFeasiblePoint(spec.feasible, spec.sampler);
}

int runAnalyze(const CommonOpts& o) {
    ProblemSpec spec = loadWithOverrides(o);
    RegularityReport rep =
        relativeRegularityReport(spec.feasible, spec.objectives, spec.s_choice,
                                 lambdaList(spec), spec.sampler);
    emit(spec, "analyze", rep.toJson(), o.out_path);
    std::cerr << "regularity[" << sChoiceName(spec.s_choice)
              << "]: " << (rep.anyRegular() ? "regular" : "not regular") << "\n";
    return kExitOk;
}

int runSolve(const CommonOpts& o) {
    ProblemSpec spec = loadWithOverrides(o);
    PipelineResult pr =
        existencePipeline(spec.feasible, spec.objectives, spec.s_choice, lambdaList(spec),
                          basepointOrProbe(spec), spec.lambda, spec.sampler, spec.solver);
    nlohmann::json result;
    result["regularity"] = pr.report.toJson();
    result["solve"] = pr.solve.toJson();
    emit(spec, "solve", result, o.out_path);
    if (pr.solve.status == SolveStatus::ParetoFound) {
        std::cerr << "pareto point found, verification "
                  << verifyKindName(pr.solve.verification.kind) << "\n";
        return kExitOk;
    }
    std::cerr << "no verdict: " << pr.solve.reason << "\n";
    return kExitInconclusive;
}

int runVerify(const CommonOpts& o, const std::string& candidate) {
    ProblemSpec spec = loadWithOverrides(o);
    Vec x = parseVec(candidate);
    if (static_cast<int>(x.size()) != spec.dimension)
        throw ProblemError("--candidate needs " + std::to_string(spec.dimension) +
                           " components");
    VerifyResult vr = verifyPareto(x, spec.feasible, spec.objectives, spec.sampler, spec.solver);
    emit(spec, "verify", vr.toJson(), o.out_path);
    std::cerr << "verdict: " << verifyKindName(vr.kind) << "\n";
    return vr.kind == VerifyKind::StrictPareto || vr.kind == VerifyKind::WeakParetoOnly
               ? kExitOk
               : kExitInconclusive;
}

int runPerturb(const CommonOpts& o, const std::string& eps_text, int trials) {
    ProblemSpec spec = loadWithOverrides(o);
    Vec lam = spec.lambda ? *spec.lambda
                          : Vec(spec.objectives.size(), 1.0 / spec.objectives.size());
    std::vector<double> eps(parseVec(eps_text));
    StabilityRecord rec = stabilityProbe(spec.feasible, spec.objectives, spec.s_choice, lam,
                                         eps, trials, spec.sampler.seed, spec.sampler);
    emit(spec, "perturb", rec.toJson(), o.out_path);
    std::cerr << "base " << triTagName(rec.base.tag) << ", "
              << (rec.flip ? "flip at eps " + std::to_string(rec.flip->eps) : "no flip")
              << "\n";
    return kExitOk;
}

int runGeneric(const CommonOpts& o, int count) {
    ProblemSpec spec = loadWithOverrides(o);
    if (!spec.feasible.isPolyhedral())
        throw ProblemError("generic needs a polyhedral cone problem");
    std::vector<int> degrees = spec.objectives.degreeVector();
    GenericityReport rep = genericitySample(spec.dimension, degrees,
                                            spec.feasible.polyhedron(), count,
                                            spec.sampler.seed, spec.sampler);
    emit(spec, "generic", rep.toJson(), o.out_path);
    std::cerr << "regular fraction " << rep.fraction << " over " << rep.samples
              << " samples\n";
    return kExitOk;
}

int runDemo(const std::string& name, const CommonOpts& o) {
    SamplerConfig scfg;
    if (o.seed) scfg.seed = *o.seed;
    if (name == "weak_nonopen") {
        WeakNonopenReport rep = weakNonopenDemo(scfg);
        nlohmann::json report;
        report["schema_version"] = 1;
        report["command"] = "demo";
        report["result"] = rep.toJson();
        if (o.out_path.empty())
            std::cout << report.dump(2) << "\n";
        else
            writeReport(report, o.out_path);
        std::cerr << "base weakly regular: " << rep.base_weakly_regular
                  << ", all variants non-regular: " << rep.all_variants_nonregular << "\n";
        return kExitOk;
    }
    if (name == "nonexistence") {
        if (o.problem_path.empty())
            throw ProblemError("demo nonexistence needs a problem file");
        ProblemSpec spec = loadWithOverrides(o);
        int grid = o.grid ? *o.grid : 201;
        NonexistenceReport rep =
            nonexistenceDemo(spec.feasible, spec.objectives, {0.0, 0.0}, {2.0, 2.0},
                             {0.0, 0.0}, {20.0, 20.0}, grid, spec.solver);
        emit(spec, "demo", rep.toJson(), o.out_path);
        std::cerr << "dominated fraction " << rep.fraction_dominated << "\n";
        return rep.fraction_dominated == 1.0 ? kExitOk : kExitInconclusive;
    }
    throw ProblemError("unknown demo '" + name + "' (weak_nonopen | nonexistence)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polynomial vector optimization analyzer"};
    app.require_subcommand(1);

    CommonOpts analyze_o, solve_o, verify_o, perturb_o, generic_o, demo_o;
    std::string candidate, eps_text = "0.001", demo_name;
    int trials = 100, count = 200;

    addCommon(app.add_subcommand("analyze", "regularity trichotomy report"), analyze_o, true);
    addCommon(app.add_subcommand("solve", "existence pipeline + scalarized solve"), solve_o,
              true);
    CLI::App* verify = app.add_subcommand("verify", "brute-force Pareto verification");
    addCommon(verify, verify_o, true);
    verify->add_option("--candidate", candidate, "point to verify, comma separated")
        ->required();
    CLI::App* perturb = app.add_subcommand("perturb", "perturbation stability probe");
    addCommon(perturb, perturb_o, true);
    perturb->add_option("--eps", eps_text, "perturbation magnitudes, comma separated");
    perturb->add_option("--trials", trials, "trials per magnitude");
    CLI::App* generic = app.add_subcommand("generic", "genericity sampling on a cone");
    addCommon(generic, generic_o, true);
    generic->add_option("--count", count, "number of random objectives");
    CLI::App* demo = app.add_subcommand("demo", "named demonstration");
    demo->add_option("--name", demo_name, "weak_nonopen | nonexistence")->required();
    demo->add_option("problem", demo_o.problem_path, "problem file (nonexistence demo)");
    demo->add_option("--seed", demo_o.seed, "sampler seed override");
    demo->add_option("--grid", demo_o.grid, "grid points per axis");
    demo->add_option("--out", demo_o.out_path, "write the report to this path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("analyze")) return runAnalyze(analyze_o);
        if (app.got_subcommand("solve")) return runSolve(solve_o);
        if (app.got_subcommand("verify")) return runVerify(verify_o, candidate);
        if (app.got_subcommand("perturb")) return runPerturb(perturb_o, eps_text, trials);
        if (app.got_subcommand("generic")) return runGeneric(generic_o, count);
        if (app.got_subcommand("demo")) return runDemo(demo_name, demo_o);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
