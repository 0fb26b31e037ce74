#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pvo/config.hpp"
#include "pvo/polynomial.hpp"
#include "pvo/sets.hpp"

namespace pvo {

// Raised on any malformed or inconsistent problem file; the message carries
// the offending location (json pointer / expression position) where known.
struct ProblemError : std::runtime_error {
    explicit ProblemError(const std::string& msg) : std::runtime_error(msg) {}
};

// A fully validated problem instance with all defaults resolved: the loaded
// file plus the effective sampler/solver configuration echoed into every
// report so a run can be reproduced bit for bit.
struct ProblemSpec {
    ProblemSpec(VectorObjective obj, FeasibleSet feas)
        : objectives(std::move(obj)), feasible(std::move(feas)) {}

    std::string name;
    int dimension = 0;
    VectorObjective objectives;
    FeasibleSet feasible;
    std::optional<Vec> basepoint;
    SChoice s_choice;
    std::optional<Vec> lambda;
    SamplerConfig sampler;
    SolverConfig solver;
    nlohmann::json source_echo;  // the parsed file, verbatim

    nlohmann::json effectiveConfigJson() const;
};

// Parses and validates a problem file. Objectives accept term-list records
// ([{"exponents": [...], "coeff": c}, ...]) or expression strings over
// x1..xn; constraints accept expression strings (split at <=, >=, =) or a
// polyhedron record {"A": ..., "b": ...}. Throws ProblemError on parse
// errors (position annotated), degree-0 objectives, an infeasible basepoint,
// or an empty feasible set.
ProblemSpec loadProblem(const std::string& path);

// Same, from an already parsed record (used by the CLI and tests).
ProblemSpec problemFromJson(const nlohmann::json& j, const std::string& origin);

// Wraps a result in the report envelope and writes it atomically
// (temp file + rename). Numbers follow the shortest round-trip form.
nlohmann::json makeReport(const ProblemSpec& spec, const std::string& command,
                          const nlohmann::json& result);
void writeReport(const nlohmann::json& report, const std::string& out_path);

}  // namespace pvo
