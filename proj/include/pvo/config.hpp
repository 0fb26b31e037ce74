#pragma once

#include <cstdint>
#include <vector>

#include "pvo/util.hpp"

namespace pvo {

// Knobs for cone sampling and the numerical asymptotic-direction test.
struct SamplerConfig {
    std::uint64_t seed = 1;

    // Angular resolution of the dense unit-sphere grid, in degrees.
    // 0 means "use the per-dimension default".
    double sphere_res_deg = 0.0;

    std::vector<double> ray_scales = {1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
    double ray_tol = 1e-2;    // on the normalized distance ||x/t - v||
    int ray_budget = 500;     // direct-search evaluations per scale
    double feas_tol = 1e-9;   // constraint slack accepted as feasible
    int refine_iters = 50;    // sphere-slice refinement iterations

    double resolutionFor(int dim) const {
        if (sphere_res_deg > 0.0) return sphere_res_deg;
        switch (dim) {
            case 1: return 180.0;
            case 2: return 0.25;
            case 3: return 2.0;
            default: return 10.0;
        }
    }
};

// Knobs for scalarized minimization and the brute-force Pareto oracle.
struct SolverConfig {
    std::vector<double> ball_schedule = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
    double interior_margin = 0.5;
    double stabilization_dist = 1e-4;
    double near_optimal_band = 1e-8;   // relative, for minimal-norm selection
    double tau_dom_base = 1e-6;        // domination tolerance, value-scaled
    int oracle_grid_per_axis = 201;
    Vec oracle_box_lo;                 // empty = [-5,5]^n default
    Vec oracle_box_hi;
    std::vector<double> descent_t_schedule = {1e-3, 1e-2, 1e-1, 1.0};
    int descent_sample_cap = 200;

    int gridPerAxis(int dim) const { return dim <= 2 ? 120 : 41; }
};

}  // namespace pvo
