#pragma once

#include <functional>

#include "pvo/util.hpp"

namespace pvo {

using ScalarFn = std::function<double(const Vec&)>;

struct SearchResult {
    Vec x;
    double value = 0.0;
    int evaluations = 0;
};

// Nelder-Mead simplex minimization of an unconstrained objective. The
// initial simplex is axis-aligned around x0 with edge length `scale`.
// Deterministic; stops after `budget` function evaluations or when the
// simplex collapses below 1e-12 relative size.
SearchResult nelderMead(const ScalarFn& f, const Vec& x0, double scale, int budget);

// Extreme-barrier pattern search: minimizes f over {x : feasible(x)} without
// derivatives. Infeasible trial points are discarded. The direction set is
// +-e_i plus (for n <= 3) all +-1 diagonal combinations, so progress along an
// active face such as {x1 = x2} is possible. x0 must be feasible.
SearchResult patternSearch(const ScalarFn& f,
                           const std::function<bool(const Vec&)>& feasible,
                           const Vec& x0, double step0, int budget,
                           double min_step = 1e-10);

}  // namespace pvo
