#include "pvo/direct_search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pvo {

SearchResult nelderMead(const ScalarFn& f, const Vec& x0, double scale, int budget) {
    const int n = static_cast<int>(x0.size());
    if (n < 1) throw std::invalid_argument("nelderMead needs dimension >= 1");
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    int evals = 0;
    auto eval = [&](const Vec& x) {
        ++evals;
        double v = f(x);
        return std::isfinite(v) ? v : 1e300;
    };

    std::vector<std::pair<double, Vec>> simplex;
    simplex.reserve(n + 1);
    simplex.push_back({eval(x0), x0});
    for (int i = 0; i < n; ++i) {
        Vec p = x0;
        p[i] += (scale != 0.0 ? scale : 1.0);
        simplex.push_back({eval(p), p});
    }

    auto sortSimplex = [&] {
        std::stable_sort(simplex.begin(), simplex.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
    };
    sortSimplex();

    while (evals < budget) {
        // centroid of all but the worst
        Vec c(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) c[j] += simplex[i].second[j];
        for (int j = 0; j < n; ++j) c[j] /= n;
        const Vec& worst = simplex[n].second;

        double size = 0.0;
        for (int i = 1; i <= n; ++i) size = std::max(size, dist(simplex[0].second, simplex[i].second));
        if (size < 1e-12 * (1.0 + norm(simplex[0].second))) break;

        Vec xr(n);
        for (int j = 0; j < n; ++j) xr[j] = c[j] + alpha * (c[j] - worst[j]);
        double fr = eval(xr);

        if (fr < simplex[0].first) {
            Vec xe(n);
            for (int j = 0; j < n; ++j) xe[j] = c[j] + gamma * (xr[j] - c[j]);
            double fe = eval(xe);
            simplex[n] = fe < fr ? std::make_pair(fe, xe) : std::make_pair(fr, xr);
        } else if (fr < simplex[n - 1].first) {
            simplex[n] = {fr, xr};
        } else {
            Vec xc(n);
            for (int j = 0; j < n; ++j) xc[j] = c[j] + rho * (worst[j] - c[j]);
            double fc = eval(xc);
            if (fc < simplex[n].first) {
                simplex[n] = {fc, xc};
            } else {
                // shrink toward the best vertex
                for (int i = 1; i <= n; ++i) {
                    for (int j = 0; j < n; ++j)
                        simplex[i].second[j] =
                            simplex[0].second[j] + sigma * (simplex[i].second[j] - simplex[0].second[j]);
                    simplex[i].first = eval(simplex[i].second);
                    if (evals >= budget) break;
                }
            }
        }
        sortSimplex();
    }

    return {simplex[0].second, simplex[0].first, evals};
}

SearchResult patternSearch(const ScalarFn& f,
                           const std::function<bool(const Vec&)>& feasible,
                           const Vec& x0, double step0, int budget, double min_step) {
    const int n = static_cast<int>(x0.size());
    if (!feasible(x0)) throw std::invalid_argument("patternSearch requires a feasible start");

    // Coordinate directions plus, in low dimension, all diagonal sign
    // patterns; diagonals let the search slide along active faces.
    std::vector<Vec> dirs;
    for (int i = 0; i < n; ++i) {
        Vec d(n, 0.0);
        d[i] = 1.0;
        dirs.push_back(d);
        d[i] = -1.0;
        dirs.push_back(d);
    }
    if (n >= 2 && n <= 3) {
        int combos = 1;
        for (int i = 0; i < n; ++i) combos *= 3;
        for (int m = 0; m < combos; ++m) {
            Vec d(n, 0.0);
            int r = m, nz = 0;
            for (int i = 0; i < n; ++i) {
                int s = r % 3;
                r /= 3;
                d[i] = s == 0 ? 0.0 : (s == 1 ? 1.0 : -1.0);
                if (d[i] != 0.0) ++nz;
            }
            if (nz >= 2) dirs.push_back(normalized(d));
        }
    }

    int evals = 0;
    Vec x = x0;
    double fx = f(x);
    ++evals;
    double step = step0;

    while (evals < budget && step > min_step) {
        bool improved = false;
        for (const Vec& d : dirs) {
            if (evals >= budget) break;
            Vec y = plus(x, scaled(d, step));
            if (!feasible(y)) continue;
            double fy = f(y);
            ++evals;
            if (fy < fx - 1e-15 * (1.0 + std::abs(fx))) {
                x = y;
                fx = fy;
                improved = true;
                break;
            }
        }
        if (!improved) step *= 0.5;
    }

    return {x, fx, evals};
}

}  // namespace pvo
