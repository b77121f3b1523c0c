// One-dimensional maximization: dense grid scan, golden-section refinement of
// every local grid maximum, smallest-t tie-breaking.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace spinrus {

struct GridMax {
    double t = 0.0;
    double value = 0.0;
};

namespace detail {

template <typename F>
double golden_section_max(F&& f, double a, double b, double t_tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > t_tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

// Maximizes f over [lo, hi] sampled at grid_points+1 equispaced points. Every
// local grid maximum is refined, so equal-valued peaks resolve to the
// smallest maximizing t (ties closer than tie_tol in value).
template <typename F>
GridMax maximize_on_grid(F&& f, double lo, double hi, int grid_points, double t_tol = 1e-10,
                         double tie_tol = 1e-9) {
    if (!(hi > lo)) throw std::invalid_argument("maximize_on_grid: empty window");
    if (grid_points < 2) throw std::invalid_argument("maximize_on_grid: grid too coarse");

    const int n = grid_points;
    const double step = (hi - lo) / n;
    std::vector<double> v(n + 1);
    for (int i = 0; i <= n; ++i) v[i] = f(lo + i * step);

    std::vector<GridMax> candidates;
    for (int i = 0; i <= n; ++i) {
        const bool left_ok = i == 0 || v[i] >= v[i - 1];
        const bool right_ok = i == n || v[i] >= v[i + 1];
        if (!(left_ok && right_ok)) continue;
        const double a = lo + std::max(i - 1, 0) * step;
        const double b = lo + std::min(i + 1, n) * step;
        const double t_ref = detail::golden_section_max(f, a, b, t_tol);
        const double f_ref = f(t_ref);
        if (f_ref >= v[i]) {
            candidates.push_back({t_ref, f_ref});
        } else {
            candidates.push_back({lo + i * step, v[i]});
        }
    }

    double best = candidates.front().value;
    for (const GridMax& c : candidates) best = std::max(best, c.value);
    double t_star = hi;
    for (const GridMax& c : candidates) {
        if (c.value >= best - tie_tol) t_star = std::min(t_star, c.t);
    }
    return {t_star, best};
}

}  // namespace spinrus
