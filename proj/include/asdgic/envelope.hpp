/*
   Copyright 2026 The asdgic authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cmath>
#include <vector>

#include "asdgic/errors.hpp"

namespace asdgic {

// Least concave majorant of sampled values on a grid.
struct EnvelopeResult {
    std::vector<double> grid;
    std::vector<double> raw;
    std::vector<double> env;
    std::vector<int> hull_vertices;  // indices where env == raw
};

// Upper concave envelope on a fixed grid: upper hull of the point set with
// linear interpolation between hull vertices.
inline EnvelopeResult uce_1d(const std::vector<double>& grid,
                             const std::vector<double>& values) {
    if (grid.size() < 2) fail(errc::too_few_points, "envelope grid needs >= 2 points");
    if (grid.size() != values.size())
        fail(errc::bad_input, "grid/value size mismatch");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            fail(errc::unsorted_grid, "grid must be strictly increasing");
    for (double v : values)
        if (!std::isfinite(v)) fail(errc::bad_input, "envelope values must be finite");

    const int m = static_cast<int>(grid.size());
    std::vector<int> hull;
    hull.reserve(grid.size());
    for (int i = 0; i < m; ++i) {
        while (hull.size() >= 2) {
            const int a = hull[hull.size() - 2];
            const int b = hull[hull.size() - 1];
            // drop b when it is on or below the chord a->i
            const double cross = (grid[b] - grid[a]) * (values[i] - values[a]) -
                                 (values[b] - values[a]) * (grid[i] - grid[a]);
            if (cross >= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }

    EnvelopeResult r;
    r.grid = grid;
    r.raw = values;
    r.env.assign(grid.size(), 0.0);
    r.hull_vertices = hull;
    for (std::size_t seg = 0; seg + 1 < hull.size(); ++seg) {
        const int a = hull[seg];
        const int b = hull[seg + 1];
        r.env[a] = values[a];
        for (int i = a + 1; i < b; ++i) {
            const double t = (grid[i] - grid[a]) / (grid[b] - grid[a]);
            r.env[i] = values[a] + t * (values[b] - values[a]);
        }
    }
    r.env[hull.back()] = values[hull.back()];
    // interpolation rounding must never drop below the raw samples
    for (std::size_t i = 0; i < r.env.size(); ++i)
        if (r.env[i] < r.raw[i]) r.env[i] = r.raw[i];
    return r;
}

// Power-sweep options for the time-sharing envelope. grid_density values of
// the form 2^k + 1 give nested grids, so refining the density can only add
// candidate operating points.
struct EnvelopeOptions {
    int grid_density = 257;
    double boost = 100.0;  // max power boost factor during the active fraction
};

namespace detail {

inline bool degenerate_envelope_grid(const EnvelopeOptions& o) {
    return o.grid_density < 2 || !(o.boost > 1.0) || !std::isfinite(o.boost);
}

} // namespace detail

// Time-sharing concavification over both transmit powers with a shared duty
// cycle: transmit a lambda fraction of the time at operating point (p1, p2),
// idle otherwise, under lambda*p1 <= p1_max and lambda*p2 <= p2_max. Candidate
// operating points run over log-spaced grids in [cap/boost, cap*boost]; the
// nominal point (p1_max, p2_max) is always evaluated, so the result never
// falls below the raw rate. A degenerate grid falls back to the raw value.
template <class RateFn>
double uce_at_power(RateFn&& rate_fn, double p1_max, double p2_max,
                    const EnvelopeOptions& opt = {}) {
    if (!(p1_max > 0.0) || !(p2_max > 0.0))
        fail(errc::bad_input, "power caps must be positive");

    double best = rate_fn(p1_max, p2_max);
    if (detail::degenerate_envelope_grid(opt)) return best;
    const int d = opt.grid_density;
    for (int i = 0; i < d; ++i) {
        const double t1 = -1.0 + 2.0 * i / (d - 1);
        const double p1 = p1_max * std::pow(opt.boost, t1);
        for (int j = 0; j < d; ++j) {
            const double t2 = -1.0 + 2.0 * j / (d - 1);
            const double p2 = p2_max * std::pow(opt.boost, t2);
            const double lam = std::min(1.0, std::min(p1_max / p1, p2_max / p2));
            const double v = lam * rate_fn(p1, p2);
            if (v > best) best = v;
        }
    }
    return best;
}

// Single-power specialization, used where the enveloped expression depends on
// one common power variable (symmetric-model gap calculus).
template <class RateFn>
double uce_power_ray(RateFn&& rate_fn, double p_max, const EnvelopeOptions& opt = {}) {
    if (!(p_max > 0.0)) fail(errc::bad_input, "power cap must be positive");

    double best = rate_fn(p_max);
    if (detail::degenerate_envelope_grid(opt)) return best;
    const int d = opt.grid_density;
    for (int i = 0; i < d; ++i) {
        const double t = -1.0 + 2.0 * i / (d - 1);
        const double p = p_max * std::pow(opt.boost, t);
        const double lam = std::min(1.0, p_max / p);
        const double v = lam * rate_fn(p);
        if (v > best) best = v;
    }
    return best;
}

} // namespace asdgic
