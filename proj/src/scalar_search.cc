// Copyright 2026 The ncoh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ncoh/scalar_search.h"

#include <stdexcept>
#include <string>

namespace ncoh {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("linspace: need at least 2 points, got " + std::to_string(n));
    }
    std::vector<double> out(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; k++) {
        out[k] = lo + step * static_cast<double>(k);
    }
    out[n - 1] = hi;
    return out;
}

SearchResult maximize_scalar(const ScalarObjective &f, double lo, double hi,
                             const SearchOptions &options) {
    if (options.grid_points < 3) {
        throw std::invalid_argument("maximize_scalar: grid needs at least 3 points");
    }
    if (!(hi > lo)) {
        throw std::invalid_argument("maximize_scalar: empty interval");
    }

    SearchResult res;
    const auto grid = linspace(lo, hi, options.grid_points);
    std::size_t best = 0;
    for (std::size_t k = 0; k < grid.size(); k++) {
        auto v = f(grid[k]);
        if (!v) {
            res.excluded_evaluations++;
            continue;
        }
        if (!res.found || *v > res.value) {
            res.found = true;
            res.value = *v;
            best = k;
        }
    }
    if (!res.found) {
        return res;
    }

    double left = grid[best > 0 ? best - 1 : best];
    double right = grid[best + 1 < grid.size() ? best + 1 : best];
    double center = grid[best];
    double center_value = res.value;

    for (int it = 0; it < options.refine_iterations; it++) {
        if (options.min_bracket_width > 0 && right - left <= options.min_bracket_width) {
            break;
        }
        double mid_left = 0.5 * (left + center);
        double mid_right = 0.5 * (center + right);
        std::optional<double> v_left, v_right;
        if (mid_left != center) {
            v_left = f(mid_left);
            if (!v_left) {
                res.excluded_evaluations++;
            }
        }
        if (mid_right != center) {
            v_right = f(mid_right);
            if (!v_right) {
                res.excluded_evaluations++;
            }
        }

        bool left_wins = v_left && *v_left > center_value && (!v_right || *v_left >= *v_right);
        bool right_wins = !left_wins && v_right && *v_right > center_value;
        if (left_wins) {
            right = center;
            center = mid_left;
            center_value = *v_left;
        } else if (right_wins) {
            left = center;
            center = mid_right;
            center_value = *v_right;
        } else {
            left = mid_left;
            right = mid_right;
        }
    }

    res.x = center;
    res.value = center_value;
    return res;
}

SearchResult minimize_scalar(const ScalarObjective &f, double lo, double hi,
                             const SearchOptions &options) {
    auto negated = [&f](double x) -> std::optional<double> {
        auto v = f(x);
        if (!v) {
            return std::nullopt;
        }
        return -*v;
    };
    SearchResult res = maximize_scalar(negated, lo, hi, options);
    res.value = -res.value;
    return res;
}

}  // namespace ncoh
