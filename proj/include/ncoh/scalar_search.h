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

#ifndef NCOH_SCALAR_SEARCH_H
#define NCOH_SCALAR_SEARCH_H

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace ncoh {

/// `n` evenly spaced points from `lo` to `hi`, both included. Requires n >= 2.
std::vector<double> linspace(double lo, double hi, std::size_t n);

struct SearchOptions {
    std::size_t grid_points = 2001;
    int refine_iterations = 60;
    /// Refinement also stops once the bracket is at most this wide. Zero disables the check.
    double min_bracket_width = 0.0;
};

struct SearchResult {
    double x = 0;
    double value = 0;
    /// Evaluations that returned no value (excluded from the search).
    std::size_t excluded_evaluations = 0;
    bool found = false;
};

/// Objective returning std::nullopt at points that must be excluded (e.g. divergent distances).
using ScalarObjective = std::function<std::optional<double>(double)>;

/// Grid search over [lo, hi] followed by three-point bracket refinement.
///
/// Every refinement step evaluates the midpoints on both sides of the current best point and
/// keeps the best of the three, halving the bracket. The center wins ties, so a flat objective
/// leaves the grid point in place.
SearchResult maximize_scalar(const ScalarObjective &f, double lo, double hi,
                             const SearchOptions &options);

SearchResult minimize_scalar(const ScalarObjective &f, double lo, double hi,
                             const SearchOptions &options);

}  // namespace ncoh

#endif
