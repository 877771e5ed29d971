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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace ncoh {
namespace {

TEST(Linspace, EndpointsAndSpacing) {
    auto xs = linspace(0.0, 1.0, 5);
    ASSERT_EQ(xs.size(), 5u);
    EXPECT_DOUBLE_EQ(xs[0], 0.0);
    EXPECT_DOUBLE_EQ(xs[2], 0.5);
    EXPECT_EQ(xs[4], 1.0);
    EXPECT_THROW(linspace(0.0, 1.0, 1), std::invalid_argument);
}

TEST(MaximizeScalar, SmoothInteriorPeak) {
    auto f = [](double x) -> std::optional<double> { return -(x - 0.3141) * (x - 0.3141); };
    auto r = maximize_scalar(f, 0.0, 1.0, SearchOptions{101, 60, 0});
    ASSERT_TRUE(r.found);
    EXPECT_NEAR(r.x, 0.3141, 1e-12);
    EXPECT_NEAR(r.value, 0.0, 1e-20);
}

TEST(MaximizeScalar, PeakAtBoundary) {
    auto f = [](double x) -> std::optional<double> { return x; };
    auto r = maximize_scalar(f, 0.0, 2.0, SearchOptions{11, 60, 0});
    EXPECT_EQ(r.x, 2.0);
}

TEST(MaximizeScalar, SkipsExcludedPoints) {
    // The largest raw value sits in an excluded window.
    auto f = [](double x) -> std::optional<double> {
        if (x > 0.45 && x < 0.55) {
            return std::nullopt;
        }
        return std::sin(std::numbers::pi * x);
    };
    auto r = maximize_scalar(f, 0.0, 1.0, SearchOptions{101, 60, 0});
    EXPECT_TRUE(r.found);
    EXPECT_GT(r.excluded_evaluations, 0u);
    EXPECT_TRUE(r.x <= 0.45 || r.x >= 0.55);
}

TEST(MaximizeScalar, AllExcluded) {
    auto f = [](double) -> std::optional<double> { return std::nullopt; };
    auto r = maximize_scalar(f, 0.0, 1.0, SearchOptions{11, 5, 0});
    EXPECT_FALSE(r.found);
    EXPECT_EQ(r.excluded_evaluations, 11u);
}

TEST(MaximizeScalar, FlatObjectiveKeepsGridPoint) {
    auto f = [](double) -> std::optional<double> { return 1.0; };
    auto r = maximize_scalar(f, 0.0, 1.0, SearchOptions{11, 60, 0});
    EXPECT_EQ(r.x, 0.0);
}

TEST(MaximizeScalar, BracketWidthStop) {
    int calls = 0;
    auto f = [&calls](double x) -> std::optional<double> {
        calls++;
        return -std::abs(x - 0.5);
    };
    maximize_scalar(f, 0.0, 1.0, SearchOptions{11, 1000, 1e-3});
    EXPECT_LT(calls, 11 + 2 * 20);
}

TEST(MaximizeScalar, RejectsBadArguments) {
    auto f = [](double x) -> std::optional<double> { return x; };
    EXPECT_THROW(maximize_scalar(f, 0.0, 1.0, SearchOptions{2, 1, 0}), std::invalid_argument);
    EXPECT_THROW(maximize_scalar(f, 1.0, 1.0, SearchOptions{3, 1, 0}), std::invalid_argument);
}

TEST(MinimizeScalar, FindsMinimum) {
    auto f = [](double x) -> std::optional<double> { return std::cos(x); };
    auto r = minimize_scalar(f, 2.0, 4.0, SearchOptions{21, 60, 0});
    EXPECT_NEAR(r.x, std::numbers::pi, 1e-8);
    EXPECT_NEAR(r.value, -1.0, 1e-15);
}

}  // namespace
}  // namespace ncoh
