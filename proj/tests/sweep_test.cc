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


#include "ncoh/sweep.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "ncoh/qpea.h"

namespace ncoh {
namespace {

using std::numbers::pi;

std::string csv_text(const SweepOutput &out) {
    std::ostringstream s;
    write_csv(s, out);
    return s.str();
}

SweepSpec small_pure() {
    SweepSpec spec;
    spec.experiment = Experiment::kCoherencePure;
    spec.theta = GridRange{0.1, pi - 0.1, 41};
    spec.nc.coarse_grid_points = 201;
    spec.nc.refine_iterations = 30;
    return spec;
}

TEST(Parsing, Experiments) {
    EXPECT_EQ(parse_experiment("qpea-derivative"), Experiment::kQpeaDerivative);
    EXPECT_EQ(to_string(Experiment::kCoherenceMixed), "coherence-mixed");
    EXPECT_THROW(parse_experiment("nope"), SpecError);
}

TEST(Parsing, Orders) {
    EXPECT_DOUBLE_EQ(parse_order_alpha("2"), 0.5);
    EXPECT_DOUBLE_EQ(parse_order_alpha("1/3"), 3.0);
    EXPECT_DOUBLE_EQ(parse_order_alpha("0.5"), 2.0);
    EXPECT_THROW(parse_order_alpha("0"), SpecError);
    EXPECT_THROW(parse_order_alpha("-2"), SpecError);
    EXPECT_THROW(parse_order_alpha("1/0"), SpecError);
    EXPECT_THROW(parse_order_alpha("two"), SpecError);
}

TEST(Resolve, Defaults) {
    SweepSpec pure;
    auto r = resolve(pure);
    EXPECT_EQ(r.theta->count, 1001u);
    EXPECT_DOUBLE_EQ(r.theta->start, 0.001);
    EXPECT_DOUBLE_EQ(r.theta->stop, pi - 0.001);
    EXPECT_EQ(r.alphas, std::vector<double>{0.5});

    SweepSpec orders;
    orders.experiment = Experiment::kCoherenceOrders;
    EXPECT_EQ(resolve(orders).alphas.size(), 19u);

    SweepSpec q;
    q.experiment = Experiment::kQpeaSweep;
    auto rq = resolve(q);
    EXPECT_EQ(rq.theta->count, 4001u);
    EXPECT_GT(rq.theta->start, 0.0);
    EXPECT_EQ(rq.m_list, (std::vector<int>{2, 3, 4, 5, 6, 7, 10, 15, 20, 25}));
}

TEST(Resolve, DomainErrors) {
    SweepSpec s;
    s.experiment = Experiment::kCoherenceMixed;
    s.r = GridRange{0.0, 1.0, 11};
    EXPECT_THROW(resolve(s), SpecError);
    s.r = GridRange{0.5, 1.2, 11};
    EXPECT_THROW(resolve(s), SpecError);

    SweepSpec t;
    t.theta = GridRange{-0.1, 1.0, 11};
    EXPECT_THROW(resolve(t), SpecError);
    t.theta = GridRange{0.1, 1.0, 1};
    EXPECT_THROW(resolve(t), SpecError);

    SweepSpec q;
    q.experiment = Experiment::kQpeaSweep;
    q.m_list = {30};
    EXPECT_THROW(resolve(q), SpecError);
    q.delta = 1e-12;
    EXPECT_NO_THROW(resolve(q));
    q.m_list = {5};
    q.delta = 0.1;
    EXPECT_THROW(resolve(q), SpecError);

    SweepSpec d;
    d.experiment = Experiment::kQpeaDerivative;
    d.theta = GridRange{0.0, pi, 11};
    EXPECT_THROW(resolve(d), SpecError);

    SweepSpec wrong;
    wrong.m_list = {5};
    EXPECT_THROW(resolve(wrong), SpecError);
}

TEST(CoherencePure, TableAndReport) {
    auto out = run_sweep(small_pure());
    EXPECT_EQ(out.table.columns,
              (std::vector<std::string>{"theta_rad", "c_nc_bits", "c_rel_ent_bits", "argmax_p"}));
    ASSERT_EQ(out.table.rows.size(), 41u);
    const auto &mid = out.table.rows[20];
    EXPECT_NEAR(mid[0], pi / 2, 1e-15);
    EXPECT_NEAR(mid[2], 1.0, 1e-9);
    ASSERT_EQ(out.report.curves.size(), 2u);
    const auto &nc = out.report.curves[0];
    ASSERT_EQ(nc.extrema.size(), 3u);
    EXPECT_LT(nc.extrema[0].location, pi / 2);
    EXPECT_GT(nc.extrema[1].location, pi / 2);
    EXPECT_EQ(nc.extrema[2].kind, ExtremumKind::kMin);
    EXPECT_NEAR(nc.extrema[0].location, pi - nc.extrema[1].location, 0.08);
}

TEST(CoherencePure, DeterministicAcrossThreadCounts) {
    auto one = small_pure();
    auto three = small_pure();
    three.threads = 3;
    auto a = run_sweep(one), b = run_sweep(three);
    EXPECT_EQ(csv_text(a), csv_text(b));
    EXPECT_EQ(report_json(a.report, false), report_json(b.report, false));
}

TEST(CoherencePure, NearPoleEndpointsSmall) {
    SweepSpec spec;
    spec.theta = GridRange{0.001, pi - 0.001, 3};
    auto out = run_sweep(spec);
    for (std::size_t i : {0u, 2u}) {
        EXPECT_LT(out.table.rows[i][1], 0.01) << "c_nc at theta " << out.table.rows[i][0];
        EXPECT_LT(out.table.rows[i][2], 0.01) << "c_rel_ent at theta " << out.table.rows[i][0];
    }
}

TEST(CoherenceMixed, NearlyMaximallyMixedRowsSmall) {
    SweepSpec spec;
    spec.experiment = Experiment::kCoherenceMixed;
    spec.r_values = {0.0001};
    spec.theta = GridRange{0.001, pi - 0.001, 21};
    auto out = run_sweep(spec);
    for (const auto &row : out.table.rows) {
        EXPECT_LT(row[2], 0.01) << "theta " << row[1];
    }
}

TEST(CoherenceMixed, ExplicitRadii) {
    SweepSpec spec;
    spec.experiment = Experiment::kCoherenceMixed;
    spec.r_values = {0.5, 1.0};
    spec.theta = GridRange{0.2, pi / 2, 11};
    spec.nc.coarse_grid_points = 201;
    spec.threads = 2;
    auto out = run_sweep(spec);
    ASSERT_EQ(out.table.rows.size(), 22u);
    ASSERT_EQ(out.report.curves.size(), 2u);
    const auto &c = out.report.curves[1];
    EXPECT_EQ(c.parameter, 1.0);
    ASSERT_EQ(c.metrics.size(), 3u);
    EXPECT_EQ(c.metrics[2].name, "dip_depth");
    EXPECT_GE(c.metrics[2].value, 0.0);
}

TEST(CoherenceOrders, FirstOrderCurveIsFlat) {
    SweepSpec spec;
    spec.experiment = Experiment::kCoherenceOrders;
    spec.alphas = {1.0, 0.5};
    spec.theta = GridRange{0.2, pi - 0.2, 9};
    spec.nc.coarse_grid_points = 201;
    auto out = run_sweep(spec);
    ASSERT_EQ(out.table.rows.size(), 18u);
    for (std::size_t i = 0; i < 9; i++) {
        EXPECT_LE(std::abs(out.table.rows[i][2]), 1e-9);
    }
}

SweepSpec small_qpea(Experiment e) {
    SweepSpec spec;
    spec.experiment = e;
    spec.m_list = {2, 5};
    spec.theta = GridRange{0.01, pi - 0.01, 401};
    return spec;
}

TEST(QpeaSweep, ValuesAndExtrema) {
    auto out = run_sweep(small_qpea(Experiment::kQpeaSweep));
    EXPECT_EQ(out.table.columns.back(), "p_a");
    ASSERT_EQ(out.table.rows.size(), 802u);
    for (const auto &row : out.table.rows) {
        EXPECT_GE(row[3], 0.0);
        EXPECT_LE(row[3], 1.0);
        EXPECT_EQ(row[1], qpea::default_delta(static_cast<int>(row[0])));
    }
    for (const auto &curve : out.report.curves) {
        ASSERT_EQ(curve.extrema.size(), 2u);
        EXPECT_NEAR(curve.extrema[0].location, pi / 2, 1e-5);
    }
}

TEST(QpeaSweep, ExtremaDominateGridNeighbours) {
    auto spec = small_qpea(Experiment::kQpeaSweep);
    auto out = run_sweep(spec);
    for (std::size_t k = 0; k < spec.m_list.size(); k++) {
        const auto &max = out.report.curves[k].extrema[0];
        const int m = spec.m_list[k];
        const double d = qpea::default_delta(m);
        const double step = (spec.theta->stop - spec.theta->start) / 400;
        double at = qpea::success_prob_product(qpea::QpeaParams(m, max.location, d));
        EXPECT_NEAR(at, max.value, 1e-15);
        EXPECT_GE(at, qpea::success_prob_product(qpea::QpeaParams(m, max.location - step, d)));
        EXPECT_GE(at, qpea::success_prob_product(qpea::QpeaParams(m, max.location + step, d)));
    }
}

TEST(QpeaDerivative, MatchesDifferencesOfSweep) {
    SweepSpec sweep;
    sweep.experiment = Experiment::kQpeaSweep;
    sweep.m_list = {5};
    auto p = run_sweep(sweep);
    sweep.experiment = Experiment::kQpeaDerivative;
    auto d = run_sweep(sweep);
    const auto &rows = p.table.rows;
    ASSERT_EQ(rows.size(), d.table.rows.size());
    for (std::size_t i = 1; i + 1 < rows.size(); i++) {
        double diff = (rows[i + 1][3] - rows[i - 1][3]) / (rows[i + 1][2] - rows[i - 1][2]);
        EXPECT_NEAR(d.table.rows[i][3], diff, 1e-6) << "theta " << rows[i][2];
    }
}

TEST(QpeaDerivative, ZeroOffsetVanishesAtHalfPi) {
    SweepSpec spec;
    spec.experiment = Experiment::kQpeaDerivative;
    spec.m_list = {5};
    spec.delta = 0.0;
    auto out = run_sweep(spec);
    const auto &row = out.table.rows[2000];
    EXPECT_NEAR(row[2], pi / 2, 1e-15);
    EXPECT_LT(std::abs(row[3]), 2e-7);
    EXPECT_EQ(out.report.curves[0].extrema[0].kind, ExtremumKind::kDerivativeMax);
}

TEST(Output, NumberFormat) {
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(format_number(-INFINITY), "-inf");
    EXPECT_EQ(std::stod(format_number(pi)), pi);
}

TEST(Output, CsvHeader) {
    auto text = csv_text(run_sweep(small_qpea(Experiment::kQpeaSweep)));
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "# ncoh " + std::string(kToolkitVersion));
    int comments = 1;
    while (std::getline(in, line) && line.rfind("#", 0) == 0) {
        comments++;
    }
    EXPECT_GE(comments, 3);
    EXPECT_EQ(line, "m,delta,theta_rad,p_a");
}

TEST(Output, ReportKeyOrder) {
    auto out = run_sweep(small_qpea(Experiment::kQpeaSweep));
    auto j = nlohmann::ordered_json::parse(report_json(out.report));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) {
        keys.push_back(it.key());
    }
    EXPECT_EQ(keys, (std::vector<std::string>{"experiment", "curves", "config", "version",
                                              "wall_clock_seconds"}));
    EXPECT_EQ(j["version"], std::string(kToolkitVersion));
    EXPECT_FALSE(nlohmann::ordered_json::parse(report_json(out.report, false)).contains("wall_clock_seconds"));
}

TEST(Output, Paths) {
    auto p = output_paths("dir/run.csv");
    EXPECT_EQ(p.csv, "dir/run.csv");
    EXPECT_EQ(p.report, "dir/run.json");
    auto q = output_paths("run");
    EXPECT_EQ(q.csv, "run.csv");
    EXPECT_EQ(q.report, "run.json");
}

TEST(Output, WritesFilesAndReportsFailure) {
    auto out = run_sweep(small_qpea(Experiment::kQpeaSweep));
    auto dir = std::filesystem::temp_directory_path() / "ncoh_sweep_test";
    std::filesystem::create_directories(dir);
    auto paths = write_outputs(out, (dir / "q").string());
    EXPECT_TRUE(std::filesystem::exists(paths.csv));
    EXPECT_TRUE(std::filesystem::exists(paths.report));
    EXPECT_THROW(write_outputs(out, "/nonexistent_dir_ncoh/q"), OutputError);
    std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace ncoh
