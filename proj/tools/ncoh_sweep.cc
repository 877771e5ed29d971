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

// Runs one parameter sweep and writes <out>.csv plus an extremum report <out>.json.
//
// Exit codes: 0 success, 1 output or evaluation failure, 2 usage error, 3 parameter outside
// its domain.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ncoh/sweep.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

struct RangeFlags {
    std::optional<double> min, max;
    std::optional<long long> steps;
};

std::optional<ncoh::GridRange> to_grid(const RangeFlags &f, const std::optional<ncoh::GridRange> &fallback,
                                       const char *name) {
    if (!f.min && !f.max && !f.steps) {
        return std::nullopt;
    }
    if (!fallback && !(f.min && f.max && f.steps)) {
        throw ncoh::SpecError(std::string("--") + name + "-min, --" + name + "-max and --" + name +
                              "-steps must be given together");
    }
    ncoh::GridRange g = fallback.value_or(ncoh::GridRange{});
    if (f.min) g.start = *f.min;
    if (f.max) g.stop = *f.max;
    if (f.steps) {
        if (*f.steps < 2) {
            throw ncoh::SpecError(std::string("--") + name + "-steps must be at least 2");
        }
        g.count = static_cast<std::size_t>(*f.steps);
    }
    return g;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Noncommutative coherence and non-Hadamard phase estimation sweeps"};
    app.set_version_flag("--version", std::string(ncoh::kToolkitVersion));

    std::string experiment;
    RangeFlags theta, r;
    std::vector<std::string> orders;
    std::vector<int> m_list;
    std::optional<double> delta;
    std::string distance = "rel-ent";
    long long grid = 2001;
    int refine = 60;
    double boundary_eps = 1e-4;
    long long threads = 1;
    std::string out;

    app.add_option("--experiment", experiment,
                   "coherence-pure | coherence-mixed | coherence-orders | qpea-sweep | qpea-derivative")
        ->required()
        ->check(CLI::IsMember({"coherence-pure", "coherence-mixed", "coherence-orders", "qpea-sweep",
                               "qpea-derivative"}));
    app.add_option("--theta-min", theta.min, "First theta grid point (rad)");
    app.add_option("--theta-max", theta.max, "Last theta grid point (rad)");
    app.add_option("--theta-steps", theta.steps, "Number of theta grid points");
    app.add_option("--r-min", r.min, "First Bloch radius (coherence-mixed)");
    app.add_option("--r-max", r.max, "Last Bloch radius (coherence-mixed)");
    app.add_option("--r-steps", r.steps, "Number of Bloch radii (coherence-mixed)");
    app.add_option("--orders", orders, "Orders n, e.g. 2,3,1/2 (alpha = 1/n)")->delimiter(',');
    app.add_option("--m-list", m_list, "Auxiliary register sizes, e.g. 5,10,25")->delimiter(',');
    app.add_option("--delta", delta, "Phase offset; overrides the per-m schedule");
    app.add_option("--distance", distance, "rel-ent | trace")->check(CLI::IsMember({"rel-ent", "trace"}));
    app.add_option("--grid", grid, "Coarse grid points for the search over p");
    app.add_option("--refine", refine, "Bracket refinement iterations for the search over p");
    app.add_option("--boundary-eps", boundary_eps, "p is searched on [eps, 1 - eps]");
    app.add_option("--threads", threads, "Worker threads");
    app.add_option("--out", out, "Output path; writes <out>.csv and <out>.json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    ncoh::SweepOutput result;
    try {
        ncoh::SweepSpec spec;
        spec.experiment = ncoh::parse_experiment(experiment);
        spec.theta = to_grid(theta, std::nullopt, "theta");
        spec.r = to_grid(r, std::nullopt, "r");
        for (const auto &o : orders) {
            spec.alphas.push_back(ncoh::parse_order_alpha(o));
        }
        spec.m_list = m_list;
        spec.delta = delta;
        try {
            spec.nc.distance = ncoh::parse_distance(distance);
        } catch (const std::invalid_argument &e) {
            throw ncoh::SpecError(e.what());
        }
        if (grid < 3 || refine < 1 || threads < 1) {
            throw ncoh::SpecError("--grid must be >= 3, --refine >= 1 and --threads >= 1");
        }
        spec.nc.coarse_grid_points = static_cast<std::size_t>(grid);
        spec.nc.refine_iterations = refine;
        spec.nc.boundary_eps = boundary_eps;
        spec.threads = static_cast<unsigned>(threads);
        spec.output_path = out;
        spec = ncoh::resolve(spec);
        result = ncoh::run_sweep(spec);
    } catch (const ncoh::SpecError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }

    try {
        auto paths = ncoh::write_outputs(result, out);
        std::cerr << "wrote " << paths.csv << " and " << paths.report << " ("
                  << result.table.rows.size() << " rows, " << result.report.wall_clock_seconds
                  << " s)\n";
    } catch (const ncoh::OutputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}
