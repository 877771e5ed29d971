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

#ifndef NCOH_SWEEP_H
#define NCOH_SWEEP_H

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ncoh/coherence.h"

namespace ncoh {

inline constexpr std::string_view kToolkitVersion = "0.1.0";

/// Sweep parameters outside their domain. The CLI maps this to exit code 3.
class SpecError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Output could not be written. The CLI maps this to exit code 1.
class OutputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class Experiment {
    kCoherencePure,
    kCoherenceMixed,
    kCoherenceOrders,
    kQpeaSweep,
    kQpeaDerivative,
};

std::string_view to_string(Experiment e);
/// Throws SpecError on an unknown name.
Experiment parse_experiment(std::string_view s);

struct GridRange {
    double start = 0;
    double stop = 0;
    std::size_t count = 2;

    std::vector<double> points() const;
};

/// Parses an order such as "2", "0.5" or "1/3" into n and returns alpha = 1/n.
double parse_order_alpha(std::string_view s);

struct SweepSpec {
    Experiment experiment = Experiment::kCoherencePure;
    /// Unset grids take per-experiment defaults (see resolve()).
    std::optional<GridRange> theta;
    std::optional<GridRange> r;
    /// Explicit Bloch radii for coherence-mixed; takes precedence over `r` when non-empty.
    std::vector<double> r_values;
    /// Orders as alpha = 1/n. Pure and mixed sweeps use exactly one entry.
    std::vector<double> alphas;
    std::vector<int> m_list;
    /// Overrides the delta schedule when set.
    std::optional<double> delta;
    /// Order and distance options; order_inverse is taken from `alphas`.
    NcConfig nc;
    std::string output_path;
    unsigned threads = 1;
};

/// Fills in defaults and checks every domain. Throws SpecError.
SweepSpec resolve(SweepSpec spec);

enum class ExtremumKind { kMax, kMin, kDerivativeMax };
std::string_view to_string(ExtremumKind k);

struct Extremum {
    ExtremumKind kind = ExtremumKind::kMax;
    double location = 0;
    double value = 0;
};

struct Metric {
    std::string name;
    double value = 0;
};

struct CurveReport {
    std::string label;
    /// Curve parameter (r, alpha or m); NaN when the curve has none.
    std::string parameter_name;
    double parameter = 0;
    std::vector<Extremum> extrema;
    std::vector<Metric> metrics;
};

struct ExtremumReport {
    std::string experiment;
    std::vector<CurveReport> curves;
    /// Compact JSON echo of the resolved SweepSpec (thread count excluded).
    std::string config_json;
    std::string version{kToolkitVersion};
    double wall_clock_seconds = 0;
};

struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct SweepOutput {
    SweepTable table;
    ExtremumReport report;
    /// Lines written after '#' at the top of the CSV.
    std::vector<std::string> header_comments;
};

SweepOutput run_coherence_pure(const SweepSpec &spec);
SweepOutput run_coherence_mixed(const SweepSpec &spec);
SweepOutput run_coherence_orders(const SweepSpec &spec);
SweepOutput run_qpea_sweep(const SweepSpec &spec);
SweepOutput run_qpea_derivative(const SweepSpec &spec);

/// Resolves `spec`, dispatches on the experiment and records wall-clock time.
SweepOutput run_sweep(const SweepSpec &spec);

/// %.17g, with "inf"/"-inf"/"nan" spelled out.
std::string format_number(double x);

void write_csv(std::ostream &out, const SweepOutput &result);

/// JSON with keys in the order experiment, curves, config, version, wall_clock_seconds.
std::string report_json(const ExtremumReport &report, bool include_timing = true);

struct OutputPaths {
    std::string csv;
    std::string report;
};

/// "dir/name" or "dir/name.csv" -> {"dir/name.csv", "dir/name.json"}.
OutputPaths output_paths(const std::string &out);

/// Writes both files. Throws OutputError.
OutputPaths write_outputs(const SweepOutput &result, const std::string &out);

}  // namespace ncoh

#endif
