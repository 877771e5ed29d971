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

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "ncoh/parallel.h"
#include "ncoh/qpea.h"
#include "ncoh/scalar_search.h"

namespace ncoh {

namespace {

using std::numbers::pi;
using json = nlohmann::ordered_json;

constexpr double kPoleOffset = 1e-3;
constexpr std::size_t kCoherenceThetaPoints = 1001;
constexpr double kHalfPiMatch = 1e-9;

GridRange default_coherence_theta() {
    return GridRange{kPoleOffset, pi - kPoleOffset, kCoherenceThetaPoints};
}

GridRange default_qpea_theta() {
    const auto grid = qpea::theta_grid(qpea::kDefaultThetaGrid);
    return GridRange{grid.front(), grid.back(), grid.size()};
}

// Main r grid (r = 0 excluded) plus the window near the pure states.
std::vector<double> default_mixed_r() {
    std::vector<double> rs = GridRange{0.02, 1.0, 50}.points();
    for (double r : GridRange{0.9, 1.0, 21}.points()) {
        bool dup = std::any_of(rs.begin(), rs.end(), [r](double x) { return std::abs(x - r) < 1e-12; });
        if (!dup) {
            rs.push_back(r);
        }
    }
    std::sort(rs.begin(), rs.end());
    return rs;
}

std::vector<double> default_order_alphas() {
    std::vector<double> out{1.0};
    for (int n = 2; n <= 10; n++) {
        out.push_back(1.0 / n);
    }
    for (int k = 2; k <= 10; k++) {
        out.push_back(static_cast<double>(k));
    }
    return out;
}

bool is_coherence(Experiment e) {
    return e == Experiment::kCoherencePure || e == Experiment::kCoherenceMixed ||
           e == Experiment::kCoherenceOrders;
}

void check_grid(const GridRange &g, const char *name, double lo, double hi) {
    if (g.count < 2) {
        throw SpecError(std::string(name) + " grid needs at least 2 points");
    }
    if (!std::isfinite(g.start) || !std::isfinite(g.stop) || !(g.start < g.stop)) {
        throw SpecError(std::string(name) + " grid needs start < stop");
    }
    if (g.start < lo || g.stop > hi) {
        throw SpecError(std::string(name) + " grid must lie within [" + format_number(lo) + ", " +
                        format_number(hi) + "]");
    }
}

std::string fmt_short(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

json grid_json(const GridRange &g) {
    return json{{"start", g.start}, {"stop", g.stop}, {"count", g.count}};
}

json config_json(const SweepSpec &spec, const std::vector<double> *r_values) {
    json c;
    c["experiment"] = std::string(to_string(spec.experiment));
    c["theta"] = grid_json(*spec.theta);
    if (spec.experiment == Experiment::kCoherenceMixed) {
        if (spec.r && spec.r_values.empty()) {
            c["r"] = grid_json(*spec.r);
        } else {
            c["r"] = *r_values;
        }
    }
    if (is_coherence(spec.experiment)) {
        c["orders_alpha"] = spec.alphas;
        c["distance"] = std::string(to_string(spec.nc.distance));
        c["coarse_grid_points"] = spec.nc.coarse_grid_points;
        c["refine_iterations"] = spec.nc.refine_iterations;
        c["boundary_eps"] = spec.nc.boundary_eps;
        c["p_search"] =
            "uniform grid on [boundary_eps, 1 - boundary_eps], then three-point bracket "
            "refinement around the best point; infinite distances skipped";
    } else {
        c["m_list"] = spec.m_list;
        if (spec.delta) {
            c["delta"] = *spec.delta;
        } else {
            c["delta"] = "schedule: 2^-10 (m<=7), 2^-20 (m<=17), 2^-30 (m<=25)";
        }
        c["derivative_step"] = qpea::kDefaultDerivativeStep;
        c["theta_search"] = "sweep grid, then three-point bracket refinement to width 1e-6";
    }
    return c;
}

std::vector<std::string> header_lines(const SweepSpec &spec, const json &config) {
    std::vector<std::string> lines;
    lines.push_back("ncoh " + std::string(kToolkitVersion));
    lines.push_back("experiment: " + std::string(to_string(spec.experiment)));
    lines.push_back("config: " + config.dump());
    const auto &t = *spec.theta;
    lines.push_back("grid theta_rad: start=" + format_number(t.start) + " stop=" +
                    format_number(t.stop) + " count=" + std::to_string(t.count));
    if (spec.experiment == Experiment::kCoherenceMixed && spec.r && spec.r_values.empty()) {
        const auto &r = *spec.r;
        lines.push_back("grid r: start=" + format_number(r.start) + " stop=" + format_number(r.stop) +
                        " count=" + std::to_string(r.count));
    }
    return lines;
}

std::size_t argmax_in(const std::vector<double> &v, std::size_t lo, std::size_t hi) {
    std::size_t best = lo;
    for (std::size_t i = lo; i <= hi; i++) {
        if (v[i] > v[best]) {
            best = i;
        }
    }
    return best;
}

std::size_t argmin_in(const std::vector<double> &v, std::size_t lo, std::size_t hi) {
    std::size_t best = lo;
    for (std::size_t i = lo; i <= hi; i++) {
        if (v[i] < v[best]) {
            best = i;
        }
    }
    return best;
}

std::size_t nearest_index(const std::vector<double> &xs, double x) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < xs.size(); i++) {
        if (std::abs(xs[i] - x) < std::abs(xs[best] - x)) {
            best = i;
        }
    }
    return best;
}

// Maxima on each side of pi/2 (both sides include pi/2 itself when it is a grid point).
std::pair<std::size_t, std::size_t> split_maxima(const std::vector<double> &thetas,
                                                 const std::vector<double> &values) {
    std::size_t n = thetas.size();
    std::size_t last_left = 0;
    while (last_left + 1 < n && thetas[last_left + 1] <= pi / 2 + kHalfPiMatch) {
        last_left++;
    }
    std::size_t first_right = n - 1;
    while (first_right > 0 && thetas[first_right - 1] >= pi / 2 - kHalfPiMatch) {
        first_right--;
    }
    return {argmax_in(values, 0, last_left), argmax_in(values, first_right, n - 1)};
}

struct CoherencePoint {
    double c_nc = 0;
    double argmax_p = 0;
    double conventional = 0;
};

NcConfig config_for(const SweepSpec &spec, double alpha) {
    NcConfig cfg = spec.nc;
    cfg.order_inverse = alpha;
    return cfg;
}

SweepOutput start_output(const SweepSpec &spec, const std::vector<double> *r_values,
                         std::vector<std::string> columns) {
    SweepOutput out;
    json config = config_json(spec, r_values);
    out.header_comments = header_lines(spec, config);
    out.report.experiment = std::string(to_string(spec.experiment));
    out.report.config_json = config.dump();
    out.table.columns = std::move(columns);
    return out;
}

int scheduled_or_override_check(const SweepSpec &spec, int m) {
    if (spec.delta) {
        if (!(std::abs(*spec.delta) <= std::ldexp(1.0, -(m + 1)))) {
            throw SpecError("delta " + format_number(*spec.delta) + " violates |delta| <= 2^-(m+1) for m = " +
                            std::to_string(m));
        }
    } else if (m < 2 || m > 25) {
        throw SpecError("m = " + std::to_string(m) +
                        " has no scheduled delta; pass --delta explicitly");
    }
    return m;
}

double delta_for(const SweepSpec &spec, int m) {
    return spec.delta ? *spec.delta : qpea::default_delta(m);
}

}  // namespace

std::string_view to_string(Experiment e) {
    switch (e) {
        case Experiment::kCoherencePure:
            return "coherence-pure";
        case Experiment::kCoherenceMixed:
            return "coherence-mixed";
        case Experiment::kCoherenceOrders:
            return "coherence-orders";
        case Experiment::kQpeaSweep:
            return "qpea-sweep";
        case Experiment::kQpeaDerivative:
            return "qpea-derivative";
    }
    return "?";
}

Experiment parse_experiment(std::string_view s) {
    for (auto e : {Experiment::kCoherencePure, Experiment::kCoherenceMixed,
                   Experiment::kCoherenceOrders, Experiment::kQpeaSweep,
                   Experiment::kQpeaDerivative}) {
        if (to_string(e) == s) {
            return e;
        }
    }
    throw SpecError("unknown experiment '" + std::string(s) + "'");
}

std::string_view to_string(ExtremumKind k) {
    switch (k) {
        case ExtremumKind::kMax:
            return "max";
        case ExtremumKind::kMin:
            return "min";
        case ExtremumKind::kDerivativeMax:
            return "derivative-max";
    }
    return "?";
}

std::vector<double> GridRange::points() const {
    return linspace(start, stop, count);
}

double parse_order_alpha(std::string_view s) {
    auto parse_double = [](std::string_view t) {
        double v = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
            throw SpecError("malformed order '" + std::string(t) + "'");
        }
        return v;
    };
    double n;
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        n = parse_double(s);
    } else {
        double num = parse_double(s.substr(0, slash));
        double den = parse_double(s.substr(slash + 1));
        if (den == 0) {
            throw SpecError("order '" + std::string(s) + "' has a zero denominator");
        }
        n = num / den;
    }
    if (!(n > 0) || !std::isfinite(n)) {
        throw SpecError("order must be positive, got '" + std::string(s) + "'");
    }
    return 1.0 / n;
}

SweepSpec resolve(SweepSpec spec) {
    if (spec.threads < 1) {
        throw SpecError("threads must be at least 1");
    }
    try {
        spec.nc.validate();
    } catch (const std::invalid_argument &e) {
        throw SpecError(e.what());
    }

    if (is_coherence(spec.experiment)) {
        if (!spec.theta) {
            spec.theta = default_coherence_theta();
        }
        check_grid(*spec.theta, "theta", 0.0, pi);
        if (spec.alphas.empty()) {
            spec.alphas = spec.experiment == Experiment::kCoherenceOrders
                              ? default_order_alphas()
                              : std::vector<double>{0.5};
        }
        if (spec.experiment != Experiment::kCoherenceOrders && spec.alphas.size() != 1) {
            throw SpecError("pure and mixed sweeps take a single order");
        }
        for (double a : spec.alphas) {
            if (!(a > 0) || !std::isfinite(a)) {
                throw SpecError("orders must be positive");
            }
        }
        if (spec.experiment == Experiment::kCoherenceMixed && spec.r) {
            check_grid(*spec.r, "r", 0.0, 1.0);
            if (!(spec.r->start > 0)) {
                throw SpecError("r grid must lie within (0, 1]");
            }
        }
        for (double r : spec.r_values) {
            if (!(r > 0 && r <= 1)) {
                throw SpecError("r values must lie within (0, 1]");
            }
        }
        if (spec.experiment != Experiment::kCoherenceMixed && (spec.r || !spec.r_values.empty())) {
            throw SpecError("the r grid only applies to coherence-mixed");
        }
        if (!spec.m_list.empty() || spec.delta) {
            throw SpecError("m list and delta only apply to the qpea experiments");
        }
    } else {
        if (!spec.theta) {
            spec.theta = default_qpea_theta();
        }
        if (spec.experiment == Experiment::kQpeaDerivative) {
            const double h = qpea::kDefaultDerivativeStep;
            check_grid(*spec.theta, "theta", h, pi - h);
        } else {
            check_grid(*spec.theta, "theta", 0.0, pi);
        }
        if (spec.m_list.empty()) {
            spec.m_list = {2, 3, 4, 5, 6, 7, 10, 15, 20, 25};
        }
        for (int m : spec.m_list) {
            if (m < 1 || m > qpea::kMaxProductQubits) {
                throw SpecError("m = " + std::to_string(m) + " outside [1, " +
                                std::to_string(qpea::kMaxProductQubits) + "]");
            }
            scheduled_or_override_check(spec, m);
        }
        if (spec.r || !spec.r_values.empty() || !spec.alphas.empty()) {
            throw SpecError("r grid and orders only apply to the coherence experiments");
        }
    }
    return spec;
}

SweepOutput run_coherence_pure(const SweepSpec &raw) {
    const SweepSpec spec = resolve(raw);
    const NcConfig cfg = config_for(spec, spec.alphas.front());
    const auto thetas = spec.theta->points();

    auto points = parallel_map(thetas.size(), spec.threads, [&](std::size_t i) {
        HermitianOperator rho = density_from_bloch(BlochState(1.0, thetas[i]));
        NcResult nc = nc_coherence(rho, cfg);
        return CoherencePoint{nc.value, nc.argmax_p, rel_ent_coherence(rho).value};
    });

    SweepOutput out = start_output(spec, nullptr, {"theta_rad", "c_nc_bits", "c_rel_ent_bits", "argmax_p"});
    std::vector<double> c_nc, conventional;
    for (std::size_t i = 0; i < thetas.size(); i++) {
        out.table.rows.push_back({thetas[i], points[i].c_nc, points[i].conventional, points[i].argmax_p});
        c_nc.push_back(points[i].c_nc);
        conventional.push_back(points[i].conventional);
    }

    CurveReport nc_curve{"c_nc", "alpha", spec.alphas.front(), {}, {}};
    auto [left, right] = split_maxima(thetas, c_nc);
    nc_curve.extrema.push_back({ExtremumKind::kMax, thetas[left], c_nc[left]});
    if (right != left) {
        nc_curve.extrema.push_back({ExtremumKind::kMax, thetas[right], c_nc[right]});
    }
    if (right > left + 1) {
        std::size_t mid = argmin_in(c_nc, left + 1, right - 1);
        nc_curve.extrema.push_back({ExtremumKind::kMin, thetas[mid], c_nc[mid]});
    }
    out.report.curves.push_back(std::move(nc_curve));

    std::size_t peak = argmax_in(conventional, 0, conventional.size() - 1);
    out.report.curves.push_back(CurveReport{
        "c_rel_ent", "", std::nan(""), {{ExtremumKind::kMax, thetas[peak], conventional[peak]}}, {}});
    return out;
}

SweepOutput run_coherence_mixed(const SweepSpec &raw) {
    const SweepSpec spec = resolve(raw);
    const NcConfig cfg = config_for(spec, spec.alphas.front());
    const auto thetas = spec.theta->points();
    const auto rs = !spec.r_values.empty() ? spec.r_values
                    : spec.r             ? spec.r->points()
                                         : default_mixed_r();
    const std::size_t nt = thetas.size();

    auto points = parallel_map(rs.size() * nt, spec.threads, [&](std::size_t i) {
        HermitianOperator rho = density_from_bloch(BlochState(rs[i / nt], thetas[i % nt]));
        NcResult nc = nc_coherence(rho, cfg);
        return CoherencePoint{nc.value, nc.argmax_p, 0.0};
    });

    SweepOutput out = start_output(spec, &rs, {"r", "theta_rad", "c_nc_bits", "argmax_p"});
    const std::size_t half = nearest_index(thetas, pi / 2);
    for (std::size_t ri = 0; ri < rs.size(); ri++) {
        std::vector<double> row_values(nt);
        for (std::size_t ti = 0; ti < nt; ti++) {
            const auto &pt = points[ri * nt + ti];
            out.table.rows.push_back({rs[ri], thetas[ti], pt.c_nc, pt.argmax_p});
            row_values[ti] = pt.c_nc;
        }
        std::size_t peak = argmax_in(row_values, 0, nt - 1);
        CurveReport curve{"r=" + fmt_short(rs[ri]), "r", rs[ri], {}, {}};
        curve.extrema.push_back({ExtremumKind::kMax, thetas[peak], row_values[peak]});
        curve.metrics.push_back({"theta_nearest_half_pi", thetas[half]});
        curve.metrics.push_back({"value_at_half_pi", row_values[half]});
        curve.metrics.push_back({"dip_depth", row_values[peak] - row_values[half]});
        out.report.curves.push_back(std::move(curve));
    }
    return out;
}

SweepOutput run_coherence_orders(const SweepSpec &raw) {
    const SweepSpec spec = resolve(raw);
    const auto thetas = spec.theta->points();
    const std::size_t nt = thetas.size();

    auto values = parallel_map(spec.alphas.size() * nt, spec.threads, [&](std::size_t i) {
        HermitianOperator rho = density_from_bloch(BlochState(1.0, thetas[i % nt]));
        return nc_coherence(rho, config_for(spec, spec.alphas[i / nt])).value;
    });

    SweepOutput out = start_output(spec, nullptr, {"alpha", "theta_rad", "c_nc_bits"});
    for (std::size_t ai = 0; ai < spec.alphas.size(); ai++) {
        std::vector<double> curve_values(values.begin() + ai * nt, values.begin() + (ai + 1) * nt);
        for (std::size_t ti = 0; ti < nt; ti++) {
            out.table.rows.push_back({spec.alphas[ai], thetas[ti], curve_values[ti]});
        }
        CurveReport curve{"alpha=" + fmt_short(spec.alphas[ai]), "alpha", spec.alphas[ai], {}, {}};
        auto [left, right] = split_maxima(thetas, curve_values);
        curve.extrema.push_back({ExtremumKind::kMax, thetas[left], curve_values[left]});
        if (right != left) {
            curve.extrema.push_back({ExtremumKind::kMax, thetas[right], curve_values[right]});
        }
        out.report.curves.push_back(std::move(curve));
    }
    return out;
}

namespace {

SweepOutput run_qpea(const SweepSpec &spec, bool derivative) {
    const auto thetas = spec.theta->points();
    const std::size_t nt = thetas.size();
    const auto &ms = spec.m_list;

    auto values = parallel_map(ms.size() * nt, spec.threads, [&](std::size_t i) {
        const int m = ms[i / nt];
        qpea::QpeaParams q(m, thetas[i % nt], delta_for(spec, m));
        return derivative ? qpea::success_prob_derivative(q) : qpea::success_prob_product(q);
    });
    auto extrema = parallel_map(ms.size(), spec.threads, [&](std::size_t k) {
        const int m = ms[k];
        const double d = delta_for(spec, m);
        const auto &g = *spec.theta;
        std::vector<Extremum> found;
        if (derivative) {
            auto e = qpea::derivative_max_in(m, d, g.start, g.stop, g.count);
            found.push_back({ExtremumKind::kDerivativeMax, e.theta, e.value});
        } else {
            auto hi = qpea::prob_max_in(m, d, g.start, g.stop, g.count);
            auto lo = qpea::prob_min_in(m, d, g.start, g.stop, g.count);
            found.push_back({ExtremumKind::kMax, hi.theta, hi.value});
            found.push_back({ExtremumKind::kMin, lo.theta, lo.value});
        }
        return found;
    });

    SweepOutput out = start_output(
        spec, nullptr, {"m", "delta", "theta_rad", derivative ? "dp_dtheta" : "p_a"});
    for (std::size_t k = 0; k < ms.size(); k++) {
        const double d = delta_for(spec, ms[k]);
        for (std::size_t ti = 0; ti < nt; ti++) {
            out.table.rows.push_back({static_cast<double>(ms[k]), d, thetas[ti], values[k * nt + ti]});
        }
        CurveReport curve{"m=" + std::to_string(ms[k]), "m", static_cast<double>(ms[k]), extrema[k], {}};
        curve.metrics.push_back({"delta", d});
        out.report.curves.push_back(std::move(curve));
    }
    return out;
}

}  // namespace

SweepOutput run_qpea_sweep(const SweepSpec &raw) {
    SweepSpec spec = raw;
    spec.experiment = Experiment::kQpeaSweep;
    return run_qpea(resolve(spec), false);
}

SweepOutput run_qpea_derivative(const SweepSpec &raw) {
    SweepSpec spec = raw;
    spec.experiment = Experiment::kQpeaDerivative;
    return run_qpea(resolve(spec), true);
}

SweepOutput run_sweep(const SweepSpec &spec) {
    const auto t0 = std::chrono::steady_clock::now();
    SweepOutput out;
    switch (spec.experiment) {
        case Experiment::kCoherencePure:
            out = run_coherence_pure(spec);
            break;
        case Experiment::kCoherenceMixed:
            out = run_coherence_mixed(spec);
            break;
        case Experiment::kCoherenceOrders:
            out = run_coherence_orders(spec);
            break;
        case Experiment::kQpeaSweep:
            out = run_qpea_sweep(spec);
            break;
        case Experiment::kQpeaDerivative:
            out = run_qpea_derivative(spec);
            break;
    }
    out.report.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(std::ostream &out, const SweepOutput &result) {
    for (const auto &line : result.header_comments) {
        out << "# " << line << '\n';
    }
    const auto &cols = result.table.columns;
    for (std::size_t i = 0; i < cols.size(); i++) {
        out << (i ? "," : "") << cols[i];
    }
    out << '\n';
    for (const auto &row : result.table.rows) {
        for (std::size_t i = 0; i < row.size(); i++) {
            out << (i ? "," : "") << format_number(row[i]);
        }
        out << '\n';
    }
}

std::string report_json(const ExtremumReport &report, bool include_timing) {
    json j;
    j["experiment"] = report.experiment;
    json curves = json::array();
    for (const auto &c : report.curves) {
        json jc;
        jc["label"] = c.label;
        if (!c.parameter_name.empty()) {
            jc["parameter"] = json{{"name", c.parameter_name}, {"value", c.parameter}};
        }
        json ex = json::array();
        for (const auto &e : c.extrema) {
            ex.push_back(json{{"kind", std::string(to_string(e.kind))},
                              {"location", e.location},
                              {"value", e.value}});
        }
        jc["extrema"] = ex;
        json metrics = json::object();
        for (const auto &m : c.metrics) {
            metrics[m.name] = m.value;
        }
        jc["metrics"] = metrics;
        curves.push_back(jc);
    }
    j["curves"] = curves;
    j["config"] = json::parse(report.config_json);
    j["version"] = report.version;
    if (include_timing) {
        j["wall_clock_seconds"] = report.wall_clock_seconds;
    }
    return j.dump(2) + "\n";
}

OutputPaths output_paths(const std::string &out) {
    std::string base = out;
    const std::string ext = ".csv";
    if (base.size() > ext.size() && base.compare(base.size() - ext.size(), ext.size(), ext) == 0) {
        base.resize(base.size() - ext.size());
    }
    return {base + ".csv", base + ".json"};
}

OutputPaths write_outputs(const SweepOutput &result, const std::string &out) {
    OutputPaths paths = output_paths(out);
    {
        std::ofstream csv(paths.csv, std::ios::binary);
        if (!csv) {
            throw OutputError("cannot open '" + paths.csv + "' for writing");
        }
        write_csv(csv, result);
        if (!csv.flush()) {
            throw OutputError("failed writing '" + paths.csv + "'");
        }
    }
    std::ofstream rep(paths.report, std::ios::binary);
    if (!rep) {
        throw OutputError("cannot open '" + paths.report + "' for writing");
    }
    rep << report_json(result.report);
    if (!rep.flush()) {
        throw OutputError("failed writing '" + paths.report + "'");
    }
    return paths;
}

}  // namespace ncoh
