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

#include "ncoh/coherence.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ncoh/scalar_search.h"

namespace ncoh {

namespace {

void require_qubit_density(const HermitianOperator &rho, const char *op) {
    if (rho.dim() != 2) {
        throw std::invalid_argument(std::string(op) + ": expected a qubit operator");
    }
    if (std::abs(rho.trace() - 1.0) > 1e-9) {
        throw std::invalid_argument(std::string(op) + ": density operator must have unit trace");
    }
    auto s = eig_herm(rho);
    if (s.values.back() < -kNegativeClip) {
        throw NotPsdError(std::string(op) + ": density operator is not positive semidefinite",
                          s.values.back());
    }
}

HermitianOperator diag2(double a, double b) {
    const double d[2] = {a, b};
    return HermitianOperator::diagonal(d);
}

// Evaluates the distance for many p against a fixed rho, reusing rho^alpha.
class PairDistance {
   public:
    PairDistance(const HermitianOperator &rho, const NcConfig &cfg)
        : rho_(rho), rho_pow_(power_map(rho, cfg.order_inverse)), cfg_(cfg) {
    }

    ExtendedReal at(double p) const {
        HermitianOperator sigma = diag2(p, 1 - p);
        HermitianOperator sigma_pow = diag2(std::pow(p, cfg_.order_inverse),
                                            std::pow(1 - p, cfg_.order_inverse));
        HermitianOperator left = power_map(abs_map(jordan_half(rho_, sigma)), cfg_.order_inverse);
        HermitianOperator right = abs_map(jordan_half(rho_pow_, sigma_pow));
        if (cfg_.distance == Distance::kTraceDistance) {
            return ExtendedReal::finite(trace_distance(left, right));
        }
        return relative_entropy(left, right);
    }

   private:
    const HermitianOperator &rho_;
    HermitianOperator rho_pow_;
    const NcConfig &cfg_;
};

}  // namespace

BlochState::BlochState(double r, double theta, double phi_az) : r_(r), theta_(theta), phi_az_(phi_az) {
    if (!(r >= 0 && r <= 1)) {
        throw std::invalid_argument("BlochState: r must lie in [0, 1], got " + std::to_string(r));
    }
    if (!(theta >= 0 && theta <= std::numbers::pi)) {
        throw std::invalid_argument("BlochState: theta must lie in [0, pi], got " +
                                    std::to_string(theta));
    }
    if (!(phi_az >= 0 && phi_az < 2 * std::numbers::pi)) {
        throw std::invalid_argument("BlochState: phi_az must lie in [0, 2 pi), got " +
                                    std::to_string(phi_az));
    }
}

IncoherentQubit::IncoherentQubit(double p) : p_(p) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("IncoherentQubit: p must lie in [0, 1], got " + std::to_string(p));
    }
}

HermitianOperator IncoherentQubit::matrix() const {
    return diag2(p_, 1 - p_);
}

std::string_view to_string(Distance d) {
    switch (d) {
        case Distance::kRelativeEntropy:
            return "rel-ent";
        case Distance::kTraceDistance:
            return "trace";
    }
    return "?";
}

Distance parse_distance(std::string_view s) {
    if (s == "rel-ent" || s == "relative-entropy") {
        return Distance::kRelativeEntropy;
    }
    if (s == "trace" || s == "trace-distance") {
        return Distance::kTraceDistance;
    }
    throw std::invalid_argument("unknown distance '" + std::string(s) + "'");
}

void NcConfig::validate() const {
    if (!(order_inverse > 0) || !std::isfinite(order_inverse)) {
        throw std::invalid_argument("NcConfig: order_inverse must be positive");
    }
    if (coarse_grid_points < 3) {
        throw std::invalid_argument("NcConfig: coarse_grid_points must be at least 3");
    }
    if (refine_iterations < 1) {
        throw std::invalid_argument("NcConfig: refine_iterations must be positive");
    }
    if (!(boundary_eps > 0 && boundary_eps < 0.5)) {
        throw std::invalid_argument("NcConfig: boundary_eps must lie in (0, 0.5)");
    }
}

HermitianOperator density_from_bloch(const BlochState &s) {
    const double z = s.r() * std::cos(s.theta());
    const double t = s.r() * std::sin(s.theta());
    const complex off = 0.5 * t * std::polar(1.0, -s.phi_az());
    return HermitianOperator(2, {0.5 * (1 + z), off, std::conj(off), 0.5 * (1 - z)});
}

HermitianOperator jordan_half(const HermitianOperator &a, const HermitianOperator &b) {
    auto ab = multiply(a, b);
    auto ba = multiply(b, a);
    for (std::size_t i = 0; i < ab.size(); i++) {
        ab[i] = 0.5 * (ab[i] + ba[i]);
    }
    return HermitianOperator(a.dim(), std::move(ab));
}

OperatorPair nc_operator_pair(const HermitianOperator &rho, const HermitianOperator &sigma,
                              double alpha) {
    HermitianOperator left = power_map(abs_map(jordan_half(rho, sigma)), alpha);
    HermitianOperator right = abs_map(jordan_half(power_map(rho, alpha), power_map(sigma, alpha)));
    return {std::move(left), std::move(right)};
}

ExtendedReal nc_distance_at(const HermitianOperator &rho, double p, const NcConfig &cfg) {
    cfg.validate();
    IncoherentQubit sigma(p);
    return PairDistance(rho, cfg).at(sigma.p());
}

NcResult nc_coherence(const HermitianOperator &rho, const NcConfig &cfg) {
    cfg.validate();
    require_qubit_density(rho, "nc_coherence");

    PairDistance dist(rho, cfg);
    bool saw_infinite = false;
    auto objective = [&](double p) -> std::optional<double> {
        ExtendedReal d = dist.at(p);
        if (d.is_infinite()) {
            saw_infinite = true;
            return std::nullopt;
        }
        return d.value();
    };

    SearchOptions opts{cfg.coarse_grid_points, cfg.refine_iterations, 0.0};
    SearchResult best = maximize_scalar(objective, cfg.boundary_eps, 1 - cfg.boundary_eps, opts);
    if (!best.found) {
        throw std::runtime_error("nc_coherence: distance is infinite at every grid point");
    }
    return NcResult{best.value, best.x, saw_infinite};
}

HermitianOperator dephase(const HermitianOperator &rho) {
    std::vector<double> d(rho.dim());
    for (std::size_t i = 0; i < d.size(); i++) {
        d[i] = rho(i, i).real();
    }
    return HermitianOperator::diagonal(d);
}

ConventionalCoherence rel_ent_coherence(const HermitianOperator &rho) {
    require_qubit_density(rho, "rel_ent_coherence");
    ConventionalCoherence out;
    out.value = von_neumann_entropy(dephase(rho)) - von_neumann_entropy(rho);

    auto objective = [&](double p) -> std::optional<double> {
        ExtendedReal s = relative_entropy(rho, diag2(p, 1 - p));
        if (s.is_infinite()) {
            return std::nullopt;
        }
        return s.value();
    };
    SearchResult best = minimize_scalar(objective, 0.0, 1.0, SearchOptions{});
    if (!best.found) {
        throw std::runtime_error("rel_ent_coherence: relative entropy infinite on the whole grid");
    }
    out.argmin_p = best.x;
    out.optimizer_value = best.value;
    if (std::abs(out.optimizer_value - out.value) > kConventionalAgreement) {
        throw std::logic_error("rel_ent_coherence: closed form " + std::to_string(out.value) +
                               " and optimizer " + std::to_string(out.optimizer_value) +
                               " disagree");
    }
    return out;
}

double trace_dist_coherence(const HermitianOperator &rho) {
    require_qubit_density(rho, "trace_dist_coherence");
    auto objective = [&](double p) -> std::optional<double> {
        return trace_distance(rho, diag2(p, 1 - p));
    };
    return minimize_scalar(objective, 0.0, 1.0, SearchOptions{}).value;
}

}  // namespace ncoh
