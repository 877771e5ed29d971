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

#include "ncoh/qpea.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ncoh/scalar_search.h"

namespace ncoh::qpea {

namespace {

using std::numbers::pi;
using cplx = std::complex<double>;

// Fractional part of x mapped to [-1/2, 1/2]; keeps 2 pi x small before cos/sin.
double reduce_turns(double x) {
    return x - std::nearbyint(x);
}

cplx turn_phase(double turns) {
    return std::polar(1.0, 2 * pi * reduce_turns(turns));
}

constexpr double kExtremumBracket = 1e-6;
constexpr int kExtremumIterations = 64;

}  // namespace

QpeaParams::QpeaParams(int m, double theta, double delta, std::uint64_t a)
    : m_(m), theta_(theta), delta_(delta), a_(a) {
    if (m < 1 || m > kMaxProductQubits) {
        throw std::invalid_argument("QpeaParams: m must lie in [1, " +
                                    std::to_string(kMaxProductQubits) + "], got " +
                                    std::to_string(m));
    }
    if (!(theta >= 0 && theta <= pi)) {
        throw std::invalid_argument("QpeaParams: theta must lie in [0, pi], got " +
                                    std::to_string(theta));
    }
    if (!(std::abs(delta) <= std::ldexp(1.0, -(m + 1)))) {
        throw std::invalid_argument("QpeaParams: |delta| must not exceed 2^-(m+1)");
    }
    if (a >> m != 0) {
        throw std::invalid_argument("QpeaParams: a must lie in [0, 2^m - 1]");
    }
}

double QpeaParams::phi() const {
    double phi = std::ldexp(static_cast<double>(a_), -m_) + delta_;
    phi -= std::floor(phi);
    return phi;
}

int popcount(std::uint64_t y) {
    return std::popcount(y);
}

double success_prob_sum(const QpeaParams &q) {
    if (q.m() > kMaxSumQubits) {
        throw std::out_of_range("success_prob_sum: m = " + std::to_string(q.m()) +
                                " exceeds the direct-sum limit of " +
                                std::to_string(kMaxSumQubits));
    }
    if (q.theta() >= pi - kSumThetaGuard) {
        return success_prob_product(q);
    }
    const int m = q.m();
    const double t = std::tan(q.theta() / 2);
    std::vector<double> t_pow(m + 1);
    for (int k = 0; k <= m; k++) {
        t_pow[k] = std::pow(t, k);
    }
    const std::uint64_t n = std::uint64_t{1} << m;
    cplx sum = 0;
    for (std::uint64_t y = 0; y < n; y++) {
        sum += t_pow[popcount(y)] * turn_phase(q.delta() * static_cast<double>(y));
    }
    const double prefactor = std::pow(std::cos(q.theta() / 2), m) / std::sqrt(std::ldexp(1.0, m));
    return std::norm(prefactor * sum);
}

double success_prob_product(const QpeaParams &q) {
    const double s = std::sin(q.theta());
    double p = 1;
    for (int k = 0; k < q.m(); k++) {
        p *= 0.5 * (1 + s * std::cos(2 * pi * reduce_turns(std::ldexp(q.delta(), k))));
    }
    return p;
}

std::vector<cplx> circuit_output_state(int m, double theta, double phi) {
    if (m < 1 || m > kMaxCircuitQubits) {
        throw std::out_of_range("circuit_output_state: m = " + std::to_string(m) +
                                " outside [1, " + std::to_string(kMaxCircuitQubits) + "]");
    }
    const std::size_t n = std::size_t{1} << m;
    std::vector<cplx> psi(n, 0.0);
    psi[0] = 1;

    auto apply_1q = [&](int qubit, cplx u00, cplx u01, cplx u10, cplx u11) {
        const std::size_t bit = std::size_t{1} << qubit;
        for (std::size_t i = 0; i < n; i++) {
            if (i & bit) {
                continue;
            }
            cplx a0 = psi[i], a1 = psi[i | bit];
            psi[i] = u00 * a0 + u01 * a1;
            psi[i | bit] = u10 * a0 + u11 * a1;
        }
    };
    auto controlled_phase = [&](int q1, int q2, cplx phase) {
        const std::size_t mask = (std::size_t{1} << q1) | (std::size_t{1} << q2);
        for (std::size_t i = 0; i < n; i++) {
            if ((i & mask) == mask) {
                psi[i] *= phase;
            }
        }
    };

    // V_theta on each auxiliary qubit.
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    for (int j = 0; j < m; j++) {
        apply_1q(j, c, s, s, -c);
    }

    // Controlled-U^(2^j) on an eigenstate kicks back e^{2 pi i phi 2^j} onto qubit j.
    for (int j = 0; j < m; j++) {
        const cplx kick = turn_phase(std::ldexp(phi, j));
        const std::size_t bit = std::size_t{1} << j;
        for (std::size_t i = 0; i < n; i++) {
            if (i & bit) {
                psi[i] *= kick;
            }
        }
    }

    // Inverse QFT: bit-reversal swaps, then the QFT gate sequence in reverse with conjugated
    // phases. Qubit j carries weight 2^j of the basis index.
    for (int j = 0; j < m / 2; j++) {
        const std::size_t b1 = std::size_t{1} << j, b2 = std::size_t{1} << (m - 1 - j);
        for (std::size_t i = 0; i < n; i++) {
            if ((i & b1) && !(i & b2)) {
                std::swap(psi[i], psi[(i ^ b1) | b2]);
            }
        }
    }
    const double h = 1 / std::numbers::sqrt2;
    for (int j = 0; j < m; j++) {
        for (int k = 0; k < j; k++) {
            controlled_phase(k, j, turn_phase(-std::ldexp(1.0, -(j - k + 1))));
        }
        apply_1q(j, h, h, h, -h);
    }
    return psi;
}

double circuit_oracle(int m, double theta, double phi, std::uint64_t a) {
    if (m >= 1 && m <= kMaxCircuitQubits && a >> m != 0) {
        throw std::invalid_argument("circuit_oracle: outcome index out of range");
    }
    return std::norm(circuit_output_state(m, theta, phi)[a]);
}

double success_prob_derivative(const QpeaParams &q, double h) {
    if (!(h > 0) || q.theta() - h < 0 || q.theta() + h > pi) {
        throw std::invalid_argument("success_prob_derivative: theta +- h must stay inside [0, pi]");
    }
    const double up = success_prob_product(q.with_theta(q.theta() + h));
    const double down = success_prob_product(q.with_theta(q.theta() - h));
    return (up - down) / (2 * h);
}

double default_delta(int m) {
    if (m >= 2 && m <= 7) {
        return std::ldexp(1.0, -10);
    }
    if (m > 7 && m <= 17) {
        return std::ldexp(1.0, -20);
    }
    if (m > 17 && m <= 25) {
        return std::ldexp(1.0, -30);
    }
    throw std::out_of_range("default_delta: no scheduled delta for m = " + std::to_string(m) +
                            "; pass delta explicitly");
}

std::vector<double> theta_grid(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("theta_grid: need at least 2 points");
    }
    const double step = pi / static_cast<double>(n + 1);
    return linspace(step, step * static_cast<double>(n), n);
}

ThetaExtremum prob_max_in(int m, double delta, double lo, double hi, std::size_t n) {
    QpeaParams base(m, pi / 2, delta);
    auto objective = [&](double theta) -> std::optional<double> {
        return success_prob_product(base.with_theta(theta));
    };
    SearchResult r =
        maximize_scalar(objective, lo, hi, SearchOptions{n, kExtremumIterations, kExtremumBracket});
    return {r.x, r.value};
}

ThetaExtremum prob_min_in(int m, double delta, double lo, double hi, std::size_t n) {
    QpeaParams base(m, pi / 2, delta);
    auto objective = [&](double theta) -> std::optional<double> {
        return success_prob_product(base.with_theta(theta));
    };
    SearchResult r =
        minimize_scalar(objective, lo, hi, SearchOptions{n, kExtremumIterations, kExtremumBracket});
    return {r.x, r.value};
}

ThetaExtremum derivative_max_in(int m, double delta, double lo, double hi, std::size_t n,
                                double h) {
    const double peak = prob_max_in(m, delta, lo, hi, n).theta;
    if (!(peak > lo)) {
        QpeaParams q(m, lo, delta);
        return {lo, success_prob_derivative(q, h)};
    }
    QpeaParams base(m, pi / 2, delta);
    auto objective = [&](double theta) -> std::optional<double> {
        return success_prob_derivative(base.with_theta(theta), h);
    };
    SearchResult r = maximize_scalar(objective, lo, peak,
                                     SearchOptions{n, kExtremumIterations, kExtremumBracket});
    return {r.x, r.value};
}

double theta_argmax(int m, double delta, std::size_t grid_points) {
    const auto grid = theta_grid(grid_points);
    return prob_max_in(m, delta, grid.front(), grid.back(), grid_points).theta;
}

double theta_argmin(int m, double delta, std::size_t grid_points) {
    const auto grid = theta_grid(grid_points);
    return prob_min_in(m, delta, grid.front(), grid.back(), grid_points).theta;
}

double derivative_argmax(int m, double delta, std::size_t grid_points) {
    const auto grid = theta_grid(grid_points);
    return derivative_max_in(m, delta, grid.front(), grid.back(), grid_points).theta;
}

ProbCurve prob_curve(int m, double delta, std::span<const double> thetas, double h) {
    ProbCurve curve;
    curve.thetas.assign(thetas.begin(), thetas.end());
    curve.probs.reserve(thetas.size());
    curve.derivs.reserve(thetas.size());
    QpeaParams base(m, pi / 2, delta);
    for (double theta : thetas) {
        QpeaParams q = base.with_theta(theta);
        curve.probs.push_back(success_prob_product(q));
        curve.derivs.push_back(success_prob_derivative(q, h));
    }
    return curve;
}

}  // namespace ncoh::qpea
