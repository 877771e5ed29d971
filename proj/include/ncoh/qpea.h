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

// Success probability of phase estimation when the m auxiliary qubits are prepared with
// V_theta = [[cos(theta/2), sin(theta/2)], [sin(theta/2), -cos(theta/2)]] instead of Hadamards.
// The eigenphase is phi = a / 2^m + delta and the outcome of interest is a.

#ifndef NCOH_QPEA_H
#define NCOH_QPEA_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ncoh::qpea {

inline constexpr int kMaxSumQubits = 22;
inline constexpr int kMaxProductQubits = 63;
inline constexpr int kMaxCircuitQubits = 12;
inline constexpr double kDefaultDerivativeStep = 1e-4;
inline constexpr std::size_t kDefaultThetaGrid = 4001;
/// The direct sum switches to the product form at theta >= pi - kSumThetaGuard.
inline constexpr double kSumThetaGuard = 1e-6;

class QpeaParams {
   public:
    /// Throws std::invalid_argument unless m >= 1, theta in [0, pi], |delta| <= 2^-(m+1) and
    /// a in [0, 2^m - 1].
    QpeaParams(int m, double theta, double delta, std::uint64_t a = 0);

    int m() const {
        return m_;
    }
    double theta() const {
        return theta_;
    }
    double delta() const {
        return delta_;
    }
    std::uint64_t a() const {
        return a_;
    }
    /// a / 2^m + delta, wrapped into [0, 1).
    double phi() const;

    QpeaParams with_theta(double theta) const {
        return QpeaParams(m_, theta, delta_, a_);
    }

   private:
    int m_;
    double theta_;
    double delta_;
    std::uint64_t a_;
};

struct ProbCurve {
    std::vector<double> thetas;
    std::vector<double> probs;
    /// d p / d theta, per radian.
    std::vector<double> derivs;
};

int popcount(std::uint64_t y);

/// The 2^m-term sum. Throws std::out_of_range when m > kMaxSumQubits.
double success_prob_sum(const QpeaParams &q);

/// prod_k (1 + sin(theta) cos(2 pi delta 2^k)) / 2, O(m).
double success_prob_product(const QpeaParams &q);

/// State after V_theta on every auxiliary qubit, phase kickback of the controlled powers of U,
/// and a gate-level inverse QFT. Throws std::out_of_range when m > kMaxCircuitQubits.
std::vector<std::complex<double>> circuit_output_state(int m, double theta, double phi);

/// |<a| output>|^2 from circuit_output_state.
double circuit_oracle(int m, double theta, double phi, std::uint64_t a);

/// Central difference of the product form. Requires theta +- h inside [0, pi].
double success_prob_derivative(const QpeaParams &q, double h = kDefaultDerivativeStep);

/// Offsets used for the figures: 2^-10 for m <= 7, 2^-20 for m <= 17, 2^-30 for m <= 25.
/// Throws std::out_of_range outside 2 <= m <= 25.
double default_delta(int m);

/// n interior points pi (k + 1) / (n + 1) of (0, pi).
std::vector<double> theta_grid(std::size_t n = kDefaultThetaGrid);

/// Grid argmax of the product form over (0, pi) refined to a 1e-6 bracket.
double theta_argmax(int m, double delta, std::size_t grid_points = kDefaultThetaGrid);

/// Same search for the minimum.
double theta_argmin(int m, double delta, std::size_t grid_points = kDefaultThetaGrid);

/// Argmax of the derivative on the rising segment (0, theta_argmax].
double derivative_argmax(int m, double delta, std::size_t grid_points = kDefaultThetaGrid);

struct ThetaExtremum {
    double theta = 0;
    double value = 0;
};

/// Extremum searches over [lo, hi] using an n-point uniform grid (endpoints included) and
/// bracket refinement to 1e-6. The derivative search covers [lo, argmax of p on [lo, hi]].
ThetaExtremum prob_max_in(int m, double delta, double lo, double hi, std::size_t n);
ThetaExtremum prob_min_in(int m, double delta, double lo, double hi, std::size_t n);
ThetaExtremum derivative_max_in(int m, double delta, double lo, double hi, std::size_t n,
                                double h = kDefaultDerivativeStep);

ProbCurve prob_curve(int m, double delta, std::span<const double> thetas,
                     double h = kDefaultDerivativeStep);

}  // namespace ncoh::qpea

#endif
