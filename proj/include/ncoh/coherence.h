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

#ifndef NCOH_COHERENCE_H
#define NCOH_COHERENCE_H

#include <cstddef>
#include <string>
#include <string_view>

#include "ncoh/hermitian.h"

namespace ncoh {

/// Qubit state on the Bloch ball: radius r, zenith angle theta, azimuth phi_az.
class BlochState {
   public:
    BlochState(double r, double theta, double phi_az = 0.0);

    double r() const {
        return r_;
    }
    double theta() const {
        return theta_;
    }
    double phi_az() const {
        return phi_az_;
    }

   private:
    double r_;
    double theta_;
    double phi_az_;
};

/// diag(p, 1 - p) in the computational basis.
class IncoherentQubit {
   public:
    explicit IncoherentQubit(double p);

    double p() const {
        return p_;
    }
    HermitianOperator matrix() const;

   private:
    double p_;
};

enum class Distance { kRelativeEntropy, kTraceDistance };

std::string_view to_string(Distance d);
/// Accepts "rel-ent" / "relative-entropy" and "trace" / "trace-distance".
Distance parse_distance(std::string_view s);

struct NcConfig {
    /// alpha = 1/n for the order-n measure; n = 2 is the usual one.
    double order_inverse = 0.5;
    Distance distance = Distance::kRelativeEntropy;
    std::size_t coarse_grid_points = 2001;
    int refine_iterations = 60;
    /// The incoherent parameter p is searched on [boundary_eps, 1 - boundary_eps].
    double boundary_eps = 1e-4;

    /// Throws std::invalid_argument when a field is outside its domain.
    void validate() const;
};

struct NcResult {
    double value = 0;
    double argmax_p = 0;
    /// Some evaluated p gave an infinite distance; those points were skipped.
    bool infinite_encountered = false;
};

struct OperatorPair {
    /// (|rho sigma + sigma rho| / 2)^alpha
    HermitianOperator left;
    /// |rho^alpha sigma^alpha + sigma^alpha rho^alpha| / 2
    HermitianOperator right;
};

HermitianOperator density_from_bloch(const BlochState &s);

/// (AB + BA) / 2.
HermitianOperator jordan_half(const HermitianOperator &a, const HermitianOperator &b);

OperatorPair nc_operator_pair(const HermitianOperator &rho, const HermitianOperator &sigma,
                              double alpha);

/// Distance D(left, right) at sigma = diag(p, 1 - p), in that argument order.
ExtendedReal nc_distance_at(const HermitianOperator &rho, double p, const NcConfig &cfg);

/// Maximum of nc_distance_at over p. `rho` must be a qubit density operator.
NcResult nc_coherence(const HermitianOperator &rho, const NcConfig &cfg = {});

struct ConventionalCoherence {
    /// S(dephased rho) - S(rho), in bits.
    double value = 0;
    /// Location of the optimizer's minimum of S(rho || diag(p, 1 - p)).
    double argmin_p = 0;
    double optimizer_value = 0;
};

/// Maximum allowed gap between the closed form and the optimizer in rel_ent_coherence.
inline constexpr double kConventionalAgreement = 1e-6;

/// Relative entropy of coherence, computed in closed form and by minimizing over p. Throws
/// std::logic_error if the two disagree by more than kConventionalAgreement.
ConventionalCoherence rel_ent_coherence(const HermitianOperator &rho);

/// min over p of the trace distance between rho and diag(p, 1 - p).
double trace_dist_coherence(const HermitianOperator &rho);

/// Diagonal part of rho in the computational basis.
HermitianOperator dephase(const HermitianOperator &rho);

}  // namespace ncoh

#endif
