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

#ifndef NCOH_HERMITIAN_H
#define NCOH_HERMITIAN_H

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncoh {

using complex = std::complex<double>;

/// Maximum entry-wise |H_ij - conj(H_ji)| accepted when building a HermitianOperator.
inline constexpr double kHermitianTolerance = 1e-12;
/// Eigenvalues in [-kNegativeClip, 0) are roundoff and are treated as zero.
inline constexpr double kNegativeClip = 1e-10;
/// Relative eigenvalue magnitude (w.r.t. the spectral radius) below which power maps see zero.
inline constexpr double kSpectralDust = 1e-13;
/// Eigenvalue threshold for the support test of the relative entropy.
inline constexpr double kSupportTolerance = 1e-10;
/// Floor substituted for log2(0) inside the relative entropy.
inline constexpr double kLogFloor = 1e-300;
/// Off-diagonal norm at which the iterative eigensolver stops.
inline constexpr double kJacobiTolerance = 1e-13;
inline constexpr int kMaxJacobiSweeps = 100;
/// Eigenvalue gap under which a 2x2 operator is considered a multiple of the identity.
inline constexpr double kDegenerateGap = 1e-14;

/// Thrown when the iterative eigensolver exhausts its sweep budget.
class ConvergenceError : public std::runtime_error {
   public:
    ConvergenceError(const std::string &what, double residual)
        : std::runtime_error(what), residual_(residual) {
    }
    double residual() const {
        return residual_;
    }

   private:
    double residual_;
};

/// Thrown when an operator that must be positive semidefinite has a clearly negative eigenvalue.
class NotPsdError : public std::domain_error {
   public:
    NotPsdError(const std::string &what, double min_eigenvalue)
        : std::domain_error(what), min_eigenvalue_(min_eigenvalue) {
    }
    double min_eigenvalue() const {
        return min_eigenvalue_;
    }

   private:
    double min_eigenvalue_;
};

/// A real number or +infinity. Finite values are never NaN.
class ExtendedReal {
   public:
    static ExtendedReal finite(double v);
    static ExtendedReal infinity() {
        return ExtendedReal(true, 0.0);
    }

    bool is_infinite() const {
        return infinite_;
    }
    bool is_finite() const {
        return !infinite_;
    }
    /// Throws std::logic_error when infinite.
    double value() const;
    /// +inf as a double when infinite.
    double as_double() const;

    bool operator==(const ExtendedReal &other) const = default;

   private:
    ExtendedReal(bool inf, double v) : infinite_(inf), value_(v) {
    }
    bool infinite_;
    double value_;
};

struct SpectralDecomposition;

/// Dense complex Hermitian matrix, stored row-major.
///
/// Construction symmetrizes the input through (A + A^dagger) / 2 after checking that it was
/// Hermitian to within kHermitianTolerance; the deviation seen before symmetrization is kept.
/// Operators produced by spectral maps carry their eigendecomposition so that later spectral
/// operations do not diagonalize them again.
class HermitianOperator {
   public:
    HermitianOperator(std::size_t dim, std::vector<complex> entries);

    static HermitianOperator identity(std::size_t dim);
    static HermitianOperator zero(std::size_t dim);
    static HermitianOperator diagonal(std::span<const double> diag);
    /// Builds V diag(eigenvalues) V^dagger and keeps the decomposition.
    static HermitianOperator from_spectrum(const SpectralDecomposition &spectrum);

    std::size_t dim() const {
        return dim_;
    }
    complex operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    std::span<const complex> entries() const {
        return entries_;
    }
    double symmetrization_deviation() const {
        return deviation_;
    }
    double trace() const;
    /// Largest entry-wise modulus.
    double max_abs() const;
    /// Frobenius norm of the off-diagonal part.
    double off_diagonal_norm() const;

    /// Decomposition attached at construction, if any.
    const SpectralDecomposition *cached_spectrum() const {
        return spectrum_.get();
    }

    HermitianOperator operator+(const HermitianOperator &other) const;
    HermitianOperator operator-(const HermitianOperator &other) const;
    HermitianOperator operator*(double scale) const;

   private:
    HermitianOperator() = default;

    std::size_t dim_ = 0;
    std::vector<complex> entries_;
    double deviation_ = 0.0;
    std::shared_ptr<const SpectralDecomposition> spectrum_;
};

/// Eigenvalues sorted descending; eigenvector k is column k of the row-major `vectors`.
struct SpectralDecomposition {
    std::size_t dim = 0;
    std::vector<double> values;
    std::vector<complex> vectors;

    complex vector_entry(std::size_t row, std::size_t k) const {
        return vectors[row * dim + k];
    }
};

/// Plain (not necessarily Hermitian) product of two Hermitian operators, row-major.
std::vector<complex> multiply(const HermitianOperator &a, const HermitianOperator &b);

/// Maximum entry-wise |A - B|. Throws std::invalid_argument on dimension mismatch.
double max_abs_difference(const HermitianOperator &a, const HermitianOperator &b);

/// Max-entry modulus of the commutator AB - BA.
double commutator_norm(const HermitianOperator &a, const HermitianOperator &b);

/// Closed form for dim <= 2, cyclic Jacobi otherwise. The first component of each eigenvector
/// with modulus above 1e-12 is made real and positive.
SpectralDecomposition eig_herm(const HermitianOperator &h);

/// Cyclic Jacobi with an explicit sweep budget, for any dimension. Throws ConvergenceError.
SpectralDecomposition eig_jacobi_limited(const HermitianOperator &h, int max_sweeps);

using RealMap = std::function<double(double)>;

/// V f(Lambda) V^dagger with f applied verbatim to every eigenvalue.
HermitianOperator spectral_map(const HermitianOperator &h, const RealMap &f);

/// |H|.
HermitianOperator abs_map(const HermitianOperator &h);

/// H^alpha for positive semidefinite H (alpha > 0).
///
/// Eigenvalues in [-kNegativeClip, 0) and those whose magnitude is below
/// kSpectralDust times the spectral radius are set to zero before exponentiation; more negative
/// eigenvalues raise NotPsdError.
HermitianOperator power_map(const HermitianOperator &h, double alpha);

/// log2 H for positive definite H. Any eigenvalue <= 0 raises std::domain_error.
HermitianOperator log2_map(const HermitianOperator &h);

/// tr(A log2 A - A log2 B) for positive semidefinite A, B (unit trace not required).
///
/// Returns +infinity when an eigenvector of A with eigenvalue above kSupportTolerance has squared
/// overlap above kSupportTolerance with the numerical null space of B.
ExtendedReal relative_entropy(const HermitianOperator &a, const HermitianOperator &b);

/// (1/2) tr|A - B|.
double trace_distance(const HermitianOperator &a, const HermitianOperator &b);

/// Von Neumann entropy in bits of a positive semidefinite operator.
double von_neumann_entropy(const HermitianOperator &rho);

}  // namespace ncoh

#endif
