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

#include "ncoh/hermitian.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ncoh {

namespace {


void require_same_dim(const HermitianOperator &a, const HermitianOperator &b, const char *op) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument(
            std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
            std::to_string(b.dim()) + ")");
    }
}

// Rotates an eigenvector so that its first non-negligible component is real and positive.
void fix_phase(std::span<complex> v) {
    for (auto c : v) {
        double mag = std::abs(c);
        if (mag > 1e-12) {
            complex rot = std::conj(c) / mag;
            for (auto &x : v) {
                x *= rot;
            }
            return;
        }
    }
}

SpectralDecomposition eig_2x2(const HermitianOperator &h) {
    double a = h(0, 0).real();
    double d = h(1, 1).real();
    complex b = h(0, 1);
    double mean = 0.5 * (a + d);
    double rad = std::hypot(0.5 * (a - d), std::abs(b));

    SpectralDecomposition out;
    out.dim = 2;
    out.values = {mean + rad, mean - rad};
    // The eigenvalue of smaller magnitude loses relative precision in mean -+ rad; take it from
    // the determinant instead.
    const double det = std::fma(a, d, -std::norm(b));
    if (mean > 0 && out.values[0] != 0) {
        out.values[1] = std::min(out.values[0], det / out.values[0]);
    } else if (mean < 0 && out.values[1] != 0) {
        out.values[0] = std::max(out.values[1], det / out.values[1]);
    }
    if (2 * rad < kDegenerateGap) {
        out.vectors = {1, 0, 0, 1};
        return out;
    }

    double top = out.values[0];
    complex u0 = b, u1 = top - a;
    complex w0 = top - d, w1 = std::conj(b);
    double nu = std::norm(u0) + std::norm(u1);
    double nw = std::norm(w0) + std::norm(w1);
    complex v0, v1;
    if (nu >= nw) {
        double s = std::sqrt(nu);
        v0 = u0 / s;
        v1 = u1 / s;
    } else {
        double s = std::sqrt(nw);
        v0 = w0 / s;
        v1 = w1 / s;
    }
    complex first[2] = {v0, v1};
    fix_phase(first);
    complex second[2] = {-std::conj(first[1]), std::conj(first[0])};
    fix_phase(second);
    // Row-major, eigenvector k in column k.
    out.vectors = {first[0], second[0], first[1], second[1]};
    return out;
}

SpectralDecomposition eig_jacobi(const HermitianOperator &h, int max_sweeps) {
    const std::size_t n = h.dim();
    std::vector<complex> a(h.entries().begin(), h.entries().end());
    std::vector<complex> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; i++) {
        v[i * n + i] = 1.0;
    }

    double frob = 0;
    for (auto x : a) {
        frob += std::norm(x);
    }
    const double tol = kJacobiTolerance * std::max(1.0, std::sqrt(frob));

    auto off_norm = [&]() {
        double s = 0;
        for (std::size_t i = 0; i < n; i++) {
            for (std::size_t j = 0; j < n; j++) {
                if (i != j) {
                    s += std::norm(a[i * n + j]);
                }
            }
        }
        return std::sqrt(s);
    };

    double residual = off_norm();
    int sweep = 0;
    while (residual > tol) {
        if (sweep++ >= max_sweeps) {
            throw ConvergenceError(
                "eig_herm: Jacobi iteration did not converge, off-diagonal norm " +
                    std::to_string(residual),
                residual);
        }
        for (std::size_t p = 0; p + 1 < n; p++) {
            for (std::size_t q = p + 1; q < n; q++) {
                complex apq = a[p * n + q];
                double mag = std::abs(apq);
                if (mag == 0) {
                    continue;
                }
                complex phase = std::conj(apq) / mag;
                double theta = 0.5 * std::atan2(2 * mag, a[p * n + p].real() - a[q * n + q].real());
                double c = std::cos(theta);
                double s = std::sin(theta);
                // Block of the unitary acting on coordinates (p, q).
                complex w00 = c, w01 = -s, w10 = s * phase, w11 = c * phase;
                for (std::size_t k = 0; k < n; k++) {
                    complex kp = a[k * n + p], kq = a[k * n + q];
                    a[k * n + p] = kp * w00 + kq * w10;
                    a[k * n + q] = kp * w01 + kq * w11;
                    complex vp = v[k * n + p], vq = v[k * n + q];
                    v[k * n + p] = vp * w00 + vq * w10;
                    v[k * n + q] = vp * w01 + vq * w11;
                }
                for (std::size_t k = 0; k < n; k++) {
                    complex pk = a[p * n + k], qk = a[q * n + k];
                    a[p * n + k] = std::conj(w00) * pk + std::conj(w10) * qk;
                    a[q * n + k] = std::conj(w01) * pk + std::conj(w11) * qk;
                }
                a[p * n + q] = 0;
                a[q * n + p] = 0;
                a[p * n + p] = a[p * n + p].real();
                a[q * n + q] = a[q * n + q].real();
            }
        }
        residual = off_norm();
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a[x * n + x].real() > a[y * n + y].real();
    });

    SpectralDecomposition out;
    out.dim = n;
    out.values.resize(n);
    out.vectors.resize(n * n);
    std::vector<complex> col(n);
    for (std::size_t k = 0; k < n; k++) {
        std::size_t src = order[k];
        out.values[k] = a[src * n + src].real();
        for (std::size_t r = 0; r < n; r++) {
            col[r] = v[r * n + src];
        }
        fix_phase(col);
        for (std::size_t r = 0; r < n; r++) {
            out.vectors[r * n + k] = col[r];
        }
    }
    return out;
}

// Applies the PSD clip used by power maps and entropies; throws on clearly negative eigenvalues.
std::vector<double> clipped_spectrum(const SpectralDecomposition &s, const char *op) {
    std::vector<double> out = s.values;
    for (double &x : out) {
        if (x < -kNegativeClip) {
            throw NotPsdError(std::string(op) + ": operator is not positive semidefinite (eigenvalue " +
                                  std::to_string(x) + ")",
                              x);
        }
        if (x < 0) {
            x = 0;
        }
    }
    return out;
}

}  // namespace

ExtendedReal ExtendedReal::finite(double v) {
    if (std::isnan(v)) {
        throw std::invalid_argument("ExtendedReal: NaN is not a valid value");
    }
    if (std::isinf(v)) {
        if (v > 0) {
            return infinity();
        }
        throw std::invalid_argument("ExtendedReal: -inf is not a valid value");
    }
    return ExtendedReal(false, v);
}

double ExtendedReal::value() const {
    if (infinite_) {
        throw std::logic_error("ExtendedReal: value() called on +infinity");
    }
    return value_;
}

double ExtendedReal::as_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

HermitianOperator::HermitianOperator(std::size_t dim, std::vector<complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ == 0) {
        throw std::invalid_argument("HermitianOperator: dim must be at least 1");
    }
    if (entries_.size() != dim_ * dim_) {
        throw std::invalid_argument("HermitianOperator: expected " + std::to_string(dim_ * dim_) +
                                    " entries, got " + std::to_string(entries_.size()));
    }
    double dev = 0;
    for (std::size_t i = 0; i < dim_; i++) {
        for (std::size_t j = i; j < dim_; j++) {
            complex x = entries_[i * dim_ + j];
            complex y = entries_[j * dim_ + i];
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
                throw std::invalid_argument("HermitianOperator: non-finite entry");
            }
            dev = std::max(dev, std::abs(x - std::conj(y)));
            complex sym = 0.5 * (x + std::conj(y));
            entries_[i * dim_ + j] = sym;
            entries_[j * dim_ + i] = std::conj(sym);
        }
    }
    if (dev > kHermitianTolerance) {
        throw std::invalid_argument("HermitianOperator: input is not Hermitian (deviation " +
                                    std::to_string(dev) + ")");
    }
    deviation_ = dev;
}

HermitianOperator HermitianOperator::identity(std::size_t dim) {
    std::vector<double> ones(dim, 1.0);
    return diagonal(ones);
}

HermitianOperator HermitianOperator::zero(std::size_t dim) {
    return HermitianOperator(dim, std::vector<complex>(dim * dim, 0.0));
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> diag) {
    const std::size_t n = diag.size();
    std::vector<complex> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; i++) {
        e[i * n + i] = diag[i];
    }
    return HermitianOperator(n, std::move(e));
}

HermitianOperator HermitianOperator::from_spectrum(const SpectralDecomposition &spectrum) {
    const std::size_t n = spectrum.dim;
    if (n == 0 || spectrum.values.size() != n || spectrum.vectors.size() != n * n) {
        throw std::invalid_argument("from_spectrum: malformed decomposition");
    }

    auto sorted = std::make_shared<SpectralDecomposition>();
    sorted->dim = n;
    sorted->values.resize(n);
    sorted->vectors.resize(n * n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return spectrum.values[x] > spectrum.values[y];
    });
    for (std::size_t k = 0; k < n; k++) {
        sorted->values[k] = spectrum.values[order[k]];
        for (std::size_t r = 0; r < n; r++) {
            sorted->vectors[r * n + k] = spectrum.vector_entry(r, order[k]);
        }
    }

    HermitianOperator out;
    out.dim_ = n;
    out.entries_.assign(n * n, 0.0);
    for (std::size_t k = 0; k < n; k++) {
        double lambda = sorted->values[k];
        if (lambda == 0) {
            continue;
        }
        for (std::size_t i = 0; i < n; i++) {
            complex vi = sorted->vector_entry(i, k) * lambda;
            for (std::size_t j = 0; j < n; j++) {
                out.entries_[i * n + j] += vi * std::conj(sorted->vector_entry(j, k));
            }
        }
    }
    for (std::size_t i = 0; i < n; i++) {
        out.entries_[i * n + i] = out.entries_[i * n + i].real();
        for (std::size_t j = i + 1; j < n; j++) {
            complex sym = 0.5 * (out.entries_[i * n + j] + std::conj(out.entries_[j * n + i]));
            out.entries_[i * n + j] = sym;
            out.entries_[j * n + i] = std::conj(sym);
        }
    }
    out.spectrum_ = std::move(sorted);
    return out;
}

double HermitianOperator::trace() const {
    double t = 0;
    for (std::size_t i = 0; i < dim_; i++) {
        t += entries_[i * dim_ + i].real();
    }
    return t;
}

double HermitianOperator::max_abs() const {
    double m = 0;
    for (auto x : entries_) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double HermitianOperator::off_diagonal_norm() const {
    double s = 0;
    for (std::size_t i = 0; i < dim_; i++) {
        for (std::size_t j = 0; j < dim_; j++) {
            if (i != j) {
                s += std::norm(entries_[i * dim_ + j]);
            }
        }
    }
    return std::sqrt(s);
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator &other) const {
    require_same_dim(*this, other, "operator+");
    std::vector<complex> e(entries_);
    for (std::size_t i = 0; i < e.size(); i++) {
        e[i] += other.entries_[i];
    }
    return HermitianOperator(dim_, std::move(e));
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator &other) const {
    require_same_dim(*this, other, "operator-");
    std::vector<complex> e(entries_);
    for (std::size_t i = 0; i < e.size(); i++) {
        e[i] -= other.entries_[i];
    }
    return HermitianOperator(dim_, std::move(e));
}

HermitianOperator HermitianOperator::operator*(double scale) const {
    std::vector<complex> e(entries_);
    for (auto &x : e) {
        x *= scale;
    }
    return HermitianOperator(dim_, std::move(e));
}

std::vector<complex> multiply(const HermitianOperator &a, const HermitianOperator &b) {
    require_same_dim(a, b, "multiply");
    const std::size_t n = a.dim();
    std::vector<complex> out(n * n, 0.0);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t k = 0; k < n; k++) {
            complex aik = a(i, k);
            for (std::size_t j = 0; j < n; j++) {
                out[i * n + j] += aik * b(k, j);
            }
        }
    }
    return out;
}

double max_abs_difference(const HermitianOperator &a, const HermitianOperator &b) {
    require_same_dim(a, b, "max_abs_difference");
    double m = 0;
    for (std::size_t i = 0; i < a.entries().size(); i++) {
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return m;
}

double commutator_norm(const HermitianOperator &a, const HermitianOperator &b) {
    auto ab = multiply(a, b);
    auto ba = multiply(b, a);
    double m = 0;
    for (std::size_t i = 0; i < ab.size(); i++) {
        m = std::max(m, std::abs(ab[i] - ba[i]));
    }
    return m;
}

SpectralDecomposition eig_herm(const HermitianOperator &h) {
    if (const auto *cached = h.cached_spectrum()) {
        return *cached;
    }
    if (h.dim() == 1) {
        return SpectralDecomposition{1, {h(0, 0).real()}, {1.0}};
    }
    if (h.dim() == 2) {
        return eig_2x2(h);
    }
    return eig_jacobi(h, kMaxJacobiSweeps);
}

SpectralDecomposition eig_jacobi_limited(const HermitianOperator &h, int max_sweeps) {
    return eig_jacobi(h, max_sweeps);
}

HermitianOperator spectral_map(const HermitianOperator &h, const RealMap &f) {
    SpectralDecomposition s = eig_herm(h);
    for (double &x : s.values) {
        x = f(x);
    }
    return HermitianOperator::from_spectrum(s);
}

HermitianOperator abs_map(const HermitianOperator &h) {
    return spectral_map(h, [](double x) { return std::abs(x); });
}

HermitianOperator power_map(const HermitianOperator &h, double alpha) {
    if (!(alpha > 0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("power_map: exponent must be positive, got " +
                                    std::to_string(alpha));
    }
    SpectralDecomposition s = eig_herm(h);
    double radius = 0;
    for (double x : s.values) {
        radius = std::max(radius, std::abs(x));
    }
    s.values = clipped_spectrum(s, "power_map");
    const double dust = kSpectralDust * radius;
    for (double &x : s.values) {
        x = (x <= dust) ? 0.0 : std::pow(x, alpha);
    }
    return HermitianOperator::from_spectrum(s);
}

HermitianOperator log2_map(const HermitianOperator &h) {
    SpectralDecomposition s = eig_herm(h);
    for (double &x : s.values) {
        if (!(x > 0)) {
            throw std::domain_error("log2_map: operator has a non-positive eigenvalue " +
                                    std::to_string(x));
        }
        x = std::log2(x);
    }
    return HermitianOperator::from_spectrum(s);
}

ExtendedReal relative_entropy(const HermitianOperator &a, const HermitianOperator &b) {
    require_same_dim(a, b, "relative_entropy");
    const std::size_t n = a.dim();
    SpectralDecomposition ea = eig_herm(a);
    SpectralDecomposition eb = eig_herm(b);
    std::vector<double> la = clipped_spectrum(ea, "relative_entropy");
    std::vector<double> lb = clipped_spectrum(eb, "relative_entropy");

    double self_term = 0;
    for (double x : la) {
        if (x > 0) {
            self_term += x * std::log2(x);
        }
    }

    double cross_term = 0;
    for (std::size_t i = 0; i < n; i++) {
        if (la[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < n; j++) {
            complex ov = 0;
            for (std::size_t r = 0; r < n; r++) {
                ov += std::conj(eb.vector_entry(r, j)) * ea.vector_entry(r, i);
            }
            double weight = std::norm(ov);
            if (la[i] > kSupportTolerance && lb[j] <= kSupportTolerance &&
                weight > kSupportTolerance) {
                return ExtendedReal::infinity();
            }
            cross_term += la[i] * weight * std::log2(std::max(lb[j], kLogFloor));
        }
    }
    return ExtendedReal::finite(self_term - cross_term);
}

double trace_distance(const HermitianOperator &a, const HermitianOperator &b) {
    require_same_dim(a, b, "trace_distance");
    SpectralDecomposition s = eig_herm(a - b);
    double sum = 0;
    for (double x : s.values) {
        sum += std::abs(x);
    }
    return 0.5 * sum;
}

double von_neumann_entropy(const HermitianOperator &rho) {
    SpectralDecomposition s = eig_herm(rho);
    double h = 0;
    for (double x : clipped_spectrum(s, "von_neumann_entropy")) {
        if (x > 0) {
            h -= x * std::log2(x);
        }
    }
    return h;
}

}  // namespace ncoh
