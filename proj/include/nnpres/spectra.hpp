#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "nnpres/errors.hpp"
#include "nnpres/matrix.hpp"

namespace nnpres {

enum class SpectrumMethod {
    jacobi_rotation,
    dft,
    closed_form_2x2,
    diagonal_readoff,
    power_iteration,
};

/// Real spectrum, sorted ascending.
struct Spectrum {
    std::vector<double> values;
    SpectrumMethod method;
};

/// Complex spectrum (circulants), sorted ascending by (re, im).
struct ComplexSpectrum {
    std::vector<std::complex<double>> values;
    SpectrumMethod method;
};

/**
 * @brief Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
 *
 * Row-cyclic sweeps; stops when the off-diagonal Frobenius norm falls below
 * 1e-12 * ||A||_F or after 50 sweeps. Only eigenvalues are accumulated.
 */
inline Spectrum sym_eigs(const Matrix& a) {
    const int n = a.order();
    if (!structure_holds(a, Structure::symmetric))
        throw NotSymmetric("sym_eigs requires a symmetric matrix");

    Matrix w = a;
    // Work on the symmetrized copy so tiny asymmetries cannot drift.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (w(i, j) + w(j, i));
            w(i, j) = w(j, i) = v;
        }

    const double anorm = frobenius_norm(w);
    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) s += w(i, j) * w(i, j);
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 50 && off_norm() > 1e-12 * anorm; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = w(p, q);
                if (apq == 0.0) continue;
                const double theta = (w(q, q) - w(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double wkp = w(k, p), wkq = w(k, q);
                    w(k, p) = c * wkp - s * wkq;
                    w(k, q) = s * wkp + c * wkq;
                }
                for (int k = 0; k < n; ++k) {
                    const double wpk = w(p, k), wqk = w(q, k);
                    w(p, k) = c * wpk - s * wqk;
                    w(q, k) = s * wpk + c * wqk;
                }
            }
        }
    }

    Spectrum out{std::vector<double>(static_cast<std::size_t>(n)), SpectrumMethod::jacobi_rotation};
    for (int i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i)] = w(i, i);
    std::sort(out.values.begin(), out.values.end());
    return out;
}

/// Circulant eigenvalues { sum_j w^{kj} a_j } with w = e^{2 pi i / n},
/// by direct summation over roots of unity.
inline ComplexSpectrum circ_spectrum(const std::vector<double>& row) {
    const int n = static_cast<int>(row.size());
    if (n < 1) throw std::invalid_argument("circulant row must be nonempty");
    ComplexSpectrum out{{}, SpectrumMethod::dft};
    out.values.reserve(static_cast<std::size_t>(n));
    const double step = 2.0 * std::numbers::pi / n;
    for (int k = 0; k < n; ++k) {
        std::complex<double> sum = 0.0;
        for (int j = 0; j < n; ++j) {
            const int e = static_cast<int>((static_cast<long long>(k) * j) % n);
            sum += row[static_cast<std::size_t>(j)] * std::polar(1.0, step * e);
        }
        out.values.push_back(sum);
    }
    std::sort(out.values.begin(), out.values.end(), [](auto x, auto y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return out;
}

/// Closed-form eigenvalue pair of [[a11, b], [b, a22]], returned r1 <= r2.
inline std::pair<double, double> eig2x2_sym(double a11, double a22, double b) {
    const double mid = 0.5 * (a11 + a22);
    const double rad = 0.5 * std::sqrt((a11 - a22) * (a11 - a22) + 4.0 * b * b);
    return {mid - rad, mid + rad};
}

/// Diagonal readoff for triangular matrices, sorted ascending.
inline Spectrum triangular_spectrum(const Matrix& a) {
    if (!structure_holds(a, Structure::upper_triangular))
        throw NotTriangular("triangular_spectrum requires an upper-triangular matrix");
    Spectrum out{{}, SpectrumMethod::diagonal_readoff};
    out.values.reserve(static_cast<std::size_t>(a.order()));
    for (int i = 0; i < a.order(); ++i) out.values.push_back(a(i, i));
    std::sort(out.values.begin(), out.values.end());
    return out;
}

/**
 * @brief Spectral radius of an entrywise nonnegative matrix.
 *
 * Power iteration on A + I (the shift damps sign oscillation on periodic
 * patterns); converged when successive Rayleigh estimates differ by less
 * than 1e-10 relative. Throws NoConvergence after 10000 iterations, which
 * can happen for reducible corner cases.
 */
inline double spectral_radius(const Matrix& a) {
    const int n = a.order();
    if (!a.is_entrywise_nonnegative())
        throw std::invalid_argument("spectral_radius requires a nonnegative matrix");

    std::vector<double> v(static_cast<std::size_t>(n), 1.0 / n), bv(static_cast<std::size_t>(n));
    double est = 0.0;
    for (int iter = 0; iter < 10000; ++iter) {
        // bv = (A + I) v
        for (int i = 0; i < n; ++i) {
            double s = v[static_cast<std::size_t>(i)];
            for (int j = 0; j < n; ++j) s += a(i, j) * v[static_cast<std::size_t>(j)];
            bv[static_cast<std::size_t>(i)] = s;
        }
        double num = 0.0, den = 0.0;
        for (int i = 0; i < n; ++i) {
            num += v[static_cast<std::size_t>(i)] * bv[static_cast<std::size_t>(i)];
            den += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
        }
        const double next = num / den;
        double norm = 0.0;
        for (double x : bv) norm = std::max(norm, std::abs(x));
        // bv >= v > 0 entrywise since A >= 0 and the shift keeps the diagonal positive
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = bv[i] / norm;
        if (iter > 0 && std::abs(next - est) < 1e-10 * (1.0 + std::abs(next)))
            return next - 1.0;
        est = next;
    }
    throw NoConvergence("spectral radius power iteration hit the iteration cap");
}

} // namespace nnpres
