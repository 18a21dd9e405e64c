#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "nnpres/errors.hpp"
#include "nnpres/matrix.hpp"
#include "nnpres/spectra.hpp"

namespace nnpres {

/// Ones on the first superdiagonal, zeros elsewhere.
inline Matrix shift_nilpotent(int n) {
    Matrix a(n);
    for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
    a.retag(Structure::upper_triangular);
    return a;
}

/// Each row the cyclic right-shift of the previous.
inline Matrix circulant_from_row(const std::vector<double>& row) {
    const int n = static_cast<int>(row.size());
    if (n < 1) throw std::invalid_argument("circulant row must be nonempty");
    Matrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = row[static_cast<std::size_t>(((j - i) % n + n) % n)];
    a.retag(Structure::circulant);
    return a;
}

/// Coefficients (a_1, ..., a_n) of a symmetric anti-bidiagonal matrix:
/// a_n sits in the corners (1,n) and (n,1), and the values a_{n-1}, a_{n-2},
/// ... fill the antidiagonal and its adjacent band moving inward.
struct AntiBidiagonalSpec {
    std::vector<double> a;
};

inline Matrix anti_bidiagonal(const AntiBidiagonalSpec& spec) {
    const int n = static_cast<int>(spec.a.size());
    if (n < 1) throw std::invalid_argument("anti-bidiagonal spec needs n >= 1 coefficients");
    Matrix m(n);
    auto coeff = [&](int k) { return spec.a[static_cast<std::size_t>(k - 1)]; }; // 1-based a_k
    // 1-based entry rule from the displayed pattern: row i holds
    // a_{n-2(i-1)} at column n+1-i (antidiagonal) and a_{n-2i+3} at column
    // n+2-i (adjacent band); the lower half mirrors by symmetry.
    for (int i = 1; i <= n; ++i) {
        const int anti = n - 2 * (i - 1);
        if (anti >= 1) {
            m(i - 1, n - i) = coeff(anti);
            m(n - i, i - 1) = coeff(anti);
        }
        const int band = n - 2 * i + 3;
        if (i >= 2 && band >= 1 && n + 2 - i <= n) {
            m(i - 1, n + 1 - i) = coeff(band);
            m(n + 1 - i, i - 1) = coeff(band);
        }
    }
    m.retag(Structure::anti_bidiagonal);
    return m;
}

/// Report of a verified power-pattern run.
struct AntipowerReport {
    int n;
    int qmax;
    int zero_checks;    ///< structural-zero entries verified
    int product_checks; ///< product identities verified
};

/**
 * @brief Verify the power patterns of a symmetric anti-bidiagonal matrix.
 *
 * For each q up to qmax, computed on explicit powers A^p:
 *   - A^{2q-1} vanishes where 2 <= i+j <= n-q+1 (1-based),
 *   - A^{2q} vanishes where 1+q <= j-i <= n-1,
 *   - A^{2q-1}_{1,n-q+1} = a_n a_{n-1} ... a_{n-2q+2},
 *   - A^{2q}_{1,1+q}     = a_n a_{n-1} ... a_{n-2q+1}.
 * Zeros are checked to 1e-12 absolute (scaled by the power's norm), the
 * products to 1e-10 relative. Throws PatternViolation at the first failure.
 */
inline AntipowerReport antipower_pattern_verify(const AntiBidiagonalSpec& spec, int qmax) {
    const int n = static_cast<int>(spec.a.size());
    if (qmax < 1) throw std::invalid_argument("qmax must be >= 1");
    const Matrix a = anti_bidiagonal(spec);
    AntipowerReport report{n, qmax, 0, 0};

    Matrix power = a; // A^1
    for (int p = 1; p <= 2 * qmax; ++p) {
        if (p > 1) power = power * a;
        const double ztol = 1e-12 * (1.0 + max_norm(power));
        const bool odd = (p % 2 == 1);
        const int q = odd ? (p + 1) / 2 : p / 2;
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= n; ++j) {
                const bool must_vanish =
                    odd ? (i + j >= 2 && i + j <= n - q + 1) : (j - i >= 1 + q && j - i <= n - 1);
                if (!must_vanish) continue;
                ++report.zero_checks;
                if (std::abs(power(i - 1, j - 1)) > ztol)
                    throw PatternViolation("power of anti-bidiagonal matrix has a nonzero entry in its zero pattern",
                                           p, i, j);
            }
        }
        // Product identity for this power's distinguished entry.
        const int lo = odd ? n - 2 * q + 2 : n - 2 * q + 1;
        const bool in_range = odd ? (q <= (n + 1) / 2) : (q <= n / 2);
        if (in_range && lo >= 1) {
            double expected = 1.0;
            for (int k = n; k >= lo; --k) expected *= spec.a[static_cast<std::size_t>(k - 1)];
            const int col = odd ? n - q + 1 : 1 + q;
            const double got = power(0, col - 1);
            ++report.product_checks;
            if (std::abs(got - expected) > 1e-10 * (1.0 + std::abs(expected)))
                throw PatternViolation("anti-bidiagonal power product identity failed", p, 1, col);
        }
    }
    return report;
}

/// diag(A, 0): one extra zero row and column. Keeps a triangular tag.
inline Matrix embed_pad_zero(const Matrix& a) {
    const int n = a.order();
    Matrix b(n + 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = a(i, j);
    if (a.structure() == Structure::upper_triangular)
        b.retag(Structure::upper_triangular);
    else if (a.structure() == Structure::symmetric)
        b.retag(Structure::symmetric);
    return b;
}

/// [[0, B], [B, 0]] for symmetric B; with odd_pad, one extra zero
/// row/column on top of that.
inline Matrix embed_antidiag(const Matrix& b, bool odd_pad = false) {
    const int m = b.order();
    if (!structure_holds(b, Structure::symmetric))
        throw NotSymmetric("embed_antidiag requires a symmetric block");
    const int n = 2 * m + (odd_pad ? 1 : 0);
    Matrix a(n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            a(i, m + j) = b(i, j);
            a(m + i, j) = b(i, j);
        }
    a.retag(Structure::symmetric);
    return a;
}

/// Full Jacobi-matrix predicate: tridiagonal, symmetric, positive
/// subdiagonal (shape tag) plus nonnegative definiteness via sym_eigs.
inline bool is_jacobi(const Matrix& a) {
    if (!structure_holds(a, Structure::jacobi)) return false;
    const Spectrum s = sym_eigs(a);
    for (double v : s.values)
        if (v < -1e-9) return false;
    return true;
}

} // namespace nnpres
