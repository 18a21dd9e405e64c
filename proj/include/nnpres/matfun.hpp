#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "nnpres/divdiff.hpp"
#include "nnpres/errors.hpp"
#include "nnpres/function.hpp"
#include "nnpres/matrix.hpp"
#include "nnpres/spectra.hpp"
#include "nnpres/taylor.hpp"

namespace nnpres {

/**
 * @brief f(A) in Newton form over a real spectrum:
 *   f[r1] I + f[r1,r2](A - r1 I) + ... + f[r1..rn](A - r1 I)...(A - r_{n-1} I).
 *
 * The caller supplies the spectrum (this keeps the eigensolver choice
 * explicit); nodes are used in ascending order. Repeated eigenvalues are
 * handled by the confluent divided differences, which is exactly Hermite
 * interpolation on the spectrum.
 */
inline Matrix apply_newton(const FunctionSpec& f, const Matrix& a, const Spectrum& spectrum) {
    const int n = a.order();
    if (static_cast<int>(spectrum.values.size()) != n)
        throw std::invalid_argument("spectrum length must equal the matrix order");
    std::vector<double> nodes = spectrum.values;
    std::sort(nodes.begin(), nodes.end());

    Matrix result(n);
    Matrix product = Matrix::identity(n);
    std::vector<double> prefix;
    for (int k = 0; k < n; ++k) {
        prefix.push_back(nodes[static_cast<std::size_t>(k)]);
        const double dd = divided_difference(f, prefix).value;
        result = result + dd * product;
        if (k + 1 < n) {
            Matrix shifted = a - nodes[static_cast<std::size_t>(k)] * Matrix::identity(n);
            product = product * shifted;
        }
    }
    return result;
}

/// Overload for spectra that may carry an imaginary part; rejects any
/// nonreal node rather than silently truncating.
inline Matrix apply_newton(const FunctionSpec& f, const Matrix& a, const ComplexSpectrum& spectrum) {
    Spectrum real{{}, spectrum.method};
    for (const auto& z : spectrum.values) {
        if (std::abs(z.imag()) > 1e-12 * (1.0 + std::abs(z)))
            throw ComplexSpectrumError("Newton form needs a real spectrum");
        real.values.push_back(z.real());
    }
    return apply_newton(f, a, real);
}

/**
 * @brief f(A) for upper-triangular A from the explicit entry formula.
 *
 * Entry (i,j), i < j, sums over all increasing chains i < i_1 < ... < i_k < j
 * the product a(i,i_1)...a(i_k,j) times the divided difference of f at the
 * chain's diagonal values. Diagonal entries are f(a_ii); below-diagonal
 * entries are zero. Chains are enumerated as subsets of {i+1..j-1}, which is
 * fine at desk orders (n <= 8 means at most 64 chains per entry).
 */
inline Matrix apply_triangular_explicit(const FunctionSpec& f, const Matrix& a) {
    const int n = a.order();
    if (!structure_holds(a, Structure::upper_triangular))
        throw NotTriangular("apply_triangular_explicit requires an upper-triangular matrix");

    Matrix result(n);
    for (int i = 0; i < n; ++i) result(i, i) = eval(f, a(i, i));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int inner = j - i - 1;
            double sum = 0.0;
            for (unsigned mask = 0; mask < (1u << inner); ++mask) {
                std::vector<int> chain{i};
                for (int b = 0; b < inner; ++b)
                    if (mask & (1u << b)) chain.push_back(i + 1 + b);
                chain.push_back(j);
                double weight = 1.0;
                for (std::size_t t = 0; t + 1 < chain.size(); ++t)
                    weight *= a(chain[t], chain[t + 1]);
                if (weight == 0.0) continue;
                std::vector<double> nodes;
                nodes.reserve(chain.size());
                for (int idx : chain) nodes.push_back(a(idx, idx));
                sum += weight * divided_difference(f, std::move(nodes)).value;
            }
            result(i, j) = sum;
        }
    }
    result.retag(Structure::upper_triangular);
    return result;
}

/**
 * @brief First row of f(A) for the circulant with the given first row.
 *
 * Evaluates f at the n spectrum points sum_j w^{jk} a_j and maps back by the
 * inverse transform f_l = (1/n) sum_k w^{-lk} f(lambda_k). The imaginary
 * residue must vanish for a real row; a residue above 1e-9 * (1 + max|f|)
 * signals an evaluation bug, not a user error.
 */
inline std::vector<double> apply_circulant(const FunctionSpec& f, const std::vector<double>& row) {
    const int n = static_cast<int>(row.size());
    if (n < 1) throw std::invalid_argument("circulant row must be nonempty");
    const double step = 2.0 * std::numbers::pi / n;

    std::vector<std::complex<double>> fvals(static_cast<std::size_t>(n));
    double fscale = 0.0;
    for (int k = 0; k < n; ++k) {
        std::complex<double> lambda = 0.0;
        for (int j = 0; j < n; ++j) {
            const int e = static_cast<int>((static_cast<long long>(k) * j) % n);
            lambda += row[static_cast<std::size_t>(j)] * std::polar(1.0, step * e);
        }
        fvals[static_cast<std::size_t>(k)] = eval(f, lambda);
        fscale = std::max(fscale, std::abs(fvals[static_cast<std::size_t>(k)]));
    }

    std::vector<double> out(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) {
        std::complex<double> sum = 0.0;
        for (int k = 0; k < n; ++k) {
            const int e = static_cast<int>((static_cast<long long>(l) * k) % n);
            sum += fvals[static_cast<std::size_t>(k)] * std::polar(1.0, -step * e);
        }
        sum /= static_cast<double>(n);
        if (std::abs(sum.imag()) > 1e-9 * (1.0 + fscale))
            throw ImaginaryResidue("inverse transform of a real circulant row kept an imaginary part");
        out[static_cast<std::size_t>(l)] = sum.real();
    }
    return out;
}

/// Solution of AX - XC = B with its max-norm residual.
struct SylvesterSolution {
    Matrix x;        ///< n1 x n2 content stored in the leading block
    int rows, cols;  ///< logical shape of X
    double residual; ///< ||AX - XC - B||_max
};

namespace detail {

/// Gaussian elimination with partial pivoting; returns false when the
/// system is singular to working precision.
inline bool solve_dense(std::vector<std::vector<double>>& m, std::vector<double>& rhs) {
    const int n = static_cast<int>(rhs.size());
    double scale = 0.0;
    for (const auto& r : m)
        for (double v : r) scale = std::max(scale, std::abs(v));
    const double tiny = 1e-13 * (1.0 + scale);
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        if (std::abs(m[pivot][col]) <= tiny) return false;
        std::swap(m[pivot], m[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (int r = col + 1; r < n; ++r) {
            const double factor = m[r][col] / m[col][col];
            if (factor == 0.0) continue;
            for (int c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
            rhs[r] -= factor * rhs[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double s = rhs[r];
        for (int c = r + 1; c < n; ++c) s -= m[r][c] * rhs[c];
        rhs[r] = s / m[r][r];
    }
    return true;
}

} // namespace detail

/**
 * @brief Unique solution of the Sylvester equation AX - XC = B.
 *
 * A is n1 x n1, C is n2 x n2, B is n1 x n2 (square Matrix inputs). Solved as
 * the n1*n2 Kronecker-form linear system by Gaussian elimination with
 * partial pivoting. A singular system means the spectra of A and C overlap
 * to working precision.
 */
inline SylvesterSolution solve_sylvester(const Matrix& a, const Matrix& c, const Matrix& b,
                                         int n1 = -1, int n2 = -1) {
    if (n1 < 0) n1 = a.order();
    if (n2 < 0) n2 = c.order();
    if (a.order() != n1 || c.order() != n2)
        throw std::invalid_argument("sylvester block orders disagree");

    const int dim = n1 * n2;
    // vec by columns: unknown u[q*n1 + p] = X(p, q).
    std::vector<std::vector<double>> system(
        static_cast<std::size_t>(dim), std::vector<double>(static_cast<std::size_t>(dim), 0.0));
    std::vector<double> rhs(static_cast<std::size_t>(dim), 0.0);
    for (int p = 0; p < n1; ++p) {
        for (int q = 0; q < n2; ++q) {
            const int r = q * n1 + p;
            rhs[static_cast<std::size_t>(r)] = b(p, q);
            for (int k = 0; k < n1; ++k) system[r][static_cast<std::size_t>(q * n1 + k)] += a(p, k);
            for (int k = 0; k < n2; ++k) system[r][static_cast<std::size_t>(k * n1 + p)] -= c(k, q);
        }
    }
    if (!detail::solve_dense(system, rhs))
        throw SpectraOverlap("sylvester system is singular: block spectra overlap");

    SylvesterSolution sol{Matrix(std::max(n1, n2)), n1, n2, 0.0};
    for (int p = 0; p < n1; ++p)
        for (int q = 0; q < n2; ++q) sol.x(p, q) = rhs[static_cast<std::size_t>(q * n1 + p)];

    double bscale = 0.0, res = 0.0;
    for (int p = 0; p < n1; ++p)
        for (int q = 0; q < n2; ++q) {
            bscale = std::max(bscale, std::abs(b(p, q)));
            double v = -b(p, q);
            for (int k = 0; k < n1; ++k) v += a(p, k) * sol.x(k, q);
            for (int k = 0; k < n2; ++k) v -= sol.x(p, k) * c(k, q);
            res = std::max(res, std::abs(v));
        }
    sol.residual = res;
    if (res >= 1e-8 * (1.0 + bscale))
        throw SpectraOverlap("sylvester solve is too ill-conditioned: block spectra nearly overlap");
    return sol;
}

/**
 * @brief f(M) for M = [[A, B], [0, C]] with disjoint block spectra:
 *   f(M) = [[f(A), f(A)X - X f(C)], [0, f(C)]],  AX - XC = B.
 *
 * Diagonal blocks are evaluated by the Taylor oracle.
 */
inline Matrix apply_block_triangular(const FunctionSpec& f, const Matrix& m) {
    if (m.structure() != Structure::block_upper_triangular)
        throw std::invalid_argument("apply_block_triangular requires a block-upper-triangular tag");
    const int n = m.order();
    const int n1 = m.block_rows();
    const int n2 = n - n1;

    Matrix a(n1), c(n2), b_block(std::max(n1, n2));
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) a(i, j) = m(i, j);
    for (int i = 0; i < n2; ++i)
        for (int j = 0; j < n2; ++j) c(i, j) = m(n1 + i, n1 + j);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) b_block(i, j) = m(i, n1 + j);

    const SylvesterSolution sol = solve_sylvester(a, c, b_block, n1, n2);
    const Matrix fa = apply_taylor(f, a);
    const Matrix fc = apply_taylor(f, c);

    Matrix out(n);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) out(i, j) = fa(i, j);
    for (int i = 0; i < n2; ++i)
        for (int j = 0; j < n2; ++j) out(n1 + i, n1 + j) = fc(i, j);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            double v = 0.0;
            for (int k = 0; k < n1; ++k) v += fa(i, k) * sol.x(k, j);
            for (int k = 0; k < n2; ++k) v -= sol.x(i, k) * fc(k, j);
            out(i, n1 + j) = v;
        }
    out.retag(Structure::block_upper_triangular, n1);
    return out;
}

/**
 * @brief f(A) through the companion matrix of an annihilating polynomial:
 *   f(A) = sum_j f(C)_{j1} A^{j-1}.
 *
 * minpoly is the ascending, monic coefficient list p_0 + p_1 x + ... + x^m.
 * The companion matrix carries ones on the subdiagonal and the negated
 * coefficients in the last column, so the formula reads off f(C)'s first
 * column. The polynomial is checked to annihilate A to
 * 1e-8 * (1 + ||A||_max^m).
 */
inline Matrix apply_companion(const FunctionSpec& f, const Matrix& a,
                              const std::vector<double>& minpoly) {
    const int n = a.order();
    const int m = static_cast<int>(minpoly.size()) - 1;
    if (m < 1 || m > n) throw std::invalid_argument("minimal polynomial degree must be in [1, n]");
    if (minpoly.back() != 1.0) throw std::invalid_argument("minimal polynomial must be monic");

    // Annihilation check: p(A) ~ 0.
    Matrix pa(n);
    Matrix power = Matrix::identity(n);
    for (int j = 0; j <= m; ++j) {
        pa = pa + minpoly[static_cast<std::size_t>(j)] * power;
        if (j < m) power = power * a;
    }
    const double anorm = max_norm(a);
    if (max_norm(pa) > 1e-8 * (1.0 + std::pow(anorm, m)))
        throw NotAnnihilating("polynomial does not annihilate the matrix");

    Matrix companion(m);
    for (int i = 0; i + 1 < m; ++i) companion(i + 1, i) = 1.0;
    for (int i = 0; i < m; ++i) companion(i, m - 1) = -minpoly[static_cast<std::size_t>(i)];

    const Matrix fc = apply_taylor(f, companion);
    Matrix out(n);
    power = Matrix::identity(n);
    for (int j = 0; j < m; ++j) {
        out = out + fc(j, 0) * power;
        if (j + 1 < m) power = power * a;
    }
    return out;
}

} // namespace nnpres
