#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "nnpres/errors.hpp"

namespace nnpres {

enum class Structure {
    general,
    upper_triangular,
    block_upper_triangular, ///< carries the row count of the leading block
    circulant,
    symmetric,
    anti_bidiagonal,
    jacobi,
};

inline std::string to_string(Structure s) {
    switch (s) {
        case Structure::general: return "general";
        case Structure::upper_triangular: return "upper-triangular";
        case Structure::block_upper_triangular: return "block-upper-triangular";
        case Structure::circulant: return "circulant";
        case Structure::symmetric: return "symmetric";
        case Structure::anti_bidiagonal: return "anti-bidiagonal";
        case Structure::jacobi: return "jacobi";
    }
    return "?";
}

/**
 * @brief Dense square real matrix with a verified structure tag.
 *
 * Row-major storage, 0-based accessors. Tags are validated on construction:
 * structural zeros and equalities are enforced to an absolute tolerance of
 * 1e-12 * (1 + max|entry|). The jacobi tag validates shape only
 * (tridiagonal, symmetric, positive subdiagonal); its definiteness half
 * needs an eigensolver and lives with the structured-matrix utilities.
 */
class Matrix {
public:
    Matrix() = default;

    explicit Matrix(int n, double fill = 0.0)
        : n_(check_order(n)), a_(static_cast<std::size_t>(n) * n, fill) {}

    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<double>>& rows,
                            Structure tag = Structure::general, int block_rows = 0) {
        const int n = static_cast<int>(rows.size());
        Matrix m(n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[i].size()) != n)
                throw std::invalid_argument("matrix rows must all have length n");
            for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
        }
        m.retag(tag, block_rows);
        return m;
    }

    int order() const { return n_; }
    Structure structure() const { return tag_; }
    /// Leading-block row count for the block-upper-triangular tag.
    int block_rows() const { return block_rows_; }

    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    /// Re-validate and switch the structure tag.
    void retag(Structure tag, int block_rows = 0) {
        validate(tag, block_rows);
        tag_ = tag;
        block_rows_ = (tag == Structure::block_upper_triangular) ? block_rows : 0;
    }

    bool is_entrywise_nonnegative(double tol = 0.0) const {
        for (double v : a_)
            if (v < -tol) return false;
        return true;
    }

    std::vector<std::vector<double>> to_rows() const {
        std::vector<std::vector<double>> rows(n_, std::vector<double>(n_));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) rows[i][j] = (*this)(i, j);
        return rows;
    }

private:
    static int check_order(int n) {
        if (n < 1) throw std::invalid_argument("matrix order must be >= 1");
        return n;
    }

    void validate(Structure tag, int block_rows) const;

    int n_ = 0;
    Structure tag_ = Structure::general;
    int block_rows_ = 0;
    std::vector<double> a_;
};

inline double max_norm(const Matrix& a) {
    double m = 0.0;
    for (int i = 0; i < a.order(); ++i)
        for (int j = 0; j < a.order(); ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

inline double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.order(); ++i)
        for (int j = 0; j < a.order(); ++j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

inline Matrix transpose(const Matrix& a) {
    Matrix t(a.order());
    for (int i = 0; i < a.order(); ++i)
        for (int j = 0; j < a.order(); ++j) t(j, i) = a(i, j);
    return t;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.order() != b.order()) throw std::invalid_argument("order mismatch in matrix product");
    const int n = a.order();
    Matrix c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.order() != b.order()) throw std::invalid_argument("order mismatch in matrix sum");
    Matrix c(a.order());
    for (int i = 0; i < a.order(); ++i)
        for (int j = 0; j < a.order(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.order() != b.order()) throw std::invalid_argument("order mismatch in matrix difference");
    Matrix c(a.order());
    for (int i = 0; i < a.order(); ++i)
        for (int j = 0; j < a.order(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

inline Matrix operator*(double s, const Matrix& a) {
    Matrix c(a.order());
    for (int i = 0; i < a.order(); ++i)
        for (int j = 0; j < a.order(); ++j) c(i, j) = s * a(i, j);
    return c;
}

/// Non-throwing structure check at the shared tolerance.
inline bool structure_holds(const Matrix& m, Structure tag, int block_rows = 0) {
    const int n = m.order();
    const double tol = 1e-12 * (1.0 + max_norm(m));
    switch (tag) {
        case Structure::general:
            return true;
        case Structure::upper_triangular:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < i; ++j)
                    if (std::abs(m(i, j)) > tol) return false;
            return true;
        case Structure::block_upper_triangular: {
            if (block_rows < 1 || block_rows >= n) return false;
            for (int i = block_rows; i < n; ++i)
                for (int j = 0; j < block_rows; ++j)
                    if (std::abs(m(i, j)) > tol) return false;
            return true;
        }
        case Structure::circulant:
            for (int i = 1; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (std::abs(m(i, j) - m(0, ((j - i) % n + n) % n)) > tol) return false;
            return true;
        case Structure::symmetric:
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (std::abs(m(i, j) - m(j, i)) > tol) return false;
            return true;
        case Structure::anti_bidiagonal:
            if (!structure_holds(m, Structure::symmetric)) return false;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const int s = i + j;
                    if (s != n - 1 && s != n && std::abs(m(i, j)) > tol) return false;
                }
            return true;
        case Structure::jacobi:
            if (!structure_holds(m, Structure::symmetric)) return false;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (std::abs(i - j) > 1 && std::abs(m(i, j)) > tol) return false;
            for (int i = 0; i + 1 < n; ++i)
                if (m(i + 1, i) <= tol) return false;
            return true;
    }
    return false;
}

inline void Matrix::validate(Structure tag, int block_rows) const {
    for (double v : a_)
        if (!std::isfinite(v)) throw std::invalid_argument("matrix entries must be finite");
    if (structure_holds(*this, tag, block_rows)) return;
    switch (tag) {
        case Structure::symmetric:
        case Structure::jacobi:
            if (!structure_holds(*this, Structure::symmetric))
                throw NotSymmetric("matrix is not symmetric to tolerance");
            break;
        case Structure::upper_triangular:
            throw NotTriangular("matrix is not upper-triangular");
        default:
            break;
    }
    throw StructureMismatch("matrix does not satisfy declared structure '" + to_string(tag) + "'");
}

} // namespace nnpres
