#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nnpres/errors.hpp"

namespace nnpres {

/// One violated screening inequality, with the values that broke it.
struct NiepViolation {
    std::string condition; ///< "moment", "jll", "newton"
    int k = 0, m = 0, j = 0;
    double lhs = 0.0, rhs = 0.0;
};

struct NiepReport {
    bool pass = true;
    std::optional<NiepViolation> violation;
};

/**
 * @brief A real n-tuple with the derived quantities the screens consume.
 *
 * Power sums, elementary symmetric functions, and the normalized
 * characteristic coefficients of the shifted matrix rI - A are computed on
 * demand from the stored values; set_values() replaces the tuple wholesale
 * so nothing can go stale.
 */
class SpectrumTuple {
public:
    explicit SpectrumTuple(std::vector<double> values) { set_values(std::move(values)); }

    const std::vector<double>& values() const { return values_; }
    int size() const { return static_cast<int>(values_.size()); }

    void set_values(std::vector<double> values) {
        if (values.empty()) throw std::invalid_argument("spectrum tuple must be nonempty");
        for (double v : values)
            if (!std::isfinite(v)) throw std::invalid_argument("spectrum tuple entries must be finite");
        values_ = std::move(values);
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Largest element; the screens report whether it attains max_abs()
    /// (the dominant-eigenvalue diagnostic).
    double max_value() const { return *std::max_element(values_.begin(), values_.end()); }

private:
    std::vector<double> values_;
};

/// s_1, ..., s_{m_max} with s_m = sum of m-th powers.
inline std::vector<double> power_sums(const SpectrumTuple& tuple, int m_max) {
    if (m_max < 1) throw std::invalid_argument("power sum count must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(m_max), 0.0);
    for (double v : tuple.values()) {
        double p = 1.0;
        for (int m = 1; m <= m_max; ++m) {
            p *= v;
            out[static_cast<std::size_t>(m - 1)] += p;
        }
    }
    return out;
}

/// sigma_1, ..., sigma_n by incremental expansion of prod (x + v_i).
inline std::vector<double> elementary_symmetric(const SpectrumTuple& tuple) {
    const int n = tuple.size();
    std::vector<double> sigma(static_cast<std::size_t>(n) + 1, 0.0);
    sigma[0] = 1.0;
    int used = 0;
    for (double v : tuple.values()) {
        ++used;
        for (int j = used; j >= 1; --j)
            sigma[static_cast<std::size_t>(j)] += v * sigma[static_cast<std::size_t>(j - 1)];
    }
    return {sigma.begin() + 1, sigma.end()};
}

/// Moment screen: s_m >= -1e-12 * scale for m = 1..m_max.
inline NiepReport check_moments(const SpectrumTuple& tuple, int m_max) {
    const std::vector<double> s = power_sums(tuple, m_max);
    for (int m = 1; m <= m_max; ++m) {
        const double scale = 1.0 + std::pow(tuple.max_abs(), m) * tuple.size();
        if (s[static_cast<std::size_t>(m - 1)] < -1e-12 * scale) {
            NiepReport r;
            r.pass = false;
            r.violation = NiepViolation{"moment", 0, m, 0, s[static_cast<std::size_t>(m - 1)], 0.0};
            return r;
        }
    }
    return {};
}

/**
 * @brief Power-sum inequalities s_k^m <= n^{m-1} s_{km} on the grid
 * k <= k_max, 2 <= m <= m_max, plus the moment screen up to k_max * m_max.
 *
 * Reports the first violation found (moments first, then the grid in
 * lexicographic (k, m) order).
 */
inline NiepReport check_jll(const SpectrumTuple& tuple, int k_max, int m_max) {
    if (k_max < 1 || m_max < 1) throw std::invalid_argument("jll grid bounds must be >= 1");
    const NiepReport moments = check_moments(tuple, k_max * m_max);
    if (!moments.pass) return moments;

    const int n = tuple.size();
    const std::vector<double> s = power_sums(tuple, k_max * m_max);
    for (int k = 1; k <= k_max; ++k) {
        for (int m = 2; m <= m_max; ++m) {
            const double lhs = std::pow(s[static_cast<std::size_t>(k - 1)], m);
            const double rhs = std::pow(static_cast<double>(n), m - 1) *
                               s[static_cast<std::size_t>(k * m - 1)];
            const double slack = 1e-9 * (1.0 + std::abs(lhs) + std::abs(rhs));
            if (lhs > rhs + slack) {
                NiepReport r;
                r.pass = false;
                r.violation = NiepViolation{"jll", k, m, 0, lhs, rhs};
                return r;
            }
        }
    }
    return {};
}

/// Normalized characteristic coefficients c_0..c_n of the shift r - tuple:
/// det(x I - M) = sum (-1)^j C(n,j) c_j x^{n-j} with M = diag(r - v_i),
/// i.e. c_j = e_j(r - v) / C(n, j).
inline std::vector<double> normalized_shifted_coefficients(const SpectrumTuple& tuple, double r) {
    const int n = tuple.size();
    std::vector<double> shifted;
    shifted.reserve(static_cast<std::size_t>(n));
    for (double v : tuple.values()) shifted.push_back(r - v);
    const std::vector<double> e = elementary_symmetric(SpectrumTuple(shifted));

    std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
    c[0] = 1.0;
    double binom = 1.0;
    for (int j = 1; j <= n; ++j) {
        binom = binom * (n - j + 1) / j;
        c[static_cast<std::size_t>(j)] = e[static_cast<std::size_t>(j - 1)] / binom;
    }
    return c;
}

/**
 * @brief Newton's inequalities c_j^2 >= c_{j-1} c_{j+1} for the shifted
 * tuple r - v, j = 1..n-1, with slack 1e-10 * local scale.
 *
 * The shift must dominate the tuple: throws ShiftTooSmall when
 * r < max|v| - 1e-12 * (1 + max|v|).
 */
inline NiepReport check_newton_ineq(const SpectrumTuple& tuple, double r) {
    const double mx = tuple.max_abs();
    if (r - mx < -1e-12 * (1.0 + mx))
        throw ShiftTooSmall("shift must be at least the largest eigenvalue magnitude");

    const std::vector<double> c = normalized_shifted_coefficients(tuple, r);
    const int n = tuple.size();
    for (int j = 1; j <= n - 1; ++j) {
        const double lhs = c[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(j)];
        const double rhs = c[static_cast<std::size_t>(j - 1)] * c[static_cast<std::size_t>(j + 1)];
        const double slack = 1e-10 * (1.0 + std::abs(lhs) + std::abs(rhs));
        if (lhs < rhs - slack) {
            NiepReport rep;
            rep.pass = false;
            rep.violation = NiepViolation{"newton", 0, 0, j, lhs, rhs};
            return rep;
        }
    }
    return {};
}

} // namespace nnpres
