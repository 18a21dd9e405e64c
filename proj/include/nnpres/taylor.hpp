#pragma once

#include <cmath>
#include <cstddef>
#include <variant>
#include <vector>

#include "nnpres/errors.hpp"
#include "nnpres/function.hpp"
#include "nnpres/matrix.hpp"

namespace nnpres {
namespace detail {

/// Sum of a_j A^j with a closed coefficient stream. Polynomials run an exact
/// term count; infinite series stop once the added term's max-norm drops
/// below 1e-16 * (1 + ||partial sum||_max). Terms growing for 200 consecutive
/// steps trip the divergence guard (cannot happen for entire series at these
/// scales, but a wrong coefficient stream would).
template <typename CoeffAt>
Matrix sum_power_series(const Matrix& a, CoeffAt coeff_at, int exact_terms) {
    const int n = a.order();
    Matrix total(n);
    Matrix power = Matrix::identity(n);
    double prev_term_norm = 0.0;
    int growth_streak = 0;
    int small_streak = 0;
    for (int j = 0;; ++j) {
        if (exact_terms >= 0 && j >= exact_terms) break;
        const double aj = coeff_at(j);
        double term_norm = 0.0;
        if (aj != 0.0) {
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) {
                    const double t = aj * power(r, c);
                    total(r, c) += t;
                    term_norm = std::max(term_norm, std::abs(t));
                }
        }
        // Zero-coefficient terms carry no convergence information (half of
        // every sinh/cosh/sin/cos series); judge only the informative ones.
        if (exact_terms < 0 && aj != 0.0 && j > 0) {
            if (term_norm < 1e-16 * (1.0 + max_norm(total))) {
                if (++small_streak >= 2) break;
            } else {
                small_streak = 0;
            }
            growth_streak = (term_norm > prev_term_norm) ? growth_streak + 1 : 0;
            if (growth_streak >= 200)
                throw SeriesDivergenceGuard("matrix power series terms kept growing");
            prev_term_norm = term_norm;
        }
        power = power * a;
    }
    return total;
}

inline Matrix taylor_polynomial(const std::vector<double>& coeffs, const Matrix& a) {
    return sum_power_series(
        a, [&](int j) { return coeffs[static_cast<std::size_t>(j)]; },
        static_cast<int>(coeffs.size()));
}

/// (cosh(A), sinh(A)) on a matrix already scaled to ||A||_max <= 1.
inline std::pair<Matrix, Matrix> cosh_sinh_series(const Matrix& a) {
    Matrix ch = sum_power_series(
        a,
        [inv = 1.0](int j) mutable {
            if (j > 0) inv /= j;
            return j % 2 == 0 ? inv : 0.0;
        },
        -1);
    Matrix sh = sum_power_series(
        a,
        [inv = 1.0](int j) mutable {
            if (j > 0) inv /= j;
            return j % 2 == 1 ? inv : 0.0;
        },
        -1);
    return {ch, sh};
}

inline std::pair<Matrix, Matrix> cos_sin_series(const Matrix& a) {
    Matrix co = sum_power_series(
        a,
        [inv = 1.0](int j) mutable {
            if (j > 0) inv /= j;
            if (j % 2 == 1) return 0.0;
            return (j / 2) % 2 == 0 ? inv : -inv;
        },
        -1);
    Matrix si = sum_power_series(
        a,
        [inv = 1.0](int j) mutable {
            if (j > 0) inv /= j;
            if (j % 2 == 0) return 0.0;
            return (j / 2) % 2 == 0 ? inv : -inv;
        },
        -1);
    return {co, si};
}

/// Named function at A with scaling and squaring: scale by 2^-s so the
/// series runs at ||A||_max <= 1, then rebuild with the doubling identities
/// cosh 2X = 2 cosh^2 X - I, sinh 2X = 2 sinh X cosh X (and the sin/cos
/// analogues). Raw series at large norms shed digits to cancellation.
inline Matrix taylor_named(NamedFunction f, const Matrix& a) {
    const int n = a.order();
    const double norm = max_norm(a);
    int s = 0;
    double scale = 1.0;
    if (norm > 1.0) {
        s = static_cast<int>(std::ceil(std::log2(norm)));
        scale = std::ldexp(1.0, -s);
    }
    Matrix x = scale * a;

    const bool hyperbolic =
        f == NamedFunction::exp || f == NamedFunction::sinh || f == NamedFunction::cosh;
    auto [even, odd] = hyperbolic ? cosh_sinh_series(x) : cos_sin_series(x);
    const Matrix eye = Matrix::identity(n);
    for (int k = 0; k < s; ++k) {
        // cosh 2X = 2 cosh^2 X - I and sinh 2X = 2 sinh X cosh X; the
        // circular pair satisfies the same identities verbatim.
        Matrix even2 = 2.0 * (even * even) - eye;
        odd = 2.0 * (odd * even);
        even = std::move(even2);
    }
    switch (f) {
        case NamedFunction::exp: return even + odd;
        case NamedFunction::cosh: return even;
        case NamedFunction::sinh: return odd;
        case NamedFunction::cos: return even;
        case NamedFunction::sin: return odd;
    }
    return even;
}

} // namespace detail

/**
 * @brief f(A) by the Taylor power series: the designated oracle.
 *
 * Needs no spectral information, so every other evaluation method is
 * tested against it. Polynomials sum exactly; the named series use
 * scaling and squaring beyond unit max-norm.
 */
inline Matrix apply_taylor(const FunctionSpec& f, const Matrix& a) {
    const int n = a.order();
    Matrix total(n);
    for (const auto& t : f.terms()) {
        Matrix part = std::holds_alternative<FunctionSpec::Polynomial>(t.atom)
                          ? detail::taylor_polynomial(
                                std::get<FunctionSpec::Polynomial>(t.atom).coeffs, a)
                          : detail::taylor_named(std::get<NamedFunction>(t.atom), a);
        total = total + t.weight * part;
    }
    return total;
}

} // namespace nnpres
