#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nnpres {

enum class NamedFunction { exp, sinh, cosh, sin, cos };

inline std::string to_string(NamedFunction f) {
    switch (f) {
        case NamedFunction::exp: return "exp";
        case NamedFunction::sinh: return "sinh";
        case NamedFunction::cosh: return "cosh";
        case NamedFunction::sin: return "sin";
        case NamedFunction::cos: return "cos";
    }
    return "?";
}

inline std::optional<NamedFunction> named_from_string(const std::string& s) {
    if (s == "exp") return NamedFunction::exp;
    if (s == "sinh") return NamedFunction::sinh;
    if (s == "cosh") return NamedFunction::cosh;
    if (s == "sin") return NamedFunction::sin;
    if (s == "cos") return NamedFunction::cos;
    return std::nullopt;
}

/**
 * @brief An entire function with computable derivatives of every order.
 *
 * Three shapes: a polynomial (ascending coefficients), one of five named
 * analytic functions, or a flat weighted sum of the first two. Sums never
 * nest; construction splices nested sums into one level. All instances are
 * immutable after construction and safe to share across threads.
 */
class FunctionSpec {
public:
    struct Polynomial {
        std::vector<double> coeffs; ///< ascending, trailing zeros trimmed
    };
    using Atom = std::variant<Polynomial, NamedFunction>;
    struct Term {
        double weight;
        Atom atom;
    };

    /// Polynomial a_0 + a_1 x + ... ; trailing zeros are normalized away
    /// unless the polynomial is identically zero.
    static FunctionSpec polynomial(std::vector<double> coeffs) {
        for (double c : coeffs)
            if (!std::isfinite(c)) throw std::invalid_argument("non-finite polynomial coefficient");
        while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
        if (coeffs.empty()) coeffs.push_back(0.0);
        FunctionSpec f;
        f.terms_.push_back(Term{1.0, Polynomial{std::move(coeffs)}});
        return f;
    }

    static FunctionSpec named(NamedFunction n) {
        FunctionSpec f;
        f.terms_.push_back(Term{1.0, n});
        return f;
    }

    static FunctionSpec constant(double c) { return polynomial({c}); }

    /// Weighted sum; nested sums are flattened so evaluation stays loop-free.
    static FunctionSpec sum(const std::vector<std::pair<double, FunctionSpec>>& parts) {
        if (parts.empty()) throw std::invalid_argument("sum needs at least one term");
        FunctionSpec f;
        for (const auto& [w, g] : parts) {
            if (!std::isfinite(w)) throw std::invalid_argument("non-finite sum weight");
            for (const Term& t : g.terms_)
                f.terms_.push_back(Term{w * t.weight, t.atom});
        }
        return f;
    }

    const std::vector<Term>& terms() const { return terms_; }

    bool is_plain_polynomial() const {
        return terms_.size() == 1 && terms_[0].weight == 1.0 &&
               std::holds_alternative<Polynomial>(terms_[0].atom);
    }
    bool is_named() const {
        return terms_.size() == 1 && terms_[0].weight == 1.0 &&
               std::holds_alternative<NamedFunction>(terms_[0].atom);
    }

    /// Combined coefficient list when every term is polynomial, else nullopt.
    std::optional<std::vector<double>> as_polynomial() const {
        std::vector<double> acc{0.0};
        for (const Term& t : terms_) {
            const auto* p = std::get_if<Polynomial>(&t.atom);
            if (!p) return std::nullopt;
            if (p->coeffs.size() > acc.size()) acc.resize(p->coeffs.size(), 0.0);
            for (std::size_t j = 0; j < p->coeffs.size(); ++j)
                acc[j] += t.weight * p->coeffs[j];
        }
        while (acc.size() > 1 && acc.back() == 0.0) acc.pop_back();
        return acc;
    }

    bool is_identically_zero() const {
        auto p = as_polynomial();
        if (!p) return false;
        for (double c : *p)
            if (c != 0.0) return false;
        return true;
    }

private:
    FunctionSpec() = default;
    std::vector<Term> terms_;
};

namespace detail {

inline double horner(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline std::complex<double> horner(const std::vector<double>& c, std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

inline double eval_named(NamedFunction f, double x) {
    switch (f) {
        case NamedFunction::exp: return std::exp(x);
        case NamedFunction::sinh: return std::sinh(x);
        case NamedFunction::cosh: return std::cosh(x);
        case NamedFunction::sin: return std::sin(x);
        case NamedFunction::cos: return std::cos(x);
    }
    return 0.0;
}

inline std::complex<double> eval_named(NamedFunction f, std::complex<double> z) {
    switch (f) {
        case NamedFunction::exp: return std::exp(z);
        case NamedFunction::sinh: return std::sinh(z);
        case NamedFunction::cosh: return std::cosh(z);
        case NamedFunction::sin: return std::sin(z);
        case NamedFunction::cos: return std::cos(z);
    }
    return 0.0;
}

/// j-th derivative of a named function at x; the five functions cycle
/// with period 1, 2 or 4.
inline double named_derivative(NamedFunction f, int j, double x) {
    switch (f) {
        case NamedFunction::exp: return std::exp(x);
        case NamedFunction::sinh: return (j % 2 == 0) ? std::sinh(x) : std::cosh(x);
        case NamedFunction::cosh: return (j % 2 == 0) ? std::cosh(x) : std::sinh(x);
        case NamedFunction::sin:
            switch (j % 4) {
                case 0: return std::sin(x);
                case 1: return std::cos(x);
                case 2: return -std::sin(x);
                default: return -std::cos(x);
            }
        case NamedFunction::cos:
            switch (j % 4) {
                case 0: return std::cos(x);
                case 1: return -std::sin(x);
                case 2: return -std::cos(x);
                default: return std::sin(x);
            }
    }
    return 0.0;
}

/// Taylor coefficient a_j = f^(j)(0)/j! of a named function.
inline double named_taylor_coefficient(NamedFunction f, int j, double inv_factorial) {
    switch (f) {
        case NamedFunction::exp: return inv_factorial;
        case NamedFunction::sinh: return (j % 2 == 1) ? inv_factorial : 0.0;
        case NamedFunction::cosh: return (j % 2 == 0) ? inv_factorial : 0.0;
        case NamedFunction::sin:
            if (j % 2 == 0) return 0.0;
            return ((j / 2) % 2 == 0) ? inv_factorial : -inv_factorial;
        case NamedFunction::cos:
            if (j % 2 == 1) return 0.0;
            return ((j / 2) % 2 == 0) ? inv_factorial : -inv_factorial;
    }
    return 0.0;
}

inline std::vector<double> poly_derivative(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t j = 1; j < c.size(); ++j) d.push_back(c[j] * static_cast<double>(j));
    if (d.empty()) d.push_back(0.0);
    return d;
}

} // namespace detail

inline double eval(const FunctionSpec& f, double x) {
    double acc = 0.0;
    for (const auto& t : f.terms()) {
        if (const auto* p = std::get_if<FunctionSpec::Polynomial>(&t.atom))
            acc += t.weight * detail::horner(p->coeffs, x);
        else
            acc += t.weight * detail::eval_named(std::get<NamedFunction>(t.atom), x);
    }
    return acc;
}

inline std::complex<double> eval(const FunctionSpec& f, std::complex<double> z) {
    if (z.imag() == 0.0) return {eval(f, z.real()), 0.0};
    std::complex<double> acc = 0.0;
    for (const auto& t : f.terms()) {
        if (const auto* p = std::get_if<FunctionSpec::Polynomial>(&t.atom))
            acc += t.weight * detail::horner(p->coeffs, z);
        else
            acc += t.weight * detail::eval_named(std::get<NamedFunction>(t.atom), z);
    }
    return acc;
}

/// f(x), f'(x), ..., f^(k)(x) by closed-form differentiation per shape.
inline std::vector<double> derivatives(const FunctionSpec& f, double x, int order) {
    if (order < 0) throw std::invalid_argument("derivative order must be >= 0");
    std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
    for (const auto& t : f.terms()) {
        if (const auto* p = std::get_if<FunctionSpec::Polynomial>(&t.atom)) {
            std::vector<double> c = p->coeffs;
            for (int j = 0; j <= order; ++j) {
                out[j] += t.weight * detail::horner(c, x);
                c = detail::poly_derivative(c);
            }
        } else {
            const auto n = std::get<NamedFunction>(t.atom);
            for (int j = 0; j <= order; ++j)
                out[j] += t.weight * detail::named_derivative(n, j, x);
        }
    }
    return out;
}

/// Taylor coefficients a_0..a_m around the origin.
inline std::vector<double> taylor_coefficients(const FunctionSpec& f, int m) {
    if (m < 0) throw std::invalid_argument("coefficient count must be >= 0");
    std::vector<double> out(static_cast<std::size_t>(m) + 1, 0.0);
    for (const auto& t : f.terms()) {
        if (const auto* p = std::get_if<FunctionSpec::Polynomial>(&t.atom)) {
            for (std::size_t j = 0; j < p->coeffs.size() && j <= static_cast<std::size_t>(m); ++j)
                out[j] += t.weight * p->coeffs[j];
        } else {
            const auto n = std::get<NamedFunction>(t.atom);
            double inv_fact = 1.0;
            for (int j = 0; j <= m; ++j) {
                if (j > 0) inv_fact /= static_cast<double>(j);
                out[j] += t.weight * detail::named_taylor_coefficient(n, j, inv_fact);
            }
        }
    }
    return out;
}

/**
 * @brief Even/odd split of f, with the square-argument factors when extractable.
 *
 * f_even(x) + f_odd(x) = f(x). For polynomial input, g and h carry the
 * coefficient subsequences with f_even(z) = g(z^2) and f_odd(z) = z h(z^2);
 * for named functions those factors have no closed form in this
 * representation and stay absent (exact = false flags that).
 */
struct ParityParts {
    FunctionSpec f_even;
    FunctionSpec f_odd;
    std::optional<FunctionSpec> g; ///< f_even(z) = g(z^2)
    std::optional<FunctionSpec> h; ///< f_odd(z) = z h(z^2)
    bool exact;                    ///< true when g and h are both present
};

inline ParityParts parity_decompose(const FunctionSpec& f) {
    std::vector<std::pair<double, FunctionSpec>> even_terms, odd_terms;
    bool all_polynomial = true;
    std::vector<double> g_coeffs{0.0}, h_coeffs{0.0};

    for (const auto& t : f.terms()) {
        if (const auto* p = std::get_if<FunctionSpec::Polynomial>(&t.atom)) {
            std::vector<double> even(p->coeffs.size(), 0.0), odd(p->coeffs.size(), 0.0);
            for (std::size_t j = 0; j < p->coeffs.size(); ++j)
                (j % 2 == 0 ? even[j] : odd[j]) = p->coeffs[j];
            even_terms.emplace_back(t.weight, FunctionSpec::polynomial(even));
            odd_terms.emplace_back(t.weight, FunctionSpec::polynomial(odd));
            const std::size_t gk = p->coeffs.size() / 2 + 1;
            if (g_coeffs.size() < gk) g_coeffs.resize(gk, 0.0);
            if (h_coeffs.size() < gk) h_coeffs.resize(gk, 0.0);
            for (std::size_t j = 0; j < p->coeffs.size(); ++j) {
                if (j % 2 == 0)
                    g_coeffs[j / 2] += t.weight * p->coeffs[j];
                else
                    h_coeffs[j / 2] += t.weight * p->coeffs[j];
            }
        } else {
            all_polynomial = false;
            switch (std::get<NamedFunction>(t.atom)) {
                case NamedFunction::exp:
                    even_terms.emplace_back(t.weight, FunctionSpec::named(NamedFunction::cosh));
                    odd_terms.emplace_back(t.weight, FunctionSpec::named(NamedFunction::sinh));
                    break;
                case NamedFunction::sinh:
                    odd_terms.emplace_back(t.weight, FunctionSpec::named(NamedFunction::sinh));
                    break;
                case NamedFunction::cosh:
                    even_terms.emplace_back(t.weight, FunctionSpec::named(NamedFunction::cosh));
                    break;
                case NamedFunction::sin:
                    odd_terms.emplace_back(t.weight, FunctionSpec::named(NamedFunction::sin));
                    break;
                case NamedFunction::cos:
                    even_terms.emplace_back(t.weight, FunctionSpec::named(NamedFunction::cos));
                    break;
            }
        }
    }

    const FunctionSpec zero = FunctionSpec::constant(0.0);
    ParityParts parts{
        even_terms.empty() ? zero : FunctionSpec::sum(even_terms),
        odd_terms.empty() ? zero : FunctionSpec::sum(odd_terms),
        std::nullopt,
        std::nullopt,
        false,
    };
    if (all_polynomial) {
        parts.g = FunctionSpec::polynomial(g_coeffs);
        parts.h = FunctionSpec::polynomial(h_coeffs);
        parts.exact = true;
    }
    return parts;
}

} // namespace nnpres
