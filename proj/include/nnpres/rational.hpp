#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace nnpres {

/// Exact rational scalar over 64-bit integers with overflow detection.
/// This backs the exact-coefficient mode for polynomials: divided-difference
/// regression tests compute their expected values here, free of any
/// floating-point tolerance question.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_i128(w(a.num_) * b.den_ + w(b.num_) * a.den_, w(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from_i128(w(a.num_) * b.den_ - w(b.num_) * a.den_, w(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128(w(a.num_) * b.num_, w(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return from_i128(w(a.num_) * b.den_, w(a.den_) * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return w(a.num_) * b.den_ < w(b.num_) * a.den_;
    }

private:
    using i128 = __int128;
    static i128 w(std::int64_t v) { return static_cast<i128>(v); }

    static Rational from_i128(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr i128 lim = static_cast<i128>(INT64_MAX);
        if (n > lim || n < -lim || d > lim)
            throw std::overflow_error("rational arithmetic overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        Rational r = from_i128(num_, den_);
        num_ = r.num_;
        den_ = r.den_;
    }

    std::int64_t num_;
    std::int64_t den_;
};

namespace rational {

/// Horner evaluation of a polynomial with exact coefficients (ascending).
inline Rational poly_eval(const std::vector<Rational>& coeffs, const Rational& x) {
    Rational acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

/// Exact derivative of a coefficient list.
inline std::vector<Rational> poly_derivative(const std::vector<Rational>& coeffs) {
    std::vector<Rational> d;
    for (std::size_t j = 1; j < coeffs.size(); ++j)
        d.push_back(coeffs[j] * Rational(static_cast<std::int64_t>(j)));
    if (d.empty()) d.push_back(Rational(0));
    return d;
}

/// Exact divided difference of a polynomial over rational nodes.
/// Repeated nodes take the derivative form f^(k-1)(x)/(k-1)! on each
/// equal block, mirroring the floating-point path bit for bit in intent.
inline Rational divided_difference(const std::vector<Rational>& coeffs,
                                   std::vector<Rational> nodes) {
    if (nodes.empty()) throw std::invalid_argument("divided difference needs nodes");
    std::sort(nodes.begin(), nodes.end());
    const std::size_t k = nodes.size();

    // Precompute derivative coefficient lists up to the largest block.
    std::vector<std::vector<Rational>> derivs{coeffs};
    for (std::size_t j = 1; j < k; ++j) derivs.push_back(poly_derivative(derivs.back()));

    // table[i] holds f[x_i, ..., x_{i+len-1}] for the current length.
    std::vector<Rational> table(k);
    for (std::size_t i = 0; i < k; ++i) table[i] = poly_eval(coeffs, nodes[i]);
    for (std::size_t len = 2; len <= k; ++len) {
        Rational fact(1);
        for (std::size_t j = 2; j < len; ++j)
            fact = fact * Rational(static_cast<std::int64_t>(j));
        for (std::size_t i = 0; i + len <= k; ++i) {
            const Rational lo = nodes[i], hi = nodes[i + len - 1];
            if (lo == hi) {
                table[i] = poly_eval(derivs[len - 1], lo) / fact;
            } else {
                table[i] = (table[i + 1] - table[i]) / (hi - lo);
            }
        }
    }
    return table[0];
}

} // namespace rational
} // namespace nnpres
