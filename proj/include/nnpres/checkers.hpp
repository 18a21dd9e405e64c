#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nnpres/divdiff.hpp"
#include "nnpres/errors.hpp"
#include "nnpres/function.hpp"
#include "nnpres/matfun.hpp"
#include "nnpres/matrix.hpp"
#include "nnpres/rng.hpp"
#include "nnpres/spectra.hpp"
#include "nnpres/structmat.hpp"
#include "nnpres/taylor.hpp"

namespace nnpres {

enum class Verdict { pass_exact, pass_sampled, fail };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass_exact: return "pass-exact";
        case Verdict::pass_sampled: return "pass-sampled";
        case Verdict::fail: return "fail";
    }
    return "?";
}

/// Concrete evidence behind a fail verdict: either a matrix with the
/// offending entry or a parameter tuple with the violated condition.
struct Witness {
    std::optional<Matrix> matrix;
    std::optional<std::pair<int, int>> entry; ///< 1-based when matrix present
    std::optional<std::vector<double>> params;
    std::string condition;
    int derivative_order = -1; ///< k for the derivative screens, else -1
    double value = 0.0;        ///< the violating quantity
};

struct CheckReport {
    Verdict verdict = Verdict::pass_sampled;
    std::optional<Witness> witness;
    long long samples = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0; ///< absolute threshold in effect for the verdict
    std::string note;
};

/// Sampling knobs shared by the membership checkers.
struct SamplerConfig {
    double grid_max = 10.0; ///< X: scans cover [0, X]
    int grid_points = 200;  ///< per axis
    int random_samples = 2000;
    std::uint64_t seed = 0;
    double base_tolerance = 1e-9; ///< tol = base * (1 + |f| scale)

    void validate() const {
        if (!(grid_max > 0.0) || grid_points < 1 || random_samples < 1 ||
            !(base_tolerance > 0.0))
            throw std::invalid_argument("sampler configuration values must be positive");
    }
};

namespace detail {

/// Ascending scan points: uniform grid on [0, X] merged with log-spaced
/// points down to X * 1e-12 (behavior near zero matters for the screens).
inline std::vector<double> scan_points(double x_max, int grid_points) {
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(grid_points) * 2 + 2);
    for (int i = 0; i <= grid_points; ++i)
        pts.push_back(x_max * static_cast<double>(i) / grid_points);
    for (int i = 1; i <= grid_points; ++i)
        pts.push_back(x_max * std::pow(10.0, -12.0 * static_cast<double>(i) / grid_points));
    std::sort(pts.begin(), pts.end());
    return pts;
}

/// coefficient list of the k-th derivative of an ascending coefficient list
inline std::vector<double> poly_kth_derivative(std::vector<double> c, int k) {
    for (int t = 0; t < k; ++t) c = poly_derivative(c);
    return c;
}

inline bool poly_is_zero(const std::vector<double>& c) {
    for (double v : c)
        if (v != 0.0) return false;
    return true;
}

/// Hunt a point where the polynomial tail has gone negative, doubling from
/// the scan edge. Guaranteed to terminate for a negative leading
/// coefficient.
inline std::pair<double, double> tail_witness(const std::vector<double>& coeffs, double from,
                                              double base_tol) {
    double x = std::max(from, 1.0);
    for (int i = 0; i < 400; ++i) {
        const double v = horner(coeffs, x);
        if (v < -base_tol * (1.0 + std::abs(v))) return {x, v};
        x *= 2.0;
    }
    return {x, horner(coeffs, x)}; // unreachable for truly negative tails
}

} // namespace detail

/**
 * @brief Scans f (and its derivatives up to order n-1) for negativity on
 * [0, X]; the common engine behind the scalar and derivative screens.
 *
 * For polynomial input the asymptotic tail is decided by the sign of the
 * leading coefficient, and a clean strictly-positive dense scan of a
 * degree <= 6 polynomial upgrades the verdict to pass-exact.
 */
inline CheckReport check_divdiff_criterion(const FunctionSpec& f, int n,
                                           const SamplerConfig& cfg = {}) {
    if (n < 1) throw std::invalid_argument("derivative screen needs order n >= 1");
    cfg.validate();
    CheckReport report;
    report.seed = cfg.seed;

    const std::vector<double> pts = detail::scan_points(cfg.grid_max, cfg.grid_points);
    const auto poly = f.as_polynomial();

    // Tolerances are local: 1e-9 scaled by the derivative magnitudes at the
    // sample point, which is what floating-point evaluation error tracks. A
    // single global scale would let the largest sampled value mask genuine
    // small-argument violations.
    auto local_tol = [&](const std::vector<double>& derivs) {
        double s = 0.0;
        for (double v : derivs) s += std::abs(v);
        return cfg.base_tolerance * (1.0 + s);
    };

    double max_tol = 0.0;
    // First violation in (k, x) order; polynomial tails after each clean scan.
    for (int k = 0; k < n; ++k) {
        for (double x : pts) {
            ++report.samples;
            const std::vector<double> d = derivatives(f, x, n - 1);
            const double tol = local_tol(d);
            max_tol = std::max(max_tol, tol);
            const double v = d[static_cast<std::size_t>(k)];
            if (v < -tol) {
                report.verdict = Verdict::fail;
                Witness w;
                w.params = std::vector<double>{x};
                w.derivative_order = k;
                w.value = v;
                w.condition = "derivative-nonneg";
                report.witness = std::move(w);
                report.tolerance = tol;
                return report;
            }
        }
        if (poly) {
            const std::vector<double> dk = detail::poly_kth_derivative(*poly, k);
            if (!detail::poly_is_zero(dk) && dk.back() < 0.0) {
                const auto [x, v] = detail::tail_witness(dk, 2.0 * cfg.grid_max, cfg.base_tolerance);
                report.verdict = Verdict::fail;
                Witness w;
                w.params = std::vector<double>{x};
                w.derivative_order = k;
                w.value = v;
                w.condition = "derivative-tail";
                report.witness = std::move(w);
                report.tolerance = max_tol;
                return report;
            }
        }
    }
    report.tolerance = max_tol;

    // Exactness upgrade for low-degree polynomials: strictly positive dense
    // scan at every order plus a positive (or identically zero) tail.
    report.verdict = Verdict::pass_sampled;
    if (poly && static_cast<int>(poly->size()) - 1 <= 6) {
        const std::vector<double> dense = detail::scan_points(cfg.grid_max, 10000);
        std::vector<std::vector<double>> dlists;
        for (int k = 0; k < n; ++k) dlists.push_back(detail::poly_kth_derivative(*poly, k));
        bool exact = true;
        for (int k = 0; k < n && exact; ++k) {
            if (detail::poly_is_zero(dlists[static_cast<std::size_t>(k)]))
                continue; // identically zero is nonnegative exactly
            if (dlists[static_cast<std::size_t>(k)].back() < 0.0) {
                exact = false;
                break;
            }
            for (double x : dense) {
                double s = 0.0;
                for (int j = 0; j < n; ++j)
                    s += std::abs(detail::horner(dlists[static_cast<std::size_t>(j)], x));
                if (detail::horner(dlists[static_cast<std::size_t>(k)], x) <=
                    cfg.base_tolerance * (1.0 + s)) {
                    exact = false;
                    break;
                }
            }
        }
        if (exact) report.verdict = Verdict::pass_exact;
    }
    return report;
}

/// Scalar screen: f >= 0 on [0, X] plus the polynomial tail; order-1 case
/// of the derivative screen.
inline CheckReport check_f1(const FunctionSpec& f, const SamplerConfig& cfg = {}) {
    CheckReport report = check_divdiff_criterion(f, 1, cfg);
    if (report.witness)
        report.witness->condition =
            report.witness->condition == "derivative-tail" ? "scalar-tail" : "scalar-nonneg";
    return report;
}

/**
 * @brief Circulant preservation screen at order n.
 *
 * Draws nonnegative first rows (uniform, sparse, and near-boundary
 * mixtures), pushes them through the spectrum formula, and flags any of the
 * n inverse-transform sums below -tol. The witness records the circulant
 * matrix and the entry whose value is sum / n.
 */
inline CheckReport check_circulant_preservation(const FunctionSpec& f, int n,
                                                const SamplerConfig& cfg = {}) {
    if (n < 1) throw std::invalid_argument("circulant screen needs order n >= 1");
    cfg.validate();
    CheckReport report;
    report.seed = cfg.seed;

    auto draw_row = [&](long long idx) {
        Rng rng = Rng::for_sample(cfg.seed, static_cast<std::uint64_t>(idx));
        std::vector<double> row(static_cast<std::size_t>(n), 0.0);
        switch (idx % 3) {
            case 0: // uniform
                for (auto& v : row) v = rng.uniform(0.0, cfg.grid_max);
                break;
            case 1: // sparse
                for (auto& v : row)
                    if (rng.coin()) v = rng.uniform(0.0, cfg.grid_max);
                break;
            default: // near-boundary: one dominant entry over a tiny floor
                for (auto& v : row) v = rng.uniform(0.0, 1e-3 * cfg.grid_max);
                row[rng.uniform_index(static_cast<std::uint64_t>(n))] =
                    rng.uniform(0.0, cfg.grid_max);
                break;
        }
        return row;
    };

    double max_tol = 0.0;
    for (long long idx = 0; idx < cfg.random_samples; ++idx) {
        ++report.samples;
        const std::vector<double> row = draw_row(idx);
        const std::vector<double> fr = apply_circulant(f, row);
        // Per-row tolerance from the spectrum-point magnitudes: that is
        // what the transform's rounding error is proportional to, even when
        // the resulting sums cancel to something small.
        double fsum = 0.0;
        for (const auto& lambda : circ_spectrum(row).values) fsum += std::abs(eval(f, lambda));
        const double tol = cfg.base_tolerance * (1.0 + fsum);
        max_tol = std::max(max_tol, tol);
        for (int l = 0; l < n; ++l) {
            const double sum = static_cast<double>(n) * fr[static_cast<std::size_t>(l)];
            if (sum < -tol) {
                // Re-verify through the Taylor oracle before reporting; the
                // matrix entry carries sum / n.
                const Matrix a = circulant_from_row(row);
                const Matrix fa = apply_taylor(f, a);
                if (fa(0, l) >= -cfg.base_tolerance * (1.0 + max_norm(fa)) / n) continue;
                report.verdict = Verdict::fail;
                Witness w;
                w.matrix = a;
                w.entry = {1, l + 1};
                w.value = sum;
                w.condition = "circulant-sum l=" + std::to_string(l);
                report.witness = std::move(w);
                report.note = "value is the inverse-transform sum; the matrix entry is value / n";
                report.tolerance = tol;
                return report;
            }
        }
    }
    report.verdict = Verdict::pass_sampled;
    report.tolerance = max_tol;
    return report;
}

/**
 * @brief Order-2 membership screen via the two scalar inequalities
 *   f(x+y) - f(x-y) >= 0            for x, y >= 0,
 *   (x+y) f(x-y) + (y-x) f(x+y) >= 0  for y >= x >= 0,
 * sampled on a grid plus random pairs.
 *
 * The equivalent three-parameter form
 *   (x+y-z) f(x-y) + (z-x+y) f(x+y) >= 0  for x >= z >= 0, y >= x-z
 * is sampled as a cross-check; a verdict disagreement between the two
 * condition sets is reported in the note as an internal inconsistency.
 */
inline CheckReport check_f2(const FunctionSpec& f, const SamplerConfig& cfg = {}) {
    cfg.validate();
    CheckReport report;
    report.seed = cfg.seed;

    const double X = cfg.grid_max;
    const int g = cfg.grid_points;

    auto random_pair = [&](long long idx) {
        Rng rng = Rng::for_sample(cfg.seed, 0x2b000000ULL + static_cast<std::uint64_t>(idx));
        return std::pair<double, double>{rng.uniform(0.0, X), rng.uniform(0.0, X)};
    };
    auto random_triple = [&](long long idx) {
        Rng rng = Rng::for_sample(cfg.seed, 0x3b000000ULL + static_cast<std::uint64_t>(idx));
        const double x = rng.uniform(0.0, X);
        const double z = rng.uniform(0.0, x);
        const double y = (x - z) + rng.uniform(0.0, X);
        return std::array<double, 3>{x, y, z};
    };

    // Local tolerances: each inequality is compared against 1e-9 scaled by
    // the magnitudes of its own summands, which is what the evaluation
    // error tracks. A global scale would let the box corner mask genuine
    // small-argument violations.
    double max_tol = 0.0;
    std::optional<Witness> primary;
    double witness_tol = 0.0;

    auto difference_violation = [&](double x, double y, double& value, double& tol) {
        const double fp = eval(f, x + y), fm = eval(f, x - y);
        value = fp - fm;
        tol = cfg.base_tolerance * (1.0 + std::abs(fp) + std::abs(fm));
        max_tol = std::max(max_tol, tol);
        return value < -tol;
    };
    auto weighted_violation = [&](double x, double y, double z, double& value, double& tol) {
        const double fp = eval(f, x + y), fm = eval(f, x - y);
        value = (x + y - z) * fm + (z - x + y) * fp;
        tol = cfg.base_tolerance *
              (1.0 + std::abs((x + y - z) * fm) + std::abs((z - x + y) * fp));
        max_tol = std::max(max_tol, tol);
        return value < -tol;
    };

    auto consider = [&](const char* condition, bool violated, double value, double tol,
                        std::vector<double> params) {
        if (!violated || primary) return;
        Witness w;
        w.params = std::move(params);
        w.condition = condition;
        w.value = value;
        primary = std::move(w);
        witness_tol = tol;
    };

    double value = 0.0, tol = 0.0;
    for (int i = 0; i <= g; ++i) {
        for (int j = 0; j <= g; ++j) {
            const double x = X * i / g, y = X * j / g;
            ++report.samples;
            consider("2by2-1", difference_violation(x, y, value, tol), value, tol, {x, y});
            if (y >= x)
                consider("2by2-2'", weighted_violation(x, y, 0.0, value, tol), value, tol, {x, y});
        }
    }
    // The three-parameter form at z = 0 is the weighted condition verbatim,
    // so the two condition sets can only disagree through a z > 0 triple
    // violating while the primary pair scan stays clean.
    bool triple_fail = false;
    std::array<double, 3> triple_witness{};
    double triple_value = 0.0, triple_tol = 0.0;
    for (long long idx = 0; idx < cfg.random_samples; ++idx) {
        const auto [x, y] = random_pair(idx);
        ++report.samples;
        consider("2by2-1", difference_violation(x, y, value, tol), value, tol, {x, y});
        if (y >= x)
            consider("2by2-2'", weighted_violation(x, y, 0.0, value, tol), value, tol, {x, y});
        const auto t = random_triple(idx);
        if (weighted_violation(t[0], t[1], t[2], value, tol) && !triple_fail) {
            triple_fail = true;
            triple_witness = t;
            triple_value = value;
            triple_tol = tol;
        }
    }

    if (primary) {
        report.verdict = Verdict::fail;
        report.witness = std::move(primary);
        report.tolerance = witness_tol;
    } else {
        report.verdict = Verdict::pass_sampled;
        report.tolerance = max_tol;
        if (triple_fail) {
            // Equivalent condition set caught what the primary one missed.
            report.verdict = Verdict::fail;
            Witness w;
            w.params = {triple_witness[0], triple_witness[1], triple_witness[2]};
            w.condition = "2by2-2";
            w.value = triple_value;
            report.witness = std::move(w);
            report.tolerance = triple_tol;
            report.note =
                "internal inconsistency: three-parameter cross-check fails while the primary condition set passes";
        }
    }
    return report;
}

/**
 * @brief Parity-restricted symmetric screen: for even f runs the derivative
 * screen on g (f(z) = g(z^2)), for odd f on h (f(z) = z h(z^2)).
 *
 * Mixed-parity input throws MixedParity. Named functions whose g/h have no
 * closed form in this representation are rejected with invalid_argument.
 */
inline CheckReport check_sym_parity(const FunctionSpec& f, int n, const SamplerConfig& cfg = {}) {
    const ParityParts parts = parity_decompose(f);
    const bool is_even = parts.f_odd.is_identically_zero();
    const bool is_odd = parts.f_even.is_identically_zero();
    if (!is_even && !is_odd)
        throw MixedParity("function is neither even nor odd");

    const std::optional<FunctionSpec>& factor = is_even ? parts.g : parts.h;
    if (!factor)
        throw std::invalid_argument(
            "square-argument factor is not extractable for this function; supply a polynomial");

    CheckReport report = check_divdiff_criterion(*factor, n, cfg);
    report.note = is_even ? "screened g with f_even(z) = g(z^2)" : "screened h with f_odd(z) = z h(z^2)";
    return report;
}

/**
 * @brief Screen over sign-alternating tuples x_1 > -x_2 > x_3 > ... > 0:
 * the full divided difference must be nonnegative, and so must each
 * leave-one-out correction f[x without k] - (sum_{j != k} x_j) f[x].
 */
inline CheckReport check_newnc(const FunctionSpec& f, int n, const SamplerConfig& cfg = {}) {
    if (n < 2) throw std::invalid_argument("alternating-tuple screen needs n >= 2");
    cfg.validate();
    CheckReport report;
    report.seed = cfg.seed;

    auto draw_tuple = [&](long long idx) {
        Rng rng = Rng::for_sample(cfg.seed, 0x4b000000ULL + static_cast<std::uint64_t>(idx));
        const double scale = cfg.grid_max * std::pow(10.0, -static_cast<double>(idx % 3));
        std::vector<double> mags(static_cast<std::size_t>(n));
        for (int attempt = 0; attempt < 100; ++attempt) {
            if (idx % 2 == 0) {
                for (auto& m : mags) m = rng.uniform(1e-6 * scale, scale);
                std::sort(mags.rbegin(), mags.rend());
            } else {
                // clustered magnitudes stress the confluent end
                mags[0] = rng.uniform(0.5 * scale, scale);
                for (std::size_t i = 1; i < mags.size(); ++i)
                    mags[i] = mags[i - 1] * rng.uniform(0.5, 0.99);
            }
            bool strict = mags.back() > 0.0;
            for (std::size_t i = 0; i + 1 < mags.size() && strict; ++i)
                strict = mags[i] - mags[i + 1] > 1e-9 * scale;
            if (strict) break;
        }
        std::vector<double> xs(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            xs[static_cast<std::size_t>(j)] = (j % 2 == 0 ? 1.0 : -1.0) * mags[static_cast<std::size_t>(j)];
        return xs;
    };

    double max_tol = 0.0;
    for (long long idx = 0; idx < cfg.random_samples; ++idx) {
        ++report.samples;
        const std::vector<double> xs = draw_tuple(idx);
        const double dd_full = divided_difference(f, xs).value;
        double sum_all = 0.0;
        for (double x : xs) sum_all += x;

        double scale = std::abs(dd_full);
        std::vector<double> dd_loo(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            std::vector<double> rest;
            rest.reserve(static_cast<std::size_t>(n) - 1);
            for (int j = 0; j < n; ++j)
                if (j != k) rest.push_back(xs[static_cast<std::size_t>(j)]);
            dd_loo[static_cast<std::size_t>(k)] = divided_difference(f, rest).value;
            scale = std::max(scale, std::abs(dd_loo[static_cast<std::size_t>(k)]));
            scale = std::max(scale, std::abs((sum_all - xs[static_cast<std::size_t>(k)]) * dd_full));
        }
        const double tol = cfg.base_tolerance * (1.0 + scale);
        max_tol = std::max(max_tol, tol);

        if (dd_full < -tol) {
            report.verdict = Verdict::fail;
            Witness w;
            w.params = xs;
            w.condition = "newnc1";
            w.value = dd_full;
            report.witness = std::move(w);
            report.tolerance = tol;
            return report;
        }
        for (int k = 0; k < n; ++k) {
            const double v = dd_loo[static_cast<std::size_t>(k)] -
                             (sum_all - xs[static_cast<std::size_t>(k)]) * dd_full;
            if (v < -tol) {
                report.verdict = Verdict::fail;
                Witness w;
                w.params = xs;
                w.condition = "newnc2 k=" + std::to_string(k + 1);
                w.value = v;
                report.witness = std::move(w);
                report.tolerance = tol;
                return report;
            }
        }
    }
    report.verdict = Verdict::pass_sampled;
    report.tolerance = max_tol;
    return report;
}

enum class MatrixClass { general, triangular, circulant, symmetric };

inline std::string to_string(MatrixClass c) {
    switch (c) {
        case MatrixClass::general: return "general";
        case MatrixClass::triangular: return "triangular";
        case MatrixClass::circulant: return "circulant";
        case MatrixClass::symmetric: return "symmetric";
    }
    return "?";
}

namespace detail {

/// Class-constrained nonnegative sample. Patterns cycle through dense,
/// sparse, and class-specific boundary families (hollow symmetric matrices,
/// clustered bidiagonal triangulars, dominant-entry circulant rows); entry
/// scales sweep {0.1, 1, 10}.
inline Matrix draw_matrix(MatrixClass cls, int n, std::uint64_t seed, std::uint64_t idx) {
    Rng rng = Rng::for_sample(seed, idx);
    const double scale = std::pow(10.0, static_cast<double>(idx % 3) - 1.0);
    const std::uint64_t pattern = (idx / 3) % 4;
    Matrix a(n);

    auto dense = [&](auto&& put) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) put(i, j, rng.uniform(0.0, scale));
    };
    auto sparse = [&](auto&& put) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) put(i, j, rng.coin() ? rng.uniform(0.0, scale) : 0.0);
    };

    switch (cls) {
        case MatrixClass::general: {
            auto put = [&](int i, int j, double v) { a(i, j) = v; };
            if (pattern == 0 || pattern == 3)
                dense(put);
            else
                sparse(put);
            break;
        }
        case MatrixClass::triangular: {
            auto put = [&](int i, int j, double v) {
                if (i <= j) a(i, j) = v;
            };
            if (pattern == 0) {
                dense(put);
            } else if (pattern == 1) {
                sparse(put);
            } else {
                // Clustered leading diagonal with a unit superdiagonal: the
                // top-right corner of f(A) on the leading block is then a
                // near-confluent divided difference, which is where the
                // derivative screens bite.
                const int block = 2 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n - 1)));
                const double center = rng.uniform(0.0, scale);
                for (int i = 0; i < n; ++i) {
                    a(i, i) = (i < block) ? center * (1.0 + 1e-3 * rng.uniform01())
                                          : rng.uniform(0.0, scale);
                    if (i + 1 < n) a(i, i + 1) = 1.0;
                    if (pattern == 3)
                        for (int j = i + 2; j < n; ++j)
                            a(i, j) = rng.coin() ? rng.uniform(0.0, scale) : 0.0;
                }
            }
            a.retag(Structure::upper_triangular);
            break;
        }
        case MatrixClass::circulant: {
            std::vector<double> row(static_cast<std::size_t>(n), 0.0);
            if (pattern == 0) {
                for (auto& v : row) v = rng.uniform(0.0, scale);
            } else if (pattern == 1) {
                for (auto& v : row)
                    if (rng.coin()) v = rng.uniform(0.0, scale);
            } else {
                for (auto& v : row) v = rng.uniform(0.0, 1e-3 * scale);
                row[rng.uniform_index(static_cast<std::uint64_t>(n))] = rng.uniform(0.0, scale);
            }
            return circulant_from_row(row);
        }
        case MatrixClass::symmetric: {
            auto put_sym = [&](int i, int j, double v) {
                if (i <= j) a(i, j) = a(j, i) = v;
            };
            if (pattern == 0) {
                dense(put_sym);
            } else if (pattern == 1) {
                sparse(put_sym);
            } else {
                // hollow: zero diagonal drives indefinite spectra, which is
                // the regime the definiteness-free screens must survive
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j)
                        put_sym(i, j, rng.coin() ? rng.uniform(0.0, scale) : 0.0);
                if (pattern == 3) {
                    const int d = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)));
                    a(d, d) = rng.uniform(0.0, scale);
                }
            }
            a.retag(Structure::symmetric);
            break;
        }
    }
    return a;
}

/// f(A) by the method matching the class constraint.
inline Matrix falsify_evaluate(const FunctionSpec& f, MatrixClass cls, const Matrix& a) {
    switch (cls) {
        case MatrixClass::general:
            return apply_taylor(f, a);
        case MatrixClass::triangular:
            return apply_triangular_explicit(f, a);
        case MatrixClass::circulant: {
            std::vector<double> row(static_cast<std::size_t>(a.order()));
            for (int j = 0; j < a.order(); ++j) row[static_cast<std::size_t>(j)] = a(0, j);
            const std::vector<double> fr = apply_circulant(f, row);
            return circulant_from_row(fr);
        }
        case MatrixClass::symmetric:
            return apply_newton(f, a, sym_eigs(a));
    }
    return apply_taylor(f, a);
}

struct EntryMin {
    int i = 0, j = 0;
    double value = 0.0;
};

inline EntryMin min_entry(const Matrix& m) {
    EntryMin best{0, 0, m(0, 0)};
    for (int i = 0; i < m.order(); ++i)
        for (int j = 0; j < m.order(); ++j)
            if (m(i, j) < best.value) best = {i, j, m(i, j)};
    return best;
}

/// Most negative entry of f(A) under the Taylor oracle: the quantity the
/// minimizer must preserve.
inline EntryMin taylor_violation(const FunctionSpec& f, const Matrix& a) {
    return min_entry(apply_taylor(f, a));
}

/// Free coordinates of a class-constrained matrix, as (i, j) representatives.
inline std::vector<std::pair<int, int>> free_positions(MatrixClass cls, int n) {
    std::vector<std::pair<int, int>> pos;
    switch (cls) {
        case MatrixClass::general:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) pos.emplace_back(i, j);
            break;
        case MatrixClass::triangular:
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) pos.emplace_back(i, j);
            break;
        case MatrixClass::circulant:
            for (int j = 0; j < n; ++j) pos.emplace_back(0, j);
            break;
        case MatrixClass::symmetric:
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) pos.emplace_back(i, j);
            break;
    }
    return pos;
}

inline void set_position(Matrix& m, MatrixClass cls, int i, int j, double v) {
    if (cls == MatrixClass::circulant) {
        const int n = m.order();
        for (int r = 0; r < n; ++r) m(r, (j + r) % n) = v;
    } else {
        m(i, j) = v;
        if (cls == MatrixClass::symmetric) m(j, i) = v;
    }
}

/**
 * Shrink witness entries toward zero by per-entry bisection while the
 * Taylor-verified violation keeps at least half its confirmed magnitude
 * (and stays clear of the tolerance); entries that do not matter drop to
 * exact zero, which keeps witnesses auditable by hand.
 */
inline Matrix minimize_witness(const FunctionSpec& f, MatrixClass cls, Matrix w, double tol) {
    const double v0 = taylor_violation(f, w).value;
    // Keep at least half the confirmed violation and a clear margin over
    // the tolerance; marginal witnesses are left as found.
    const double floor_value = std::max(std::min(0.5 * v0, -10.0 * tol), v0);
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& [i, j] : free_positions(cls, w.order())) {
            const double original = w(i, j);
            if (original == 0.0) continue;
            Matrix trial = w;
            set_position(trial, cls, i, j, 0.0);
            if (taylor_violation(f, trial).value <= floor_value) {
                w = trial;
                continue;
            }
            double lo = 0.0, hi = original;
            for (int step = 0; step < 12; ++step) {
                const double mid = 0.5 * (lo + hi);
                set_position(trial, cls, i, j, mid);
                if (taylor_violation(f, trial).value <= floor_value)
                    hi = mid;
                else
                    lo = mid;
            }
            set_position(w, cls, i, j, hi);
        }
    }
    return w;
}

/// Permutation-similarity normalization for symmetric witnesses: bring the
/// most negative entry toward the top-left so reports read like the
/// hand-worked examples.
inline Matrix canonicalize_symmetric(const FunctionSpec& f, Matrix w) {
    const EntryMin em = taylor_violation(f, w);
    auto swap_rc = [&](Matrix& m, int p, int q) {
        if (p == q) return;
        for (int k = 0; k < m.order(); ++k) std::swap(m(p, k), m(q, k));
        for (int k = 0; k < m.order(); ++k) std::swap(m(k, p), m(k, q));
    };
    int i = em.i, j = em.j;
    if (i > j) std::swap(i, j);
    if (i == j) {
        swap_rc(w, 0, i);
    } else {
        swap_rc(w, 0, i); // i < j, so column j is untouched by this swap
        swap_rc(w, 1, j);
    }
    return w;
}

} // namespace detail

/**
 * @brief Seeded randomized search for a nonnegative matrix in the given
 * class whose image under f has a negative entry.
 *
 * Every candidate negative entry is re-verified through the Taylor oracle
 * before it counts. The first confirmed hit does not end the search: a
 * bounded continuation window keeps scanning for the strongest confirmed
 * violation, so marginal first hits cannot produce near-tolerance
 * witnesses. The winner is then shrunk toward a small auditable matrix.
 * Deterministic in (seed, budget) regardless of how callers partition the
 * sample loop.
 */
inline CheckReport falsify(const FunctionSpec& f, MatrixClass cls, int n, long long budget,
                           std::uint64_t seed, const SamplerConfig& cfg = {}) {
    if (budget < 1) throw std::invalid_argument("falsify needs budget >= 1");
    if (n < 1) throw std::invalid_argument("falsify needs order n >= 1");
    cfg.validate();
    constexpr long long kContinuationWindow = 3000;
    CheckReport report;
    report.seed = seed;

    double max_tol = 0.0;
    std::optional<Matrix> best;
    double best_value = 0.0, best_tol = 0.0;
    long long stop_at = budget;
    long long idx = 0;
    for (; idx < stop_at; ++idx) {
        ++report.samples;
        const Matrix a = detail::draw_matrix(cls, n, seed, static_cast<std::uint64_t>(idx));
        const Matrix fa = detail::falsify_evaluate(f, cls, a);
        const double tol = cfg.base_tolerance * (1.0 + max_norm(fa));
        max_tol = std::max(max_tol, tol);
        const detail::EntryMin candidate = detail::min_entry(fa);
        if (candidate.value >= -tol) continue;

        // Soundness gate: the class method found a violation; only the
        // Taylor oracle can certify it.
        const detail::EntryMin confirmed = detail::taylor_violation(f, a);
        const double ctol = cfg.base_tolerance * (1.0 + max_norm(apply_taylor(f, a)));
        if (confirmed.value >= -ctol) continue;

        if (!best) stop_at = std::min(budget, idx + 1 + kContinuationWindow);
        if (!best || confirmed.value < best_value) {
            best = a;
            best_value = confirmed.value;
            best_tol = ctol;
        }
    }

    if (best) {
        Matrix w = detail::minimize_witness(f, cls, *best, best_tol);
        if (cls == MatrixClass::symmetric) w = detail::canonicalize_symmetric(f, w);
        const detail::EntryMin final_entry = detail::taylor_violation(f, w);
        report.verdict = Verdict::fail;
        Witness wit;
        wit.matrix = w;
        wit.entry = {final_entry.i + 1, final_entry.j + 1};
        wit.value = final_entry.value;
        wit.condition = "entrywise-nonneg " + to_string(cls);
        report.witness = std::move(wit);
        report.tolerance = best_tol;
        return report;
    }
    report.verdict = Verdict::pass_sampled;
    report.tolerance = max_tol;
    return report;
}

} // namespace nnpres
