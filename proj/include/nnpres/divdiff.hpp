#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "nnpres/function.hpp"
#include "nnpres/matrix.hpp"
#include "nnpres/taylor.hpp"

namespace nnpres {

/// A divided difference together with its sorted node multiset.
struct DivDiffResult {
    std::vector<double> nodes; ///< ascending
    int order;                 ///< node count k
    double value;              ///< f[x_1, ..., x_k]
};

/// Node gaps below this are treated as coincident and routed to the
/// derivative formula; the raw recurrence loses all digits as nodes collide.
inline double confluence_tolerance(const std::vector<double>& nodes) {
    double m = 0.0;
    for (double x : nodes) m = std::max(m, std::abs(x));
    return 1e-9 * (1.0 + m);
}

/**
 * @brief f[x_1, ..., x_k] via the standard recurrence.
 *
 * Nodes are sorted first, so the result is exactly invariant under input
 * permutations. A full triangular table is built per call; spans whose
 * endpoints agree within the confluence tolerance take
 * f^(k-1)(x_first) / (k-1)! instead of the difference quotient.
 */
inline DivDiffResult divided_difference(const FunctionSpec& f, std::vector<double> nodes) {
    if (nodes.empty()) throw std::invalid_argument("divided difference needs at least one node");
    for (double x : nodes)
        if (!std::isfinite(x)) throw std::invalid_argument("divided difference nodes must be finite");
    std::sort(nodes.begin(), nodes.end());
    const std::size_t k = nodes.size();
    const double tau = confluence_tolerance(nodes);

    // Derivative values are shared across confluent spans starting at the
    // same node; fetch each start point's derivatives once, lazily.
    std::vector<std::vector<double>> deriv_cache(k);
    auto confluent_value = [&](std::size_t i, std::size_t len) {
        auto& d = deriv_cache[i];
        if (d.size() < k) d = derivatives(f, nodes[i], static_cast<int>(k) - 1);
        double fact = 1.0;
        for (std::size_t j = 2; j < len; ++j) fact *= static_cast<double>(j);
        return d[len - 1] / fact;
    };

    std::vector<double> table(k);
    for (std::size_t i = 0; i < k; ++i) table[i] = eval(f, nodes[i]);
    for (std::size_t len = 2; len <= k; ++len) {
        for (std::size_t i = 0; i + len <= k; ++i) {
            const double gap = nodes[i + len - 1] - nodes[i];
            table[i] = (gap <= tau) ? confluent_value(i, len)
                                    : (table[i + 1] - table[i]) / gap;
        }
    }
    return DivDiffResult{std::move(nodes), static_cast<int>(k), table[0]};
}

/**
 * @brief Independent divided-difference oracle through f(A).
 *
 * Builds the bidiagonal matrix with the nodes on the diagonal and ones on
 * the first superdiagonal; entry (1, k) of f(A) is f[x_1, ..., x_k]. The
 * evaluation goes through the Taylor oracle, so this path shares nothing
 * with the recurrence it checks.
 */
inline double opitz_matrix_check(const FunctionSpec& f, std::vector<double> nodes) {
    if (nodes.empty()) throw std::invalid_argument("divided difference needs at least one node");
    std::sort(nodes.begin(), nodes.end());
    const int k = static_cast<int>(nodes.size());
    Matrix a(k);
    for (int i = 0; i < k; ++i) {
        a(i, i) = nodes[static_cast<std::size_t>(i)];
        if (i + 1 < k) a(i, i + 1) = 1.0;
    }
    return apply_taylor(f, a)(0, k - 1);
}

} // namespace nnpres
