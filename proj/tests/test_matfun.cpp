#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "nnpres/matfun.hpp"
#include "nnpres/structmat.hpp"
#include "support/corpus.hpp"

using namespace nnpres;
using Catch::Matchers::WithinAbs;

namespace {

void check_close(const Matrix& got, const Matrix& want, double tol) {
    REQUIRE(got.order() == want.order());
    for (int i = 0; i < got.order(); ++i)
        for (int j = 0; j < got.order(); ++j)
            CHECK_THAT(got(i, j), WithinAbs(want(i, j), tol));
}

} // namespace

TEST_CASE("taylor oracle: hand values") {
    const Matrix swap2 = Matrix::from_rows({{0, 1}, {1, 0}}, Structure::symmetric);
    const Matrix e = apply_taylor(FunctionSpec::named(NamedFunction::exp), swap2);
    CHECK_THAT(e(0, 0), WithinAbs(std::cosh(1.0), 1e-14));
    CHECK_THAT(e(0, 1), WithinAbs(std::sinh(1.0), 1e-14));
    CHECK_THAT(e(1, 0), WithinAbs(std::sinh(1.0), 1e-14));
    CHECK_THAT(e(1, 1), WithinAbs(std::cosh(1.0), 1e-14));

    const Matrix sq = apply_taylor(FunctionSpec::polynomial({0, 0, 1}), shift_nilpotent(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(sq(i, j) == ((i == 0 && j == 2) ? 1.0 : 0.0));

    const Matrix q = apply_taylor(corpus::quartic(), Matrix::from_rows({{0, 2}, {2, 0}}));
    CHECK_THAT(q(0, 0), WithinAbs(7.0, 1e-12));
    CHECK_THAT(q(0, 1), WithinAbs(-10.0 / 3.0, 1e-12));
    CHECK_THAT(q(1, 0), WithinAbs(-10.0 / 3.0, 1e-12));
    CHECK_THAT(q(1, 1), WithinAbs(7.0, 1e-12));
}

TEST_CASE("taylor oracle: scaling and squaring at large norms") {
    // 2x2 involution scaled: exp([[0,M],[M,0]]) = [[cosh M, sinh M], ...]
    const double m = 37.0;
    const Matrix big = apply_taylor(FunctionSpec::named(NamedFunction::exp),
                                    Matrix::from_rows({{0, m}, {m, 0}}));
    CHECK_THAT(big(0, 0), WithinAbs(std::cosh(m), 1e-9 * std::cosh(m)));
    CHECK_THAT(big(0, 1), WithinAbs(std::sinh(m), 1e-9 * std::sinh(m)));

    const Matrix trig = apply_taylor(FunctionSpec::named(NamedFunction::sin),
                                     Matrix::from_rows({{0, m}, {m, 0}}));
    CHECK_THAT(trig(0, 1), WithinAbs(std::sin(m), 1e-9));
    CHECK_THAT(trig(0, 0), WithinAbs(0.0, 1e-9));
}

TEST_CASE("newton form: hand values") {
    const Matrix anti = Matrix::from_rows({{0, 2}, {2, 0}}, Structure::symmetric);
    const Matrix q = apply_newton(corpus::quartic(), anti, Spectrum{{-2.0, 2.0}, SpectrumMethod::closed_form_2x2});
    CHECK_THAT(q(0, 1), WithinAbs(-10.0 / 3.0, 1e-12));
    CHECK_THAT(q(0, 0), WithinAbs(7.0, 1e-12));

    const Matrix single = apply_newton(corpus::quartic(), Matrix::from_rows({{1.7}}),
                                       Spectrum{{1.7}, SpectrumMethod::diagonal_readoff});
    CHECK_THAT(single(0, 0), WithinAbs(eval(corpus::quartic(), 1.7), 1e-13));

    const Matrix sq = apply_newton(FunctionSpec::polynomial({0, 0, 1}),
                                   Matrix::from_rows({{2, 1}, {1, 2}}, Structure::symmetric),
                                   Spectrum{{1.0, 3.0}, SpectrumMethod::closed_form_2x2});
    check_close(sq, Matrix::from_rows({{5, 4}, {4, 5}}), 1e-12);
}

TEST_CASE("newton form rejects nonreal spectra") {
    ComplexSpectrum s{{{0.0, 1.0}, {0.0, -1.0}}, SpectrumMethod::dft};
    CHECK_THROWS_AS(apply_newton(FunctionSpec::named(NamedFunction::exp),
                                 Matrix::from_rows({{0, 1}, {1, 0}}), s),
                    ComplexSpectrumError);
}

TEST_CASE("triangular explicit formula: hand values") {
    const FunctionSpec sq = FunctionSpec::polynomial({0, 0, 1});
    const Matrix t = apply_triangular_explicit(sq, Matrix::from_rows({{1, 1}, {0, 2}}, Structure::upper_triangular));
    check_close(t, Matrix::from_rows({{1, 3}, {0, 4}}), 1e-13);

    // entry (1,2) is exactly f[x1, x2]
    const double x1 = 0.7, x2 = 2.9;
    const Matrix dd = apply_triangular_explicit(corpus::quartic(),
                                                Matrix::from_rows({{x1, 1}, {0, x2}}, Structure::upper_triangular));
    CHECK_THAT(dd(0, 1), WithinAbs(divided_difference(corpus::quartic(), {x1, x2}).value, 1e-12));

    const Matrix diag = apply_triangular_explicit(corpus::quartic(),
                                                  Matrix::from_rows({{1, 0}, {0, 3}}, Structure::upper_triangular));
    CHECK(diag(0, 1) == 0.0);
    CHECK_THAT(diag(0, 0), WithinAbs(eval(corpus::quartic(), 1.0), 1e-13));
    CHECK_THAT(diag(1, 1), WithinAbs(eval(corpus::quartic(), 3.0), 1e-13));

    CHECK_THROWS_AS(apply_triangular_explicit(sq, Matrix::from_rows({{0, 0}, {1, 0}})), NotTriangular);
}

TEST_CASE("circulant evaluation: hand values") {
    const auto constant = apply_circulant(FunctionSpec::constant(2.5), {0.4, 1.0, 0.2, 0.7});
    CHECK_THAT(constant[0], WithinAbs(2.5, 1e-12));
    for (int l = 1; l < 4; ++l) CHECK_THAT(constant[static_cast<std::size_t>(l)], WithinAbs(0.0, 1e-12));

    const auto sq = apply_circulant(FunctionSpec::polynomial({0, 0, 1}), {0.0, 1.0, 0.0});
    CHECK_THAT(sq[0], WithinAbs(0.0, 1e-12));
    CHECK_THAT(sq[1], WithinAbs(0.0, 1e-12));
    CHECK_THAT(sq[2], WithinAbs(1.0, 1e-12));

    const auto e = apply_circulant(FunctionSpec::named(NamedFunction::exp), {0.0, 1.0});
    CHECK_THAT(e[0], WithinAbs(std::cosh(1.0), 1e-12));
    CHECK_THAT(e[1], WithinAbs(std::sinh(1.0), 1e-12));
}

TEST_CASE("sylvester solve: hand values") {
    const auto one = solve_sylvester(Matrix::from_rows({{2}}), Matrix::from_rows({{1}}),
                                     Matrix::from_rows({{1}}));
    CHECK_THAT(one.x(0, 0), WithinAbs(1.0, 1e-13));
    CHECK(one.residual < 1e-12);

    const auto zero = solve_sylvester(Matrix::from_rows({{3, 1}, {0, 2}}),
                                      Matrix::from_rows({{1}}), Matrix(2));
    CHECK(zero.x(0, 0) == 0.0);
    CHECK(zero.x(1, 0) == 0.0);

    const auto two = solve_sylvester(Matrix::from_rows({{3}}), Matrix::from_rows({{1}}),
                                     Matrix::from_rows({{4}}));
    CHECK_THAT(two.x(0, 0), WithinAbs(2.0, 1e-13));

    CHECK_THROWS_AS(solve_sylvester(Matrix::from_rows({{1}}), Matrix::from_rows({{1}}),
                                    Matrix::from_rows({{1}})),
                    SpectraOverlap);
}

TEST_CASE("block-triangular formula: hand values") {
    Matrix m = Matrix::from_rows({{2, 1}, {0, 1}}, Structure::block_upper_triangular, 1);
    const Matrix f = apply_block_triangular(FunctionSpec::polynomial({0, 0, 1}), m);
    check_close(f, Matrix::from_rows({{4, 3}, {0, 1}}), 1e-12);

    Matrix blockdiag = Matrix::from_rows({{2, 0, 0}, {0, 5, 1}, {0, 1, 5}},
                                         Structure::block_upper_triangular, 1);
    const Matrix g = apply_block_triangular(FunctionSpec::named(NamedFunction::exp), blockdiag);
    const Matrix expected_c = apply_taylor(FunctionSpec::named(NamedFunction::exp),
                                           Matrix::from_rows({{5, 1}, {1, 5}}));
    CHECK_THAT(g(0, 0), WithinAbs(std::exp(2.0), 1e-10));
    CHECK_THAT(g(0, 1), WithinAbs(0.0, 1e-10));
    CHECK_THAT(g(1, 1), WithinAbs(expected_c(0, 0), 1e-10));
    CHECK_THAT(g(1, 2), WithinAbs(expected_c(0, 1), 1e-10));
}

TEST_CASE("block-triangular agrees with taylor on random blocks") {
    for (int trial = 0; trial < 50; ++trial) {
        Rng rng = Rng::for_sample(901, static_cast<std::uint64_t>(trial));
        Matrix m(4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (!(i >= 2 && j < 2)) m(i, j) = rng.uniform(0.0, 2.0);
        try {
            m.retag(Structure::block_upper_triangular, 2);
            const Matrix byblock = apply_block_triangular(corpus::quartic(), m);
            const Matrix bytaylor = apply_taylor(corpus::quartic(), m);
            check_close(byblock, bytaylor, 1e-8 * (1.0 + max_norm(bytaylor)));
        } catch (const SpectraOverlap&) {
            // rare eigenvalue collision between random blocks; skip
        }
    }
}

TEST_CASE("companion formula: hand values") {
    const Matrix a = Matrix::from_rows({{1, 1}, {0, 2}}, Structure::upper_triangular);
    const Matrix f = apply_companion(FunctionSpec::polynomial({0, 0, 1}), a, {2.0, -3.0, 1.0});
    check_close(f, Matrix::from_rows({{1, 3}, {0, 4}}), 1e-12);

    const Matrix ident = apply_companion(FunctionSpec::polynomial({0, 1}), a, {2.0, -3.0, 1.0});
    check_close(ident, a, 1e-12);

    const Matrix d = Matrix::from_rows({{0, 0}, {0, 1}});
    const Matrix ed = apply_companion(FunctionSpec::named(NamedFunction::exp), d, {0.0, -1.0, 1.0});
    CHECK_THAT(ed(0, 0), WithinAbs(1.0, 1e-12));
    CHECK_THAT(ed(1, 1), WithinAbs(std::exp(1.0), 1e-12));
    CHECK_THAT(ed(0, 1), WithinAbs(0.0, 1e-12));

    CHECK_THROWS_AS(apply_companion(FunctionSpec::polynomial({0, 1}), a, {1.0, 0.0, 1.0}),
                    NotAnnihilating);
    CHECK_THROWS_AS(apply_companion(FunctionSpec::polynomial({0, 1}), a, {2.0, -3.0, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("similarity covariance under permutation-diagonal conjugation") {
    for (int trial = 0; trial < 40; ++trial) {
        Rng rng = Rng::for_sample(903, static_cast<std::uint64_t>(trial));
        const int n = 2 + static_cast<int>(rng.uniform_index(4));
        Matrix a(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(0.0, 1.5);

        // random permutation and positive diagonal
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        for (std::size_t i = perm.size(); i > 1; --i)
            std::swap(perm[i - 1], perm[rng.uniform_index(i)]);
        Matrix m(n), minv(n);
        for (int i = 0; i < n; ++i) {
            const double d = rng.uniform(0.5, 2.0);
            m(perm[static_cast<std::size_t>(i)], i) = d;       // P D
            minv(i, perm[static_cast<std::size_t>(i)]) = 1.0 / d;
        }

        const Matrix conjugated = m * a * minv;
        const Matrix lhs = apply_taylor(corpus::quartic(), conjugated);
        const Matrix rhs = m * apply_taylor(corpus::quartic(), a) * minv;
        check_close(lhs, rhs, 1e-8 * (1.0 + max_norm(rhs)));
    }
}

TEST_CASE("zero padding leaves the top block and writes f(0) in the corner") {
    for (const auto& f : corpus::representative_functions()) {
        Rng rng(905);
        const int n = 3;
        Matrix a(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(0.0, 1.0);
        const Matrix fa = apply_taylor(f, a);
        const Matrix fb = apply_taylor(f, embed_pad_zero(a));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) CHECK_THAT(fb(i, j), WithinAbs(fa(i, j), 1e-10));
        // the padded corner carries f(0), not necessarily 0
        CHECK_THAT(fb(n, n), WithinAbs(eval(f, 0.0), 1e-10 * (1.0 + std::abs(eval(f, 0.0)))));
        for (int i = 0; i < n; ++i) {
            CHECK_THAT(fb(i, n), WithinAbs(0.0, 1e-10));
            CHECK_THAT(fb(n, i), WithinAbs(0.0, 1e-10));
        }
    }
}

TEST_CASE("spectral mapping on circulants") {
    for (int trial = 0; trial < 60; ++trial) {
        Rng rng = Rng::for_sample(907, static_cast<std::uint64_t>(trial));
        const int n = 1 + static_cast<int>(rng.uniform_index(6));
        const std::vector<double> row = corpus::random_nonneg_row(rng, n, 2.0);
        const auto& fs = corpus::representative_functions();
        const FunctionSpec& f = fs[static_cast<std::size_t>(trial) % fs.size()];

        const ComplexSpectrum before = circ_spectrum(row);
        const ComplexSpectrum after = circ_spectrum(apply_circulant(f, row));

        std::vector<std::complex<double>> mapped;
        for (const auto& z : before.values) mapped.push_back(eval(f, z));
        double scale = 0.0;
        for (const auto& z : mapped) scale = std::max(scale, std::abs(z));
        // greedy multiset matching; sorting alone could flip near-ties
        std::vector<bool> used(mapped.size(), false);
        for (const auto& z : after.values) {
            double best = 1e300;
            std::size_t best_i = 0;
            for (std::size_t i = 0; i < mapped.size(); ++i) {
                if (used[i]) continue;
                const double d = std::abs(mapped[i] - z);
                if (d < best) {
                    best = d;
                    best_i = i;
                }
            }
            used[best_i] = true;
            CHECK(best <= 1e-8 * (1.0 + scale));
        }
    }
}
