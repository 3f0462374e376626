#include <doctest.h>

#include "nilws/numeric.hpp"
#include "nilws/operator_nullspace.hpp"
#include "nilws/quaternion.hpp"
#include "nilws/rng.hpp"
#include "nilws/spectrum.hpp"

using namespace nilws;

namespace {

MatD random_skew(Rng& rng, std::size_t n, double scale = 1.0) {
    MatD d(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = scale * rng.normal();
            d(i, j) = v;
            d(j, i) = -v;
        }
    return d;
}

MatD random_symmetric(Rng& rng, std::size_t n) {
    MatD s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double v = rng.normal();
            s(i, j) = v;
            s(j, i) = v;
        }
    return s;
}

} // namespace

TEST_CASE("symmetric eigensolver reconstructs and orders") {
    Rng rng(3);
    for (int t = 0; t < 8; ++t) {
        std::size_t n = 3 + t;
        MatD s = random_symmetric(rng, n);
        auto eig = sym_eig(s);
        MatD recon(n, n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    recon(i, j) += eig.values[k] * eig.vectors(i, k) * eig.vectors(j, k);
        CHECK(max_abs(recon - s) < 1e-10);
        CHECK(orthogonality_defect(eig.vectors) < 1e-11);
        for (std::size_t k = 0; k + 1 < n; ++k) CHECK(eig.values[k] <= eig.values[k + 1] + 1e-12);
    }
}

TEST_CASE("spectrum clustering forms multiplicities") {
    MatD m(4, 4);
    m(0, 0) = 2.0;
    m(1, 1) = 2.0 + 1e-12;
    m(2, 2) = -1.0;
    m(3, 3) = -1.0 - 1e-13;
    auto spec = symmetric_spectrum(m);
    REQUIRE(spec.eigenvalues.size() == 2);
    CHECK(spec.multiplicities[0] == 2);
    CHECK(spec.multiplicities[1] == 2);
    CHECK(spec.dimension() == 4);
    CHECK(spec.eigenvalues[0] == doctest::Approx(-1.0));
}

TEST_CASE("matrix exponential basics") {
    CHECK(max_abs(matrix_exp(MatD(3, 3)) - MatD::identity(3)) < 1e-15);
    MatD rot{{0.0, -M_PI}, {M_PI, 0.0}};
    CHECK(max_abs(skew_exp(rot) + MatD::identity(2)) < 1e-13);
    MatD notskew{{0.0, 1.0}, {1.0, 0.0}};
    CHECK_THROWS_AS(skew_exp(notskew), std::invalid_argument);
}

TEST_CASE("exponentials of skew matrices are orthogonal up to norm 50") {
    Rng rng(5);
    for (double scale : {0.5, 5.0, 25.0}) {
        MatD d = random_skew(rng, 8, scale);
        MatD e = skew_exp(d);
        CHECK(orthogonality_defect(e) < 1e-10);
    }
}

TEST_CASE("adjoint action matches the commutator to first order") {
    Rng rng(9);
    MatD d = random_skew(rng, 6);
    MatD j = random_skew(rng, 6);
    double prev = 0;
    int step = 0;
    for (double t : {1e-3, 5e-4}) {
        MatD e = skew_exp(t * d);
        MatD lhs = e * j * e.transpose() - j - t * commutator(d, j);
        double res = max_abs(lhs);
        CHECK(res < 10 * t * t * max_abs(d) * max_abs(d) * max_abs(j));
        if (step++ == 1) CHECK(res < 0.3 * prev);  // quadratic decay
        prev = res;
    }
}

TEST_CASE("frechet derivative matches finite differences") {
    Rng rng(13);
    MatD d = random_skew(rng, 5);
    MatD e = random_skew(rng, 5);
    MatD lder = expm_frechet(d, e);
    double h = 1e-6;
    MatD fd = (1.0 / (2 * h)) * (matrix_exp(d + h * e) - matrix_exp(d - h * e));
    CHECK(max_abs(lder - fd) < 1e-8);
}

TEST_CASE("one-sided Jacobi nullspace resolves exact dependencies") {
    // column 3 = column 0 + column 1 exactly; kernel is one-dimensional
    Rng rng(17);
    MatD a(6, 4);
    for (std::size_t i = 0; i < 6; ++i) {
        a(i, 0) = rng.normal();
        a(i, 1) = rng.normal();
        a(i, 2) = rng.normal();
        a(i, 3) = a(i, 0) + a(i, 1);
    }
    auto ns = svd_nullspace(a, 1e-9);
    REQUIRE(ns.kernel.size() == 1);
    VecD prod(6, 0.0);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 4; ++j) prod[i] += a(i, j) * ns.kernel[0][j];
    CHECK(norm2(prod) < 1e-12);
}

TEST_CASE("operator nullspace: identity map on so(2) has empty kernel") {
    auto basis = so_basis(2);
    auto ns = nullspace_of_operator(basis, [](const MatD& d) { return d; });
    CHECK(ns.basis.empty());
}

TEST_CASE("operator nullspace: so(2) is abelian") {
    auto basis = so_basis(2);
    MatD j{{0.0, -1.0}, {1.0, 0.0}};
    auto ns = nullspace_of_operator(basis, [&](const MatD& d) { return commutator(d, j); });
    CHECK(ns.basis.size() == 1);
}

namespace {

/// Independent oracle: the matrix of ad_{L_i} on the raw E_ij basis of
/// so(4), with the kernel dimension computed by exact elimination.
std::size_t brute_force_centralizer_dim() {
    MatQ li = left_mult_matrix(QuatQ::i());
    std::vector<MatQ> basis;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            MatQ e(4, 4);
            e(i, j) = Rational(1);
            e(j, i) = Rational(-1);
            basis.push_back(std::move(e));
        }
    MatQ op(16, 6);
    for (std::size_t k = 0; k < 6; ++k) {
        MatQ c = basis[k] * li - li * basis[k];
        for (std::size_t idx = 0; idx < 16; ++idx) op(idx, k) = c.data()[idx];
    }
    return kernel_basis(op).size();
}

} // namespace

TEST_CASE("operator nullspace: centralizer of L_i in so(4) is 4-dimensional") {
    const std::size_t expected = brute_force_centralizer_dim();
    CHECK(expected == 4);  // L_i and the right multiplications R_i, R_j, R_k
    auto basis = so_basis(4);
    MatD li = left_mult_matrix(QuatD::i());
    auto ns = nullspace_of_operator(basis, [&](const MatD& d) { return commutator(d, li); });
    CHECK(ns.basis.size() == expected);
    for (std::size_t a = 0; a < ns.basis.size(); ++a)
        for (std::size_t b = 0; b < ns.basis.size(); ++b)
            CHECK(trace_dot(ns.basis[a], ns.basis[b]) ==
                  doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-10));
}

TEST_CASE("exact solve, determinant, inverse") {
    MatQ a{{Rational(2), Rational(1)}, {Rational(1), Rational(3)}};
    auto x = solve_linear(a, VecQ{Rational(5), Rational(10)});
    CHECK(x[0] == Rational(1));
    CHECK(x[1] == Rational(3));
    CHECK(determinant(a) == Rational(5));
    CHECK(inverse(a) * a == MatQ::identity(2));
}
