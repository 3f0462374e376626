#pragma once

#include <stdexcept>
#include <vector>

#include "nilws/matrix.hpp"

namespace nilws {

/// Realified ladder-operator model of the complex (n+1)-dimensional
/// irreducible su(2) representation, n odd (quaternionic type), on R^{2(n+1)}.
///
/// Convention: with H, E, F the ladder operators ([H,E] = 2E, [H,F] = -2F,
/// [E,F] = H) the images are rho(i) = iH, rho(j) = E - F, rho(k) = i(E + F),
/// so that [rho(i), rho(j)] = 2 rho(k) cyclically, matching the quaternion
/// left multiplications at n = 1.
///
/// Two models are produced. The `skew` model uses the unit weight basis
/// (ladder entries sqrt((k+1)(n-k))) and is genuinely skew-symmetric. The
/// `weighted` model uses E|k> = (n-k)|k+1>, F|k> = k|k-1>, which has integer
/// entries and satisfies the bracket and Casimir identities exactly; it is
/// skew only w.r.t. the diagonal binomial weights, and exists so the algebra
/// can be checked in exact arithmetic.
struct Su2Irrep {
    int n = 0;                       // highest weight; real dimension 2(n+1)
    std::vector<MatD> skew;          // rho(i), rho(j), rho(k), skew-symmetric
    std::vector<MatQ> weighted;      // same operators in the integer model
    long long casimir = 0;           // rho(i)^2+rho(j)^2+rho(k)^2 = -casimir I

    std::size_t real_dim() const { return 2 * static_cast<std::size_t>(n + 1); }
};

namespace detail {

/// Realify a complex matrix given as (real part, imag part): each entry
/// becomes the 2x2 block [[re, -im], [im, re]].
template <typename T>
Matrix<T> realify(const Matrix<T>& re, const Matrix<T>& im) {
    const std::size_t n = re.rows();
    Matrix<T> out(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            out(2 * i, 2 * j) = re(i, j);
            out(2 * i + 1, 2 * j + 1) = re(i, j);
            out(2 * i, 2 * j + 1) = -im(i, j);
            out(2 * i + 1, 2 * j) = im(i, j);
        }
    return out;
}

template <typename T>
std::vector<Matrix<T>> su2_from_ladder(const Matrix<T>& h, const Matrix<T>& e, const Matrix<T>& f) {
    const std::size_t n = h.rows();
    Matrix<T> zero(n, n);
    std::vector<Matrix<T>> rho;
    rho.push_back(realify(zero, h));          // rho(i) = iH
    rho.push_back(realify(e - f, zero));      // rho(j) = E - F
    rho.push_back(realify(zero, e + f));      // rho(k) = i(E + F)
    return rho;
}

} // namespace detail

inline Su2Irrep su2_irrep(int n) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("su2_irrep: n must be odd and >= 3 (quaternionic, real dim >= 8)");
    const std::size_t dim = static_cast<std::size_t>(n) + 1;
    Su2Irrep out;
    out.n = n;
    out.casimir = static_cast<long long>(n) * (n + 2);

    MatD h(dim, dim), e(dim, dim), f(dim, dim);
    MatQ hq(dim, dim), eq(dim, dim), fq(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
        h(k, k) = static_cast<double>(2.0 * k) - n;
        hq(k, k) = Rational(2 * static_cast<long long>(k) - n);
    }
    for (std::size_t k = 0; k + 1 < dim; ++k) {
        double c = std::sqrt(static_cast<double>((k + 1) * (dim - 1 - k)));
        e(k + 1, k) = c;      // raises the weight
        f(k, k + 1) = c;      // lowers it; equal entries keep the model skew
        eq(k + 1, k) = Rational(static_cast<long long>(dim - 1 - k));
        fq(k, k + 1) = Rational(static_cast<long long>(k) + 1);
    }
    out.skew = detail::su2_from_ladder(h, e, f);
    out.weighted = detail::su2_from_ladder(hq, eq, fq);
    return out;
}

} // namespace nilws
