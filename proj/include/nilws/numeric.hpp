#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nilws/matrix.hpp"

namespace nilws {

struct EigenSym {
    VecD values;   // ascending
    MatD vectors;  // columns, orthonormal
};

/// Cyclic Jacobi eigensolver for symmetric matrices. Plenty for the n <= ~130
/// systems that appear here, and accurate to a few ulps.
inline EigenSym sym_eig(MatD a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("sym_eig: square input required");
    MatD v = MatD::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off < 1e-30 * std::max(1.0, max_abs(a) * max_abs(a))) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double theta = (a(q, q) - a(p, p)) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1.0 / std::sqrt(t * t + 1);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
    EigenSym out;
    out.values.resize(n);
    out.vectors = MatD(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(idx[j], idx[j]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, idx[j]);
    }
    return out;
}

struct SvdNullspace {
    std::vector<VecD> kernel;     // orthonormal coefficient vectors
    VecD singular_values;         // ascending
};

/// One-sided Jacobi SVD, kept because it resolves tiny singular values far
/// below what an A^tA eigensolve could certify against the 1e-9 zero cutoff.
inline SvdNullspace svd_nullspace(const MatD& a, double sv_tol = 1e-9) {
    const std::size_t m = a.rows(), d = a.cols();
    MatD u = a;
    MatD v = MatD::identity(d);
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                double app = 0, aqq = 0, apq = 0;
                for (std::size_t k = 0; k < m; ++k) {
                    app += u(k, p) * u(k, p);
                    aqq += u(k, q) * u(k, q);
                    apq += u(k, p) * u(k, q);
                }
                if (std::abs(apq) <= 1e-28 * std::sqrt(app * aqq) || apq == 0.0) continue;
                rotated = true;
                double theta = (aqq - app) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1.0 / std::sqrt(t * t + 1);
                double s = t * c;
                for (std::size_t k = 0; k < m; ++k) {
                    double ukp = u(k, p), ukq = u(k, q);
                    u(k, p) = c * ukp - s * ukq;
                    u(k, q) = s * ukp + c * ukq;
                }
                for (std::size_t k = 0; k < d; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        if (!rotated) break;
    }
    VecD sigma(d);
    for (std::size_t j = 0; j < d; ++j) {
        double s2 = 0;
        for (std::size_t k = 0; k < m; ++k) s2 += u(k, j) * u(k, j);
        sigma[j] = std::sqrt(s2);
    }
    std::vector<std::size_t> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return sigma[i] < sigma[j]; });
    SvdNullspace out;
    for (std::size_t j : idx) {
        out.singular_values.push_back(sigma[j]);
        if (sigma[j] < sv_tol) {
            VecD col(d);
            for (std::size_t i = 0; i < d; ++i) col[i] = v(i, j);
            out.kernel.push_back(std::move(col));
        }
    }
    return out;
}

namespace detail {
inline double one_norm(const MatD& a) {
    double best = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0;
        for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}
} // namespace detail

/// Matrix exponential, scaling-and-squaring with the degree-13 Pade
/// approximant. Comfortable for the ||D|| <= 50 range the searches use.
inline MatD matrix_exp(const MatD& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("matrix_exp: square input required");
    static const double b[] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
        129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
        1323241920.0,        40840800.0,          960960.0,           16380.0,
        182.0,               1.0};
    const double theta13 = 5.371920351148152;
    double nrm = detail::one_norm(a);
    int squarings = 0;
    MatD as = a;
    if (nrm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
        as = std::ldexp(1.0, -squarings) * a;
    }
    MatD a2 = as * as;
    MatD a4 = a2 * a2;
    MatD a6 = a4 * a2;
    MatD eye = MatD::identity(n);
    MatD w1 = b[13] * a6 + b[11] * a4 + b[9] * a2;
    MatD w2 = b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * eye;
    MatD u = as * (a6 * w1 + w2);
    MatD z1 = b[12] * a6 + b[10] * a4 + b[8] * a2;
    MatD vmat = a6 * z1 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * eye;
    // solve (V - U) X = (V + U)
    MatD lhs = vmat - u;
    MatD rhs = vmat + u;
    MatD x(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        VecD col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = rhs(i, j);
        VecD sol = solve_linear(lhs, col);
        for (std::size_t i = 0; i < n; ++i) x(i, j) = sol[i];
    }
    for (int s = 0; s < squarings; ++s) x = x * x;
    return x;
}

/// Exponential of a skew matrix; rejects non-skew input and lands in the
/// orthogonal group.
inline MatD skew_exp(const MatD& d, double skew_tol = 1e-10) {
    if (skew_defect(d) > skew_tol) throw std::invalid_argument("skew_exp: input is not skew-symmetric");
    return matrix_exp(d);
}

/// Directional derivative of exp at D in direction E, computed exactly via
/// exp([[D,E],[0,D]]) whose top-right block is the Frechet derivative.
inline MatD expm_frechet(const MatD& d, const MatD& e) {
    const std::size_t n = d.rows();
    MatD aug(2 * n, 2 * n);
    aug.set_block(0, 0, d);
    aug.set_block(0, n, e);
    aug.set_block(n, n, d);
    MatD ex = matrix_exp(aug);
    return ex.block(0, n, n, n);
}

} // namespace nilws
