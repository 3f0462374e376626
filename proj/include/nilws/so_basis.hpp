#pragma once

#include <vector>

#include "nilws/matrix.hpp"

namespace nilws {

/// Orthonormal basis of so(n) with respect to the trace inner product:
/// (E_ij - E_ji)/sqrt(2) for i < j. Coefficients in this basis are then
/// trace-orthonormal coordinates on the space of skew matrices.
inline std::vector<MatD> so_basis(std::size_t n) {
    std::vector<MatD> basis;
    const double s = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            MatD e(n, n);
            e(i, j) = s;
            e(j, i) = -s;
            basis.push_back(std::move(e));
        }
    return basis;
}

inline MatD from_coords(const std::vector<MatD>& basis, const VecD& c) {
    MatD m(basis.front().rows(), basis.front().cols());
    for (std::size_t k = 0; k < basis.size(); ++k) m = m + c[k] * basis[k];
    return m;
}

inline VecD to_coords(const std::vector<MatD>& orthonormal_basis, const MatD& m) {
    VecD c(orthonormal_basis.size());
    for (std::size_t k = 0; k < orthonormal_basis.size(); ++k) c[k] = trace_dot(orthonormal_basis[k], m);
    return c;
}

/// Least-squares projection of M onto span(basis) w.r.t. the trace inner
/// product; basis need not be orthonormal. Returns coefficients and the
/// Frobenius norm of the residual.
struct SpanProjection {
    VecD coefficients;
    double residual;
};

inline SpanProjection project_onto_span(const std::vector<MatD>& basis, const MatD& m) {
    const std::size_t k = basis.size();
    MatD gram(k, k);
    VecD rhs(k);
    for (std::size_t a = 0; a < k; ++a) {
        rhs[a] = trace_dot(basis[a], m);
        for (std::size_t b = 0; b < k; ++b) gram(a, b) = trace_dot(basis[a], basis[b]);
    }
    SpanProjection out;
    out.coefficients = k ? solve_linear(gram, rhs) : VecD{};
    MatD recon(m.rows(), m.cols());
    for (std::size_t a = 0; a < k; ++a) recon = recon + out.coefficients[a] * basis[a];
    out.residual = frobenius(m - recon);
    return out;
}

/// Gram-Schmidt in the trace inner product, dropping near-dependent inputs.
inline std::vector<MatD> orthonormalize_span(const std::vector<MatD>& raw, double drop_tol = 1e-9) {
    std::vector<MatD> out;
    for (const auto& m0 : raw) {
        MatD m = m0;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& e : out) m = m - trace_dot(e, m) * e;
        double n = frobenius(m);
        if (n > drop_tol) out.push_back((1.0 / n) * m);
    }
    return out;
}

inline MatD commutator(const MatD& a, const MatD& b) { return a * b - b * a; }

template <typename T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) { return a * b - b * a; }

} // namespace nilws
