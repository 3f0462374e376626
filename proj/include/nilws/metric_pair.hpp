#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilws/matrix.hpp"
#include "nilws/spectrum.hpp"

namespace nilws {

/// A basis of V inside so(dim_a) as skew matrices, plus the Gram matrix of
/// the chosen inner product on V in that basis. The center coordinates are
/// coefficient vectors relative to v_basis throughout.
template <typename T>
struct MetricPair {
    std::size_t dim_a = 0;
    std::vector<Matrix<T>> v_basis;
    Matrix<T> gram;

    std::size_t dim_v() const { return v_basis.size(); }
};

using MetricPairD = MetricPair<double>;
using MetricPairQ = MetricPair<Rational>;

inline MetricPairD to_double(const MetricPairQ& p) {
    MetricPairD d;
    d.dim_a = p.dim_a;
    for (const auto& v : p.v_basis) d.v_basis.push_back(to_double(v));
    d.gram = to_double(p.gram);
    return d;
}
inline const MetricPairD& to_double(const MetricPairD& p) { return p; }

/// Basic sanity of a pair: skew basis elements of the right size, independent
/// basis, symmetric positive definite Gram.
template <typename T>
void validate_pair(const MetricPair<T>& p, double skew_tol = 1e-12) {
    const std::size_t m = p.dim_v();
    if (p.gram.rows() != m || p.gram.cols() != m)
        throw std::invalid_argument("MetricPair: gram shape does not match dim V");
    for (const auto& v : p.v_basis) {
        if (v.rows() != p.dim_a || v.cols() != p.dim_a)
            throw std::invalid_argument("MetricPair: basis element has wrong size");
        if constexpr (std::is_same_v<T, double>) {
            if (skew_defect(v) > skew_tol) throw std::invalid_argument("MetricPair: basis element not skew");
        } else {
            if (!is_skew(v)) throw std::invalid_argument("MetricPair: basis element not skew");
        }
    }
    if (m == 0) return;
    // independence via the trace Gram of the basis
    Matrix<T> tg(m, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) tg(a, b) = trace_dot(p.v_basis[a], p.v_basis[b]);
    if constexpr (std::is_same_v<T, double>) {
        if (std::abs(determinant(tg)) < 1e-12)
            throw std::invalid_argument("MetricPair: basis not linearly independent");
        auto eig = sym_eig(p.gram);
        if (eig.values.front() <= 0)
            throw std::invalid_argument("MetricPair: gram not positive definite");
        if (max_abs(p.gram - p.gram.transpose()) > 1e-12)
            throw std::invalid_argument("MetricPair: gram not symmetric");
    } else {
        if (determinant(tg).is_zero())
            throw std::invalid_argument("MetricPair: basis not linearly independent");
        if (!(p.gram == p.gram.transpose()))
            throw std::invalid_argument("MetricPair: gram not symmetric");
        auto eig = sym_eig(to_double(p.gram));
        if (eig.values.front() <= 0)
            throw std::invalid_argument("MetricPair: gram not positive definite");
    }
}

/// J_Z for a coefficient vector Z: the linear combination of the basis.
template <typename T>
Matrix<T> j_of(const MetricPair<T>& p, const std::vector<T>& z) {
    if (z.size() != p.dim_v()) throw std::invalid_argument("j_of: coefficient size mismatch");
    Matrix<T> j(p.dim_a, p.dim_a);
    for (std::size_t k = 0; k < z.size(); ++k) j = j + z[k] * p.v_basis[k];
    return j;
}

/// The dimension-scaled bi-invariant Gram: G_ab = -Tr(v_a v_b) / dim_a.
/// This makes complex structures unit vectors in every dimension.
template <typename T>
Matrix<T> standard_gram(const MetricPair<T>& p) {
    const std::size_t m = p.dim_v();
    Matrix<T> g(m, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            g(a, b) = -(p.v_basis[a] * p.v_basis[b]).trace() / T(static_cast<long long>(p.dim_a));
    return g;
}

/// Eigenvalue structure of the symmetric operator S relating the chosen inner
/// product to the standard one: <J,J> = (S J, J). Computed as
/// G0^{-1/2} G G0^{-1/2} in a standard-orthonormal basis of V.
struct EigenvalueType {
    std::vector<std::size_t> multiplicities;  // sorted descending (canonical form)
    VecD eigenvalues;                         // ascending, one per cluster
    MatD s_matrix;                            // the symmetrized S

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < multiplicities.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(multiplicities[i]);
        }
        return s + ")";
    }

    friend bool operator==(const EigenvalueType& a, const EigenvalueType& b) {
        return a.multiplicities == b.multiplicities;
    }
};

template <typename T>
EigenvalueType eigenvalue_type(const MetricPair<T>& p, double cluster_rel_tol = 1e-8) {
    const MetricPairD pd_store = [&] {
        if constexpr (std::is_same_v<T, double>) return p; else return to_double(p);
    }();
    const MetricPairD& pd = pd_store;
    MatD g0 = standard_gram(pd);
    auto e0 = sym_eig(g0);
    const std::size_t m = pd.dim_v();
    MatD g0_inv_sqrt(m, m);
    for (std::size_t k = 0; k < m; ++k) {
        if (e0.values[k] <= 0) throw std::domain_error("eigenvalue_type: standard gram not positive definite");
        double s = 1.0 / std::sqrt(e0.values[k]);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                g0_inv_sqrt(i, j) += s * e0.vectors(i, k) * e0.vectors(j, k);
    }
    MatD s_tilde = g0_inv_sqrt * pd.gram * g0_inv_sqrt;
    s_tilde = 0.5 * (s_tilde + s_tilde.transpose());
    auto spec = symmetric_spectrum(s_tilde, cluster_rel_tol);
    EigenvalueType out;
    out.eigenvalues = spec.eigenvalues;
    out.multiplicities = spec.multiplicities;
    std::sort(out.multiplicities.begin(), out.multiplicities.end(), std::greater<>());
    out.s_matrix = s_tilde;
    return out;
}

/// Gram norm of a coefficient vector and normalization to the unit sphere of
/// (V, gram).
inline double gram_norm(const MetricPairD& p, const VecD& z) {
    return std::sqrt(dot(z, p.gram.apply(z)));
}

inline VecD gram_normalized(const MetricPairD& p, VecD z) {
    double n = gram_norm(p, z);
    for (auto& v : z) v /= n;
    return z;
}

} // namespace nilws
