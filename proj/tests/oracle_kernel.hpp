#pragma once

// Test-only oracle: normalizer/centralizer dimensions through exact rational
// elimination on raw coordinates, independent of the SVD pipeline in the
// library. The normalizer condition is encoded with auxiliary unknowns M
// ([D, v_k] = sum_l M_lk v_l plus gram-skewness of M), so no projection onto
// span(V) is needed; for fixed D the M part is determined, hence the kernel
// dimension equals dim n(V).

#include "nilws/matrix.hpp"

namespace nilws_test {

using nilws::MatQ;
using nilws::Rational;

inline std::vector<MatQ> raw_so_basis_q(std::size_t n) {
    std::vector<MatQ> basis;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            MatQ e(n, n);
            e(i, j) = Rational(1);
            e(j, i) = Rational(-1);
            basis.push_back(std::move(e));
        }
    return basis;
}

struct OracleDims {
    std::size_t dim_n = 0;
    std::size_t dim_c = 0;
};

inline OracleDims oracle_normalizer_dims(const std::vector<MatQ>& v_basis, const MatQ& gram) {
    const std::size_t n = v_basis.front().rows();
    const std::size_t m = v_basis.size();
    auto so = raw_so_basis_q(n);
    const std::size_t d = so.size();

    // unknowns: (coefficients of D in so basis, entries of M)
    const std::size_t unknowns = d + m * m;
    const std::size_t eq_conj = n * n * m;
    const std::size_t eq_skew = m * m;
    MatQ sys(eq_conj + eq_skew, unknowns);
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t b = 0; b < d; ++b) {
            MatQ c = so[b] * v_basis[k] - v_basis[k] * so[b];
            for (std::size_t idx = 0; idx < n * n; ++idx) sys(k * n * n + idx, b) = c.data()[idx];
        }
        for (std::size_t l = 0; l < m; ++l)
            for (std::size_t idx = 0; idx < n * n; ++idx)
                sys(k * n * n + idx, d + l * m + k) = -v_basis[l].data()[idx];
    }
    // gram M + M^t gram = 0, entry (i,j): sum_l gram(i,l) M(l,j) + M(l,i) gram(l,j)
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t l = 0; l < m; ++l) {
                sys(eq_conj + i * m + j, d + l * m + j) += gram(i, l);
                sys(eq_conj + i * m + j, d + l * m + i) += gram(l, j);
            }
    OracleDims dims;
    dims.dim_n = nilws::kernel_basis(sys).size();

    MatQ cen(eq_conj, d);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t b = 0; b < d; ++b) {
            MatQ c = so[b] * v_basis[k] - v_basis[k] * so[b];
            for (std::size_t idx = 0; idx < n * n; ++idx) cen(k * n * n + idx, b) = c.data()[idx];
        }
    dims.dim_c = nilws::kernel_basis(cen).size();
    return dims;
}

} // namespace nilws_test
