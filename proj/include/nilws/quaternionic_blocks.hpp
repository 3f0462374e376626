#pragma once

#include <optional>
#include <vector>

#include "nilws/metric_pair.hpp"
#include "nilws/quaternion.hpp"

namespace nilws {

/// Quaternionic block-diagonal form of a pair on a = H^p: every basis element
/// is diag(L_{q_1}, ..., L_{q_p}) with imaginary q_s. The per-block maps A_s
/// send a coefficient vector Z to the imaginary quaternion of block s; they
/// are stored as 3 x dimV matrices in the basis (i, j, k).
template <typename T>
struct BlockForm {
    std::size_t blocks = 0;
    std::vector<Matrix<T>> a_maps;                    // one 3 x dimV matrix per block
    std::vector<std::vector<Quaternion<T>>> q;        // q[k][s]: block s of basis element k

    Quaternion<T> block_quaternion(std::size_t s, const std::vector<T>& z) const {
        std::vector<T> im = a_maps[s].apply(z);
        return Quaternion<T>::imaginary(im[0], im[1], im[2]);
    }
};

namespace detail {
template <typename T>
bool near_zero(const T& v, double tol) {
    if constexpr (std::is_same_v<T, double>) return std::abs(v) <= tol;
    else return v.is_zero();
}
} // namespace detail

/// Detects the block form; nullopt when the pair is not block-diagonal
/// quaternionic within tol (tol ignored in exact arithmetic).
template <typename T>
std::optional<BlockForm<T>> quaternionic_block_form(const MetricPair<T>& p, double tol = 1e-10) {
    if (p.dim_a == 0 || p.dim_a % 4 != 0) return std::nullopt;
    const std::size_t blocks = p.dim_a / 4, m = p.dim_v();
    BlockForm<T> form;
    form.blocks = blocks;
    form.q.assign(m, {});
    for (std::size_t k = 0; k < m; ++k) {
        const auto& v = p.v_basis[k];
        for (std::size_t s = 0; s < blocks; ++s) {
            Matrix<T> b = v.block(4 * s, 4 * s, 4, 4);
            Quaternion<T> q(b(0, 0), b(1, 0), b(2, 0), b(3, 0));
            Matrix<T> ref = left_mult_matrix(q);
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                    if (!detail::near_zero<T>(b(i, j) - ref(i, j), tol)) return std::nullopt;
            if (!detail::near_zero<T>(q.w, tol)) return std::nullopt;
            form.q[k].push_back(q);
        }
        // everything off the diagonal blocks must vanish
        for (std::size_t i = 0; i < p.dim_a; ++i)
            for (std::size_t j = 0; j < p.dim_a; ++j)
                if (i / 4 != j / 4 && !detail::near_zero<T>(v(i, j), tol)) return std::nullopt;
    }
    for (std::size_t s = 0; s < blocks; ++s) {
        Matrix<T> a(3, m);
        for (std::size_t k = 0; k < m; ++k) {
            a(0, k) = form.q[k][s].x;
            a(1, k) = form.q[k][s].y;
            a(2, k) = form.q[k][s].z;
        }
        form.a_maps.push_back(std::move(a));
    }
    return form;
}

} // namespace nilws
