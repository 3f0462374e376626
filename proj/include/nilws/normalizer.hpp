#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilws/metric_pair.hpp"
#include "nilws/operator_nullspace.hpp"
#include "nilws/quaternion.hpp"
#include "nilws/quaternionic_blocks.hpp"

namespace nilws {

/// Lie algebra of the orthogonal normalizer of (V, gram) inside so(a),
/// split into the centralizer and its trace-orthogonal complement (the pure
/// part). Bases are trace-orthonormal.
struct NormalizerData {
    std::vector<MatD> n_basis;
    std::vector<MatD> c_basis;
    std::vector<MatD> p_basis;
    double closure_residual = 0;  // max projection residual of [n_i, n_j] onto span

    std::size_t dim_n() const { return n_basis.size(); }
    std::size_t dim_c() const { return c_basis.size(); }
    std::size_t dim_p() const { return p_basis.size(); }
};

/// {D in so(a) : [D, V] in V and the induced map on (V, gram) is skew},
/// with the centralizer {D : [D, V] = 0} split off.
inline NormalizerData normalizer_algebra(const MetricPairD& p, double sv_tol = 1e-9) {
    NormalizerData out;
    const std::size_t n = p.dim_a, m = p.dim_v();
    auto so = so_basis(n);

    auto induced_map = [&](const MatD& d, std::vector<MatD>& residuals) {
        MatD mmat(m, m);
        for (std::size_t k = 0; k < m; ++k) {
            MatD c = commutator(d, p.v_basis[k]);
            auto proj = project_onto_span(p.v_basis, c);
            for (std::size_t l = 0; l < m; ++l) mmat(l, k) = proj.coefficients[l];
            MatD r = c;
            for (std::size_t l = 0; l < m; ++l) r = r - proj.coefficients[l] * p.v_basis[l];
            residuals.push_back(std::move(r));
        }
        return mmat;
    };

    // normalizer condition: V-perp component of [D, v_k] vanishes and the
    // induced map is skew w.r.t. gram
    auto op_n = [&](const MatD& d) {
        std::vector<MatD> residuals;
        MatD mmat = induced_map(d, residuals);
        MatD skew_defect_mat = p.gram * mmat + mmat.transpose() * p.gram;
        MatD col(m * n * n + m * m, 1);
        std::size_t at = 0;
        for (const auto& r : residuals)
            for (double v : r.data()) col(at++, 0) = v;
        for (double v : skew_defect_mat.data()) col(at++, 0) = v;
        return col;
    };
    auto op_c = [&](const MatD& d) {
        MatD col(m * n * n, 1);
        std::size_t at = 0;
        for (std::size_t k = 0; k < m; ++k) {
            MatD c = commutator(d, p.v_basis[k]);
            for (double v : c.data()) col(at++, 0) = v;
        }
        return col;
    };

    out.n_basis = nullspace_of_operator(so, op_n, sv_tol).basis;
    out.c_basis = nullspace_of_operator(so, op_c, sv_tol).basis;

    // pure part: trace-orthogonal complement of the centralizer inside n
    std::vector<MatD> residual_basis;
    for (const auto& nb : out.n_basis) {
        MatD r = nb;
        for (const auto& cb : out.c_basis) r = r - trace_dot(cb, r) * cb;
        residual_basis.push_back(std::move(r));
    }
    out.p_basis = orthonormalize_span(residual_basis, 1e-6);
    if (out.dim_c() + out.dim_p() != out.dim_n())
        throw std::runtime_error(
            "normalizer_algebra: degenerate centralizer/pure-part split (dimensions do not add)");

    for (std::size_t i = 0; i < out.n_basis.size(); ++i)
        for (std::size_t j = i + 1; j < out.n_basis.size(); ++j) {
            auto proj = project_onto_span(out.n_basis, commutator(out.n_basis[i], out.n_basis[j]));
            out.closure_residual = std::max(out.closure_residual, proj.residual);
        }
    return out;
}

/// Conjugation test for a group element: projects N v_k N^t onto V and reads
/// off the induced map phi (N v N^t = j_of(phi Z)). Orthogonality of phi is
/// reported against both the chosen and the standard Gram.
struct MembershipResult {
    bool is_member = false;
    MatD phi;
    double conj_residual = 0;
    double orth_residual_gram = 0;
    double orth_residual_std = 0;
};

inline MembershipResult membership(const MetricPairD& p, const MatD& n_mat, double tol = 1e-9) {
    if (orthogonality_defect(n_mat) > 1e-10)
        throw std::invalid_argument("membership: matrix is not orthogonal");
    MembershipResult res;
    const std::size_t m = p.dim_v();
    res.phi = MatD(m, m);
    MatD nt = n_mat.transpose();
    for (std::size_t k = 0; k < m; ++k) {
        MatD c = n_mat * p.v_basis[k] * nt;
        auto proj = project_onto_span(p.v_basis, c);
        res.conj_residual = std::max(res.conj_residual, proj.residual);
        for (std::size_t l = 0; l < m; ++l) res.phi(l, k) = proj.coefficients[l];
    }
    res.orth_residual_gram = max_abs(res.phi.transpose() * p.gram * res.phi - p.gram);
    MatD g0 = standard_gram(p);
    res.orth_residual_std = max_abs(res.phi.transpose() * g0 * res.phi - g0);
    res.is_member = res.conj_residual <= tol && res.orth_residual_gram <= tol;
    return res;
}

/// The per-block coefficient maps A_s of a centralizer-type pair:
/// j_of(Z) restricted to block s equals L_{A_s Z}.
template <typename T>
std::vector<Matrix<T>> induced_center_maps(const MetricPair<T>& p, double tol = 1e-10) {
    auto form = quaternionic_block_form(p, tol);
    if (!form) throw std::invalid_argument("induced_center_maps: pair is not quaternionic block-diagonal");
    return form->a_maps;
}

/// Structure report for the pure part of a centralizer-type pair: it must be
/// at most so(3), realized inside the span of diag(L_{u_1}, ..., L_{u_p}).
struct PurePartReport {
    std::size_t p_dim = 0;
    bool l_diag_ok = true;            // every pure element is diag of left multiplications
    double l_diag_residual = 0;
    bool norms_equal = true;          // block norms of a pure element agree
    std::vector<VecD> block_u;        // u_s of the first nonzero pure element
    double common_l_membership = 0;   // residual of diag(L_i,...,L_i) against span(p_basis)
    bool ws_necessary_ok = false;     // fails when the pure part is trivial

    bool aligned() const { return p_dim > 0 && l_diag_ok && norms_equal; }
};

inline PurePartReport pure_part_so3_check(const MetricPairD& p, const NormalizerData& nd,
                                          double tol = 1e-8) {
    auto form = quaternionic_block_form(p);
    if (!form) throw std::invalid_argument("pure_part_so3_check: pair is not of centralizer type");
    PurePartReport rep;
    rep.p_dim = nd.dim_p();
    rep.ws_necessary_ok = rep.p_dim > 0;
    if (rep.p_dim > 3) rep.l_diag_ok = false;

    const std::size_t blocks = form->blocks;
    const MatD li = left_mult_matrix(QuatD::i());
    const MatD lj = left_mult_matrix(QuatD::j());
    const MatD lk = left_mult_matrix(QuatD::k());
    auto l_project = [&](const MatD& mat, std::vector<QuatD>& us) {
        // nearest diag(L_{u_s}) in Frobenius norm
        MatD recon(p.dim_a, p.dim_a);
        for (std::size_t s = 0; s < blocks; ++s) {
            MatD b = mat.block(4 * s, 4 * s, 4, 4);
            QuatD u = QuatD::imaginary(trace_dot(li, b) / 4.0, trace_dot(lj, b) / 4.0,
                                       trace_dot(lk, b) / 4.0);
            us.push_back(u);
            recon.set_block(4 * s, 4 * s, left_mult_matrix(u));
        }
        return frobenius(mat - recon);
    };

    bool first = true;
    for (const auto& pb : nd.p_basis) {
        std::vector<QuatD> us;
        double r = l_project(pb, us);
        rep.l_diag_residual = std::max(rep.l_diag_residual, r);
        if (r > tol) rep.l_diag_ok = false;
        if (first && norm(us.front()) > tol) {
            first = false;
            double n0 = norm(us.front());
            for (const auto& u : us) {
                rep.block_u.push_back({u.x, u.y, u.z});
                if (std::abs(norm(u) - n0) > tol) rep.norms_equal = false;
            }
        }
    }

    if (rep.p_dim > 0) {
        std::vector<MatD> common(blocks, li);
        MatD target = block_diag(common);
        auto proj = project_onto_span(nd.p_basis, target);
        rep.common_l_membership = proj.residual / frobenius(target);
    }
    return rep;
}

} // namespace nilws
