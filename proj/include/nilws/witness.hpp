#pragma once

#include <optional>

#include "nilws/families.hpp"
#include "nilws/normalizer.hpp"
#include "nilws/quaternionic_blocks.hpp"

namespace nilws {

/// An explicit normalizer element N = Q P with N X = -X and N J = -J N,
/// together with the residuals of those equations and of normalizer
/// membership.
struct Witness {
    MatD p, q, n;
    double r_anchor = 0;  // ||N X + X||
    double r_conj = 0;    // ||N J + J N||_F
    double r_member = 0;  // conjugation-into-V and phi-orthogonality residual

    double max_residual() const { return std::max({r_anchor, r_conj, r_member}); }
    bool valid(double tol = 1e-9) const { return max_residual() <= tol; }
};

inline Witness finish_witness(const MetricPairD& pair, MatD p, MatD q, const MatD& j,
                              const VecD& x) {
    Witness w;
    w.p = std::move(p);
    w.q = std::move(q);
    w.n = w.q * w.p;
    VecD nx = w.n.apply(x);
    for (std::size_t i = 0; i < nx.size(); ++i) nx[i] += x[i];
    w.r_anchor = norm2(nx);
    w.r_conj = frobenius(w.n * j + j * w.n);
    auto mem = membership(pair, w.n, 1e-9);
    w.r_member = std::max(mem.conj_residual, mem.orth_residual_gram);
    return w;
}

/// N = -I settles the degenerate J = 0 case for any X.
inline Witness witness_minus_identity(const MetricPairD& pair, const MatD& j, const VecD& x) {
    MatD mi = -1.0 * MatD::identity(pair.dim_a);
    return finish_witness(pair, mi, MatD::identity(pair.dim_a), j, x);
}

/// Canonical form of a skew matrix: U orthogonal with U^t J U =
/// diag(a_1 W, ..., a_p W, 0) for the 2x2 rotation generator W and a_s > 0.
struct SkewCanonicalForm {
    MatD u;
    VecD alphas;            // one per 2x2 block
    std::size_t kernel_dim = 0;
};

inline SkewCanonicalForm skew_canonical_form(const MatD& j, double tol = 1e-9) {
    const std::size_t n = j.rows();
    auto eig = sym_eig(j.transpose() * j);  // = -J^2, PSD
    auto clusters = cluster_spectrum(eig.values, 1e-9);
    SkewCanonicalForm form;
    form.u = MatD(n, n);
    std::vector<VecD> used;
    auto push_column = [&](std::size_t col, const VecD& v) {
        for (std::size_t i = 0; i < n; ++i) form.u(i, col) = v[i];
        used.push_back(v);
    };
    auto orth_against_used = [&](VecD v) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& w : used) {
                double d = dot(w, v);
                for (std::size_t i = 0; i < n; ++i) v[i] -= d * w[i];
            }
        return v;
    };

    // cluster projectors, walked from the largest eigenvalue down; inside a
    // cluster the standard basis vectors are greedily adapted, so a generator
    // already in block form keeps the identity coordinates
    std::vector<std::pair<double, MatD>> cluster_proj;
    std::size_t at = 0;
    for (std::size_t c = 0; c < clusters.eigenvalues.size(); ++c) {
        MatD proj(n, n);
        for (std::size_t k = 0; k < clusters.multiplicities[c]; ++k, ++at)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t l = 0; l < n; ++l)
                    proj(i, l) += eig.vectors(i, at) * eig.vectors(l, at);
        cluster_proj.emplace_back(clusters.eigenvalues[c], proj);
    }

    std::size_t col = 0;
    for (auto it = cluster_proj.rbegin(); it != cluster_proj.rend(); ++it) {
        const auto& [value, proj] = *it;
        const bool zero_cluster = value <= tol * tol;
        const double alpha = zero_cluster ? 0.0 : std::sqrt(value);
        while (true) {
            // best remaining standard direction inside this cluster
            VecD best;
            double best_norm = 1e-6;
            for (std::size_t i = 0; i < n; ++i) {
                VecD cand(n);
                for (std::size_t r = 0; r < n; ++r) cand[r] = proj(r, i);
                cand = orth_against_used(cand);
                double nn = norm2(cand);
                if (nn > best_norm + 1e-12) {
                    best_norm = nn;
                    best = std::move(cand);
                }
            }
            if (best.empty()) break;
            for (auto& v : best) v /= best_norm;
            if (zero_cluster) {
                push_column(col++, best);
                ++form.kernel_dim;
            } else {
                VecD jv = j.apply(best);
                for (auto& v : jv) v /= alpha;
                push_column(col, best);
                push_column(col + 1, jv);
                form.alphas.push_back(alpha);
                col += 2;
            }
        }
    }
    if (col != n) throw std::runtime_error("skew_canonical_form: decomposition failed");
    return form;
}

/// The conjugation representative of a dim-1 pair: P with P J P^{-1} = -J,
/// identity on blocks, sign flip on the imaginary axes. A discrete element,
/// not reachable from the identity component.
inline MatD dim1_conjugation_rep(const MetricPairD& pair) {
    auto form = skew_canonical_form(pair.v_basis.at(0));
    const std::size_t n = pair.dim_a;
    MatD pt(n, n);
    for (std::size_t s = 0; s < form.alphas.size(); ++s) {
        pt(2 * s, 2 * s) = 1;
        pt(2 * s + 1, 2 * s + 1) = -1;
    }
    for (std::size_t k = 2 * form.alphas.size(); k < n; ++k) pt(k, k) = 1;
    return form.u * pt * form.u.transpose();
}

/// One-dimensional center: complex coordinates diagonalizing J, P = blockwise
/// conjugation, Q a torus rotation in the centralizer with Q(PX) = -X; on any
/// kernel of J both act as the identity / minus identity directly.
inline Witness witness_dim1(const MetricPairD& pair, const VecD& z, const VecD& x) {
    if (pair.dim_v() != 1) throw std::invalid_argument("witness_dim1: pair must have dim V = 1");
    MatD j = j_of(pair, z);
    if (max_abs(j) < 1e-12) throw std::invalid_argument("witness_dim1: J = 0");
    auto form = skew_canonical_form(pair.v_basis[0]);
    const std::size_t n = pair.dim_a;
    MatD pt(n, n), qt(n, n);
    VecD xt(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) xt[i] += form.u(k, i) * x[k];
    for (std::size_t s = 0; s < form.alphas.size(); ++s) {
        const std::size_t o = 2 * s;
        pt(o, o) = 1;
        pt(o + 1, o + 1) = -1;
        double xr = xt[o], xi = xt[o + 1];
        double r2 = xr * xr + xi * xi;
        double c, si;
        if (r2 > 1e-24) {
            c = -(xr * xr - xi * xi) / r2;  // e^{i phi} = -z / conj(z)
            si = -2.0 * xr * xi / r2;
        } else {
            c = -1.0;  // any torus element works; take the half turn
            si = 0.0;
        }
        qt(o, o) = c;
        qt(o, o + 1) = -si;
        qt(o + 1, o) = si;
        qt(o + 1, o + 1) = c;
    }
    for (std::size_t k = 2 * form.alphas.size(); k < n; ++k) {
        pt(k, k) = -1;  // kernel of J: flip X directly
        qt(k, k) = 1;
    }
    MatD p = form.u * pt * form.u.transpose();
    MatD q = form.u * qt * form.u.transpose();
    return finish_witness(pair, p, q, j, x);
}

/// Exact-arithmetic variant for a generator already in diag(a_s W) form.
struct ExactWitness {
    MatQ p, q, n;
};

inline ExactWitness witness_dim1_exact(const MetricPairQ& pair, const VecQ& x) {
    const std::size_t n = pair.dim_a;
    if (n % 2 != 0) throw std::invalid_argument("witness_dim1_exact: odd dimension");
    const MatQ& j = pair.v_basis.at(0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if ((i / 2 != k / 2 || i == k) && !j(i, k).is_zero())
                throw std::invalid_argument("witness_dim1_exact: generator not in block form");
    MatQ p(n, n), q(n, n);
    for (std::size_t s = 0; s < n / 2; ++s) {
        const std::size_t o = 2 * s;
        p(o, o) = Rational(1);
        p(o + 1, o + 1) = Rational(-1);
        Rational xr = x[o], xi = x[o + 1];
        Rational r2 = xr * xr + xi * xi;
        Rational c(-1), si(0);
        if (!r2.is_zero()) {
            c = -(xr * xr - xi * xi) / r2;
            si = Rational(-2) * xr * xi / r2;
        }
        q(o, o) = c;
        q(o, o + 1) = -si;
        q(o + 1, o) = si;
        q(o + 1, o + 1) = c;
    }
    return {p, q, q * p};
}

namespace detail {

/// Unit vector with the sign fixed so its first nonzero coordinate is
/// positive; the deterministic tie-break for circle-of-choices picks.
inline QuatD sign_normalized(QuatD q) {
    double n = norm(q);
    q = (1.0 / n) * q;
    for (double c : {q.w, q.x, q.y, q.z}) {
        if (std::abs(c) > 1e-12) {
            if (c < 0) q = -1.0 * q;
            break;
        }
    }
    return q;
}

inline QuatD block_component(const VecD& x, std::size_t s) {
    return {x[4 * s], x[4 * s + 1], x[4 * s + 2], x[4 * s + 3]};
}

/// r with (y) r = -x for ||y|| = ||x||, and r = 1 when the block vanishes.
inline QuatD right_return_unit(const QuatD& y, const QuatD& x) {
    double n2 = x.norm_sq();
    if (n2 < 1e-24) return QuatD::one();
    return (-1.0 / n2) * (y.conj() * x);
}

} // namespace detail

/// Two-dimensional center on H^p: per block a unit imaginary q_s orthogonal
/// to a_s and b_s gives P = diag(L_{q_s}) acting as -Id on V; a centralizer
/// element Q = diag(R_{r_s}) then returns P X to -X.
inline Witness witness_dim2(const MetricPairD& pair, const VecD& z, const VecD& x) {
    auto form = quaternionic_block_form(pair);
    if (!form || pair.dim_v() != 2)
        throw std::invalid_argument("witness_dim2: pair is not a two-dimensional block family");
    MatD j = j_of(pair, z);
    std::vector<MatD> pb, qb;
    for (std::size_t s = 0; s < form->blocks; ++s) {
        QuatD a = QuatD::imaginary(form->a_maps[s](0, 0), form->a_maps[s](1, 0), form->a_maps[s](2, 0));
        QuatD b = QuatD::imaginary(form->a_maps[s](0, 1), form->a_maps[s](1, 1), form->a_maps[s](2, 1));
        QuatD cross = im_cross(a, b);
        if (norm(cross) < 1e-10)
            throw std::invalid_argument("witness_dim2: degenerate block (a_s parallel to b_s)");
        QuatD qs = detail::sign_normalized(cross);
        QuatD xs = detail::block_component(x, s);
        QuatD rs = detail::right_return_unit(qs * xs, xs);
        pb.push_back(left_mult_matrix(qs));
        qb.push_back(right_mult_matrix(rs));
    }
    return finish_witness(pair, block_diag(pb), block_diag(qb), j, x);
}

/// Three-dimensional center, scaled family: a single unit imaginary r
/// orthogonal to i and to b j + c k anti-commutes with J = a J_1 + b J_2 +
/// c J_3 in every block; Q = diag(R_{r_s}) fixes the anchor equation.
inline Witness witness_dim3(const MetricPairD& pair, const VecD& z, const VecD& x) {
    auto form = quaternionic_block_form(pair);
    if (!form || pair.dim_v() != 3)
        throw std::invalid_argument("witness_dim3: pair is not a three-dimensional block family");
    MatD j = j_of(pair, z);
    const double b = z[1], c = z[2];
    QuatD r;
    if (b * b + c * c > 1e-20)
        r = detail::sign_normalized(QuatD::imaginary(0.0, c, -b));
    else
        r = QuatD::j();
    std::vector<MatD> pb, qb;
    MatD lr = left_mult_matrix(r);
    for (std::size_t s = 0; s < form->blocks; ++s) {
        QuatD xs = detail::block_component(x, s);
        QuatD rs = detail::right_return_unit(r * xs, xs);
        pb.push_back(lr);
        qb.push_back(right_mult_matrix(rs));
    }
    return finish_witness(pair, block_diag(pb), block_diag(qb), j, x);
}

} // namespace nilws
