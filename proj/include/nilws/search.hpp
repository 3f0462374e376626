#pragma once

#include <functional>
#include <limits>

#include "nilws/families.hpp"
#include "nilws/normalizer.hpp"
#include "nilws/operator_nullspace.hpp"
#include "nilws/rng.hpp"
#include "nilws/witness.hpp"

namespace nilws {

/// Witness search over N = F exp(D), D in the normalizer algebra, F ranging
/// over supplied discrete representatives. The penalty is
/// ||N X + X||^2 + ||N J + J N||_F^2; success means driving it to the floor.
struct SearchConfig {
    std::size_t restarts = 20;
    std::size_t max_gd_iters = 150;
    std::size_t max_gn_iters = 40;
    double success_floor = 1e-16;
    double report_floor = 1e-4;  // stalls above this get reported as evidence
    double start_radius = 1.5;
    std::uint64_t seed = 0;
};

struct SearchOutcome {
    bool success = false;
    MatD n;
    VecD coefficients;
    std::size_t rep_index = 0;
    std::size_t restarts_used = 0;
    double penalty = std::numeric_limits<double>::infinity();
    VecD best_per_start;
};

namespace detail {

struct PenaltyModel {
    const std::vector<MatD>& basis;  // directions spanning the search algebra
    MatD f;                          // discrete representative in front
    const MatD& j;
    const VecD& x;

    MatD assemble_d(const VecD& c) const {
        MatD d(f.rows(), f.cols());
        for (std::size_t i = 0; i < basis.size(); ++i) d = d + c[i] * basis[i];
        return d;
    }

    MatD n_of(const VecD& c) const { return f * matrix_exp(assemble_d(c)); }

    static VecD residual_vec(const MatD& n, const MatD& j, const VecD& x) {
        VecD nx = n.apply(x);
        MatD cm = n * j + j * n;
        VecD r(x.size() + cm.data().size());
        for (std::size_t i = 0; i < x.size(); ++i) r[i] = nx[i] + x[i];
        for (std::size_t i = 0; i < cm.data().size(); ++i) r[x.size() + i] = cm.data()[i];
        return r;
    }

    double value(const VecD& c) const {
        auto r = residual_vec(n_of(c), j, x);
        return dot(r, r);
    }

    /// Analytic gradient; the exponential is differentiated exactly through
    /// the block-augmented exponential.
    VecD gradient(const VecD& c) const {
        MatD d = assemble_d(c);
        MatD n = f * matrix_exp(d);
        VecD r = residual_vec(n, j, x);
        VecD g(basis.size(), 0.0);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            MatD dn = f * expm_frechet(d, basis[i]);
            VecD dr = residual_vec_direction(dn, j, x);
            g[i] = 2.0 * dot(r, dr);
        }
        return g;
    }

    static VecD residual_vec_direction(const MatD& dn, const MatD& j, const VecD& x) {
        VecD dnx = dn.apply(x);
        MatD dcm = dn * j + j * dn;
        VecD r(x.size() + dcm.data().size());
        for (std::size_t i = 0; i < x.size(); ++i) r[i] = dnx[i];
        for (std::size_t i = 0; i < dcm.data().size(); ++i) r[x.size() + i] = dcm.data()[i];
        return r;
    }
};

inline void gradient_descent(const PenaltyModel& model, VecD& c, double& fval,
                             std::size_t max_iters, double floor_val) {
    fval = model.value(c);
    for (std::size_t it = 0; it < max_iters && fval > floor_val; ++it) {
        VecD g = model.gradient(c);
        double gn2 = dot(g, g);
        if (gn2 < 1e-24) break;
        double step = 1.0;
        bool moved = false;
        for (int bt = 0; bt < 30; ++bt) {
            VecD cand = c;
            for (std::size_t i = 0; i < c.size(); ++i) cand[i] -= step * g[i];
            double fc = model.value(cand);
            if (fc <= fval - 1e-4 * step * gn2) {
                c = cand;
                fval = fc;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
}

/// Gauss-Newton polish with Levenberg damping on the stacked residual.
inline void gauss_newton(const PenaltyModel& model, VecD& c, double& fval,
                         std::size_t max_iters, double floor_val) {
    double lambda = 1e-4;
    fval = model.value(c);
    for (std::size_t it = 0; it < max_iters && fval > floor_val; ++it) {
        MatD d = model.assemble_d(c);
        MatD n = model.f * matrix_exp(d);
        VecD r = PenaltyModel::residual_vec(n, model.j, model.x);
        const std::size_t m = r.size(), k = c.size();
        MatD jac(m, k);
        for (std::size_t i = 0; i < k; ++i) {
            MatD dn = model.f * expm_frechet(d, model.basis[i]);
            VecD dr = PenaltyModel::residual_vec_direction(dn, model.j, model.x);
            for (std::size_t row = 0; row < m; ++row) jac(row, i) = dr[row];
        }
        MatD jtj = jac.transpose() * jac;
        VecD jtr(k, 0.0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t row = 0; row < m; ++row) jtr[i] += jac(row, i) * r[row];
        bool improved = false;
        for (int attempt = 0; attempt < 8 && !improved; ++attempt) {
            MatD lhs = jtj;
            for (std::size_t i = 0; i < k; ++i) lhs(i, i) += lambda;
            VecD delta;
            try {
                delta = solve_linear(lhs, jtr);
            } catch (const std::domain_error&) {
                lambda *= 10;
                continue;
            }
            VecD cand = c;
            for (std::size_t i = 0; i < k; ++i) cand[i] -= delta[i];
            double fc = model.value(cand);
            if (fc < fval) {
                c = cand;
                fval = fc;
                lambda = std::max(lambda * 0.3, 1e-12);
                improved = true;
            } else {
                lambda *= 10;
            }
        }
        if (!improved) break;
    }
}

} // namespace detail

/// Penalty and analytic gradient, exposed for the finite-difference check.
inline double search_penalty(const std::vector<MatD>& basis, const MatD& f, const MatD& j,
                             const VecD& x, const VecD& c) {
    detail::PenaltyModel model{basis, f, j, x};
    return model.value(c);
}

inline VecD search_penalty_gradient(const std::vector<MatD>& basis, const MatD& f, const MatD& j,
                                    const VecD& x, const VecD& c) {
    detail::PenaltyModel model{basis, f, j, x};
    return model.gradient(c);
}

inline SearchOutcome generic_witness_search(const MetricPairD& pair, const NormalizerData& nd,
                                            const MatD& j, const VecD& x,
                                            std::vector<MatD> reps, const SearchConfig& cfg = {}) {
    if (reps.empty()) reps.push_back(MatD::identity(pair.dim_a));
    SearchOutcome out;
    Rng rng(cfg.seed, 23);
    for (std::size_t fi = 0; fi < reps.size(); ++fi) {
        detail::PenaltyModel model{nd.n_basis, reps[fi], j, x};
        for (std::size_t start = 0; start < cfg.restarts; ++start) {
            VecD c(nd.n_basis.size(), 0.0);
            if (start > 0)
                for (auto& v : c) v = cfg.start_radius * rng.normal();
            double fval;
            detail::gradient_descent(model, c, fval, cfg.max_gd_iters, cfg.success_floor);
            if (fval > cfg.success_floor)
                detail::gauss_newton(model, c, fval, cfg.max_gn_iters, cfg.success_floor);
            out.best_per_start.push_back(fval);
            ++out.restarts_used;
            if (fval < out.penalty) {
                out.penalty = fval;
                out.coefficients = c;
                out.rep_index = fi;
                out.n = model.n_of(c);
            }
            if (out.penalty <= cfg.success_floor) {
                out.success = true;
                return out;
            }
        }
    }
    return out;
}

/// Basis of the sp(2) subalgebra span{J_i J_j : i < j <= 5}, trace-normalized.
inline std::vector<MatD> sp2_basis(const std::vector<MatD>& octonions) {
    std::vector<MatD> basis;
    for (int i = 0; i < 5; ++i)
        for (int k = i + 1; k < 5; ++k) {
            MatD b = octonions[i] * octonions[k];
            basis.push_back((1.0 / frobenius(b)) * b);
        }
    return basis;
}

/// Stabilizer of J inside sp(2): the kernel of D -> [D, J] on that span.
inline std::vector<MatD> sp2_stabilizer(const std::vector<MatD>& octonions, const MatD& j,
                                        double sv_tol = 1e-9) {
    auto basis = sp2_basis(octonions);
    auto op = [&](const MatD& d) { return commutator(d, j); };
    return nullspace_of_operator(basis, op, sv_tol).basis;
}

/// Witness for the six-dimensional family: F = J_6 conjugates V by -Id; the
/// anchor equation is then solved by an element of the stabilizer group of J
/// inside Sp(2), found by a multi-start least-squares search over exp.
inline Witness witness_dim6(const BuiltFamily& fam, const VecD& z, const VecD& x,
                            const SearchConfig& cfg = {}, std::size_t* restarts_out = nullptr) {
    const bool is_dim6 = fam.spec.kind == FamilyKind::dim6_theta ||
                         (fam.spec.kind == FamilyKind::reduction && fam.spec.reduction_case == 2);
    if (!is_dim6)
        throw std::invalid_argument("witness_dim6: family must be the six-dimensional theta family");
    const MetricPairD& pair = fam.pair;
    const MatD& j6 = fam.octonions[5];
    MatD j = j_of(pair, z);
    if (norm2(x) < 1e-14) {
        if (restarts_out) *restarts_out = 0;
        return finish_witness(pair, j6, MatD::identity(8), j, x);
    }
    auto stab = sp2_stabilizer(fam.octonions, j);
    VecD y = j6.apply(x);
    // Q(J_6 X) = -X over Q = exp(D), D in the stabilizer
    auto value_n = [&](const VecD& c) {
        MatD d(8, 8);
        for (std::size_t i = 0; i < stab.size(); ++i) d = d + c[i] * stab[i];
        return matrix_exp(d);
    };
    Rng rng(cfg.seed, 31);
    Witness best;
    double best_pen = std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    for (std::size_t start = 0; start < cfg.restarts; ++start) {
        VecD c(stab.size(), 0.0);
        if (start > 0)
            for (auto& v : c) v = rng.uniform(-2.5, 2.5);
        // least squares on exp(D) y + x alone; the conjugation equation holds
        // identically on the stabilizer
        double lambda = 1e-4;
        double fval = [&] {
            MatD q = value_n(c);
            VecD r = q.apply(y);
            for (std::size_t i = 0; i < r.size(); ++i) r[i] += x[i];
            return dot(r, r);
        }();
        for (std::size_t it = 0; it < 120 && fval > 1e-22; ++it) {
            MatD d(8, 8);
            for (std::size_t i = 0; i < stab.size(); ++i) d = d + c[i] * stab[i];
            MatD q = matrix_exp(d);
            VecD r = q.apply(y);
            for (std::size_t i = 0; i < r.size(); ++i) r[i] += x[i];
            MatD jac(8, stab.size());
            for (std::size_t i = 0; i < stab.size(); ++i) {
                VecD dq = expm_frechet(d, stab[i]).apply(y);
                for (std::size_t row = 0; row < 8; ++row) jac(row, i) = dq[row];
            }
            MatD jtj = jac.transpose() * jac;
            VecD jtr(stab.size(), 0.0);
            for (std::size_t i = 0; i < stab.size(); ++i)
                for (std::size_t row = 0; row < 8; ++row) jtr[i] += jac(row, i) * r[row];
            bool improved = false;
            for (int attempt = 0; attempt < 8 && !improved; ++attempt) {
                MatD lhs = jtj;
                for (std::size_t i = 0; i < stab.size(); ++i) lhs(i, i) += lambda;
                VecD delta;
                try {
                    delta = solve_linear(lhs, jtr);
                } catch (const std::domain_error&) {
                    lambda *= 10;
                    continue;
                }
                VecD cand = c;
                for (std::size_t i = 0; i < stab.size(); ++i) cand[i] -= delta[i];
                MatD qc = value_n(cand);
                VecD rc = qc.apply(y);
                for (std::size_t i = 0; i < rc.size(); ++i) rc[i] += x[i];
                double fc = dot(rc, rc);
                if (fc < fval) {
                    c = cand;
                    fval = fc;
                    lambda = std::max(lambda * 0.3, 1e-13);
                    improved = true;
                } else {
                    lambda *= 10;
                }
            }
            if (!improved) break;
        }
        ++used;
        Witness w = finish_witness(pair, j6, value_n(c), j, x);
        double pen = w.max_residual();
        if (pen < best_pen) {
            best_pen = pen;
            best = w;
        }
        if (best_pen <= 1e-9) break;
    }
    if (restarts_out) *restarts_out = used;
    return best;
}

} // namespace nilws
