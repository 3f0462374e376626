#pragma once

#include <string>
#include <vector>

#include "nilws/metric_pair.hpp"
#include "nilws/rng.hpp"

namespace nilws {

/// Element of n = V + a as (center coefficients, vector in a).
template <typename T>
struct AlgebraElement {
    std::vector<T> z;  // coefficients in v_basis
    std::vector<T> x;  // vector in a
};

/// The metric 2-step nilpotent algebra attached to a pair: brackets of the
/// a-part land in V via the defining identity <J_Z X, Y> = <Z, [X,Y]>.
template <typename T>
struct NilpotentAlgebra {
    MetricPair<T> pair;

    explicit NilpotentAlgebra(MetricPair<T> p) : pair(std::move(p)) {}

    std::size_t dim() const { return pair.dim_v() + pair.dim_a; }

    AlgebraElement<T> element(std::vector<T> z, std::vector<T> x) const {
        if (z.size() != pair.dim_v() || x.size() != pair.dim_a)
            throw std::invalid_argument("NilpotentAlgebra: element shape mismatch");
        return {std::move(z), std::move(x)};
    }
};

/// Z solving gram * Z = t with t_k = <v_k X1, X2>; central parts drop out.
template <typename T>
std::vector<T> bracket_z(const MetricPair<T>& p, const std::vector<T>& x1, const std::vector<T>& x2) {
    std::vector<T> t(p.dim_v(), T(0));
    for (std::size_t k = 0; k < p.dim_v(); ++k) t[k] = dot(p.v_basis[k].apply(x1), x2);
    if (p.dim_v() == 0) return t;
    return solve_linear(p.gram, t);
}

template <typename T>
AlgebraElement<T> bracket(const NilpotentAlgebra<T>& alg, const AlgebraElement<T>& a,
                          const AlgebraElement<T>& b) {
    AlgebraElement<T> out;
    out.z = bracket_z(alg.pair, a.x, b.x);
    out.x.assign(alg.pair.dim_a, T(0));
    return out;
}

struct StructureReport {
    bool jacobi_ok = true;
    bool two_step_ok = true;
    bool antisymmetry_ok = true;
    std::size_t derived_dim = 0;
    bool derived_equals_v = false;
    std::size_t common_kernel_dim = 0;  // center exceeds V iff this is > 0
    bool center_equals_v = false;
    std::vector<std::string> failures;

    bool all_ok() const { return failures.empty(); }
};

/// Verifies the 2-step identities on sampled elements and computes the
/// derived-algebra rank and the common kernel of V (center excess).
inline StructureReport structure_check(const MetricPairD& p, std::uint64_t seed = 0,
                                       std::size_t samples = 64, double tol = 1e-10) {
    StructureReport rep;
    NilpotentAlgebra<double> alg(p);
    Rng rng(seed, 17);
    const std::size_t m = p.dim_v(), n = p.dim_a;

    auto rand_elem = [&] {
        return alg.element(rng.normal_vector(m), rng.normal_vector(n));
    };
    auto add = [&](const AlgebraElement<double>& a, const AlgebraElement<double>& b, double s) {
        AlgebraElement<double> r = a;
        for (std::size_t i = 0; i < r.z.size(); ++i) r.z[i] += s * b.z[i];
        for (std::size_t i = 0; i < r.x.size(); ++i) r.x[i] += s * b.x[i];
        return r;
    };
    auto size_of = [&](const AlgebraElement<double>& e) {
        return std::max(max_abs(e.z), max_abs(e.x));
    };

    for (std::size_t s = 0; s < samples; ++s) {
        auto a = rand_elem(), b = rand_elem(), c = rand_elem();
        auto ab = bracket(alg, a, b);
        auto ba = bracket(alg, b, a);
        if (size_of(add(ab, ba, 1.0)) > tol) rep.antisymmetry_ok = false;
        // all brackets are central, so [[a,b],c] must vanish
        if (size_of(bracket(alg, ab, c)) > tol) rep.two_step_ok = false;
        auto jac = add(add(bracket(alg, ab, c), bracket(alg, bracket(alg, b, c), a), 1.0),
                       bracket(alg, bracket(alg, c, a), b), 1.0);
        if (size_of(jac) > tol) rep.jacobi_ok = false;
    }

    // derived algebra: the span of bracket values over basis pairs of a
    if (m > 0) {
        MatD tmat(n * (n - 1) / 2, m);
        std::size_t row = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j, ++row)
                for (std::size_t k = 0; k < m; ++k) tmat(row, k) = p.v_basis[k](i, j) * -1.0;
        // t_k = <v_k e_i, e_j> = (v_k)_{ji} = -(v_k)_{ij}
        rep.derived_dim = rank_of(tmat, 1e-9);
    }
    rep.derived_equals_v = (rep.derived_dim == m);
    if (!rep.derived_equals_v) rep.failures.push_back("derived algebra smaller than V");

    // common kernel of all basis elements
    if (m > 0) {
        MatD stacked(n * m, n);
        for (std::size_t k = 0; k < m; ++k) stacked.set_block(k * n, 0, p.v_basis[k]);
        auto ns = svd_nullspace(stacked, 1e-9);
        rep.common_kernel_dim = ns.kernel.size();
    } else {
        rep.common_kernel_dim = n;
    }
    rep.center_equals_v = (rep.common_kernel_dim == 0);
    if (!rep.center_equals_v) rep.failures.push_back("center strictly larger than V");

    if (!rep.jacobi_ok) rep.failures.push_back("Jacobi identity failed");
    if (!rep.two_step_ok) rep.failures.push_back("[n,[n,n]] != 0");
    if (!rep.antisymmetry_ok) rep.failures.push_back("bracket not antisymmetric");
    return rep;
}

} // namespace nilws
