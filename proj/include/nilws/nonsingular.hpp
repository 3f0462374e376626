#pragma once

#include <functional>
#include <limits>
#include <optional>

#include "nilws/nilalgebra.hpp"
#include "nilws/quaternionic_blocks.hpp"
#include "nilws/rng.hpp"

namespace nilws {

enum class NonSingularity {
    certified_nonsingular,
    singular_with_witness,
    numerically_nonsingular,
};

inline const char* to_string(NonSingularity s) {
    switch (s) {
        case NonSingularity::certified_nonsingular: return "certified_nonsingular";
        case NonSingularity::singular_with_witness: return "singular_with_witness";
        default: return "numerically_nonsingular";
    }
}

struct NonSingularityVerdict {
    NonSingularity status = NonSingularity::numerically_nonsingular;
    std::optional<VecD> witness;  // coefficient vector with det J_Z = 0
    double min_det_on_sphere = std::numeric_limits<double>::infinity();
};

namespace detail {

/// Nelder-Mead on R^m; enough iterations to localize polynomial zeros.
inline VecD nelder_mead(std::function<double(const VecD&)> f, VecD x0, double step,
                        std::size_t max_iter = 400) {
    const std::size_t n = x0.size();
    std::vector<VecD> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);
    for (std::size_t it = 0; it < max_iter; ++it) {
        std::vector<std::size_t> idx(n + 1);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        std::vector<VecD> sp(n + 1);
        std::vector<double> sv(n + 1);
        for (std::size_t i = 0; i <= n; ++i) { sp[i] = pts[idx[i]]; sv[i] = vals[idx[i]]; }
        pts = sp; vals = sv;
        if (vals[0] < 1e-14 || std::abs(vals[n] - vals[0]) < 1e-16) break;
        VecD centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / static_cast<double>(n);
        auto combine = [&](double c) {
            VecD x(n);
            for (std::size_t j = 0; j < n; ++j) x[j] = centroid[j] + c * (pts[n][j] - centroid[j]);
            return x;
        };
        VecD xr = combine(-1.0);
        double fr = f(xr);
        if (fr < vals[0]) {
            VecD xe = combine(-2.0);
            double fe = f(xe);
            if (fe < fr) { pts[n] = xe; vals[n] = fe; }
            else { pts[n] = xr; vals[n] = fr; }
        } else if (fr < vals[n - 1]) {
            pts[n] = xr; vals[n] = fr;
        } else {
            VecD xc = combine(0.5);
            double fc = f(xc);
            if (fc < vals[n]) { pts[n] = xc; vals[n] = fc; }
            else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) pts[i][j] = 0.5 * (pts[i][j] + pts[0][j]);
                    vals[i] = f(pts[i]);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i) if (vals[i] < vals[best]) best = i;
    return pts[best];
}

} // namespace detail

/// Exact certification for quaternionic block pairs: J_Z is singular iff some
/// block quaternion vanishes, so non-singularity is the joint triviality of
/// the kernels of the per-block maps A_s.
inline NonSingularityVerdict nonsingularity_exact_block(const MetricPairQ& p) {
    auto form = quaternionic_block_form(p);
    if (!form) throw std::invalid_argument("exact_block: pair is not quaternionic block-diagonal");
    NonSingularityVerdict v;
    for (const auto& a : form->a_maps) {
        auto ker = kernel_basis(a);
        if (!ker.empty()) {
            v.status = NonSingularity::singular_with_witness;
            v.witness = to_double(ker.front());
            return v;
        }
    }
    v.status = NonSingularity::certified_nonsingular;
    return v;
}

inline NonSingularityVerdict nonsingularity_exact_block(const MetricPairD& p, double tol = 1e-10) {
    auto form = quaternionic_block_form(p, tol);
    if (!form) throw std::invalid_argument("exact_block: pair is not quaternionic block-diagonal");
    NonSingularityVerdict v;
    for (const auto& a : form->a_maps) {
        auto ns = svd_nullspace(a, 1e-9);
        if (!ns.kernel.empty()) {
            v.status = NonSingularity::singular_with_witness;
            v.witness = ns.kernel.front();
            return v;
        }
    }
    v.status = NonSingularity::certified_nonsingular;
    return v;
}

/// Minimizes |det J_Z| over the unit sphere of (V, gram): coarse sampling,
/// then local refinement of the best starts. A value below det_tol counts as
/// a zero and yields a singular witness.
inline NonSingularityVerdict nonsingularity_sampled(const MetricPairD& p, std::uint64_t seed = 1,
                                                    std::size_t samples = 10000,
                                                    double det_tol = 1e-9) {
    NonSingularityVerdict v;
    const std::size_t m = p.dim_v();
    if (m == 0) {
        v.status = NonSingularity::certified_nonsingular;
        return v;
    }
    auto objective = [&](const VecD& z) {
        double n = gram_norm(p, z);
        if (n < 1e-9) return std::numeric_limits<double>::infinity();
        VecD zu = z;
        for (auto& c : zu) c /= n;
        return std::abs(determinant(j_of(p, zu)));
    };
    Rng rng(seed, 5);
    std::vector<std::pair<double, VecD>> best;
    for (std::size_t s = 0; s < samples; ++s) {
        VecD z = gram_normalized(p, rng.unit_vector(m));
        double val = std::abs(determinant(j_of(p, z)));
        best.emplace_back(val, z);
        std::sort(best.begin(), best.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (best.size() > 5) best.pop_back();
    }
    double min_det = best.front().first;
    VecD arg = best.front().second;
    for (const auto& [val, z] : best) {
        VecD refined = detail::nelder_mead(objective, z, 0.1);
        double rv = objective(refined);
        if (rv < min_det) {
            min_det = rv;
            arg = gram_normalized(p, refined);
        }
    }
    v.min_det_on_sphere = min_det;
    if (min_det <= det_tol) {
        v.status = NonSingularity::singular_with_witness;
        v.witness = arg;
    } else {
        v.status = NonSingularity::numerically_nonsingular;
    }
    return v;
}

enum class NonSingularityMode { exact_block, sampled };

inline NonSingularityVerdict nonsingularity_check(const MetricPairD& p, NonSingularityMode mode,
                                                  std::uint64_t seed = 1) {
    if (mode == NonSingularityMode::exact_block) return nonsingularity_exact_block(p);
    return nonsingularity_sampled(p, seed);
}

} // namespace nilws
