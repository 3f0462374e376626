#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "nilws/nonsingular.hpp"
#include "nilws/obstruction.hpp"
#include "nilws/search.hpp"
#include "nilws/witness.hpp"

namespace nilws {

/// A discrete normalizer representative that conjugates the line R J to -J
/// for Clifford-type pairs: J_v for a unit v orthogonal to the direction of J,
/// chosen inside the first eligible coordinates (the part of V on which the
/// gram restriction is a multiple of the standard one).
inline MatD clifford_minus_rep(const MetricPairD& pair, const VecD& z, std::size_t eligible) {
    const std::size_t m = pair.dim_v();
    eligible = std::min(eligible, m);
    VecD w(m, 0.0);
    double w2 = 0;
    for (std::size_t i = 0; i < eligible; ++i) {
        w[i] = z[i];
        w2 += z[i] * z[i];
    }
    VecD v(m, 0.0);
    if (w2 < 1e-16) {
        v[0] = 1.0;
    } else {
        std::size_t jmin = 0;
        for (std::size_t i = 1; i < eligible; ++i)
            if (std::abs(z[i]) < std::abs(z[jmin])) jmin = i;
        for (std::size_t i = 0; i < eligible; ++i) v[i] = (i == jmin ? 1.0 : 0.0) - z[jmin] * w[i] / w2;
        double n = norm2(v);
        for (auto& c : v) c /= n;
    }
    return j_of(pair, v);
}

enum class WsComputed { ws, not_ws, inconclusive };

inline const char* to_string(WsComputed v) {
    switch (v) {
        case WsComputed::ws: return "ws";
        case WsComputed::not_ws: return "not_ws";
        default: return "inconclusive";
    }
}

struct SampleRecord {
    VecD z, x;
    bool witnessed = false;
    bool targeted = false;       // extra probe at a known obstruction direction
    double r_anchor = 0;         // ||N X + X||
    double r_conj = 0;           // ||N J + J N||
    double r_member = 0;         // membership residual
    double max_residual = 0;     // for witnessed samples
    double best_penalty = 0;     // for search failures
    std::size_t restarts = 0;
};

struct VerdictReport {
    std::string family;
    std::uint64_t seed = 0;
    std::size_t n_samples = 0;
    std::vector<SampleRecord> samples;
    std::vector<std::size_t> failures;  // indices of unwitnessed samples
    double max_residual = 0;
    bool vacuous = false;
    std::string warning;

    bool all_witnessed() const { return !vacuous && failures.empty(); }
};

namespace detail {

inline bool has_closed_form_witness(const BuiltFamily& fam) {
    switch (fam.spec.kind) {
        case FamilyKind::dim1:
        case FamilyKind::dim2:
        case FamilyKind::dim3_scaled:
        case FamilyKind::dim6_theta:
            return true;
        case FamilyKind::clifford:
            return fam.spec.clifford_case == 'a' || fam.spec.clifford_case == 'b';
        case FamilyKind::reduction:
            return fam.spec.reduction_case == 2;
        default:
            return false;
    }
}

inline Witness closed_form_witness(const BuiltFamily& fam, const VecD& z, const VecD& x,
                                   const SearchConfig& cfg, std::size_t* restarts) {
    switch (fam.spec.kind) {
        case FamilyKind::dim1:
            return witness_dim1(fam.pair, z, x);
        case FamilyKind::dim2:
            return witness_dim2(fam.pair, z, x);
        case FamilyKind::dim3_scaled:
            return witness_dim3(fam.pair, z, x);
        case FamilyKind::dim6_theta:
        case FamilyKind::reduction:
            return witness_dim6(fam, z, x, cfg, restarts);
        case FamilyKind::clifford:
            if (fam.spec.clifford_case == 'a')
                return fam.pair.dim_v() == 1 ? witness_dim1(fam.pair, z, x)
                                             : witness_dim2(fam.pair, z, x);
            return witness_dim3(fam.pair, z, x);
        default:
            throw std::logic_error("closed_form_witness: no construction for this family");
    }
}

/// A representative taken from the tail eigenspace span(J_6, J_7) of the
/// seven-dimensional Clifford pairs, orthogonal to the given direction.
inline MatD tail_minus_rep(const MetricPairD& pair, const VecD& z) {
    VecD v(pair.dim_v(), 0.0);
    double n2 = z[5] * z[5] + z[6] * z[6];
    if (n2 < 1e-16) {
        v[5] = 1.0;
    } else {
        v[5] = -z[6] / std::sqrt(n2);
        v[6] = z[5] / std::sqrt(n2);
    }
    return j_of(pair, v);
}

/// Discrete representatives to put in front of the exponential search.
inline std::vector<MatD> search_reps(const BuiltFamily& fam, const VecD& z) {
    std::vector<MatD> reps;
    const auto& js = fam.octonions;
    switch (fam.spec.kind) {
        case FamilyKind::dim7_theta:
            reps = {MatD::identity(8), js[5]};
            break;
        case FamilyKind::clifford:
            // J_6 and J_7 conjugate span(J_1..J_5) by -Id; for the larger
            // spans, structures orthogonal to the sampled direction do it
            if (fam.spec.clifford_case == 'c')
                reps = {js[5], js[6]};
            else if (fam.spec.clifford_case == 'd')
                reps = {js[6], clifford_minus_rep(fam.pair, z, 5)};
            else if (fam.spec.clifford_case == 'e')
                reps = {clifford_minus_rep(fam.pair, z, 5), tail_minus_rep(fam.pair, z)};
            else if (fam.spec.clifford_case == 'f')
                reps = {clifford_minus_rep(fam.pair, z, 7)};
            break;
        case FamilyKind::reduction:
            switch (fam.spec.reduction_case) {
                case 1:
                    reps = {js[5], js[6]};
                    break;
                case 4:
                    reps = {clifford_minus_rep(fam.pair, z, 5), tail_minus_rep(fam.pair, z)};
                    break;
                case 5:
                    reps = {js[6]};  // J_7 conjugates this V by -Id
                    break;
                case 3:
                    reps = {MatD::identity(8), js[5]};
                    break;
                default:
                    break;
            }
            break;
        default:
            break;
    }
    if (reps.empty()) reps = {MatD::identity(fam.pair.dim_a)};
    return reps;
}

} // namespace detail

/// Samples (J, X) on the product of unit spheres and tries to witness each
/// pair, by the family construction when one exists and by the normalizer
/// search otherwise. For the dim-7 kind one targeted probe at the J_6
/// direction is appended: that is where the obstruction lives.
inline VerdictReport ws_sample_verdict(const BuiltFamily& fam, std::size_t n_samples,
                                       std::uint64_t seed, double tol = 1e-8,
                                       const NormalizerData* nd_hint = nullptr,
                                       SearchConfig search_cfg = {}) {
    VerdictReport rep;
    rep.family = fam.name();
    rep.seed = seed;
    rep.n_samples = n_samples;
    if (n_samples == 0) {
        rep.vacuous = true;
        rep.warning = "no samples requested: verdict is vacuous";
        return rep;
    }
    const bool closed_form = detail::has_closed_form_witness(fam);
    const bool dim7_kind = fam.spec.kind == FamilyKind::dim7_theta ||
                           (fam.spec.kind == FamilyKind::reduction && fam.spec.reduction_case == 3);

    std::optional<NormalizerData> nd_local;
    const NormalizerData* nd = nd_hint;
    if (!closed_form && nd == nullptr) {
        nd_local = normalizer_algebra(fam.pair);
        nd = &*nd_local;
    }

    const std::size_t total = n_samples + (dim7_kind ? 1 : 0);
    rep.samples.resize(total);
    std::mutex mu;
    parallel_for_index(total, [&](std::size_t idx) {
        Rng rng(seed, 1000 + idx);
        SampleRecord rec;
        if (idx < n_samples) {
            rec.z = gram_normalized(fam.pair, rng.unit_vector(fam.pair.dim_v()));
        } else {
            rec.targeted = true;
            rec.z.assign(fam.pair.dim_v(), 0.0);
            rec.z[5] = 1.0;  // the J_6 direction
        }
        rec.x = rng.unit_vector(fam.pair.dim_a);
        SearchConfig cfg = search_cfg;
        cfg.seed = seed ^ (idx * 0x9e37ULL);
        MatD j = j_of(fam.pair, rec.z);
        auto record_witness = [&](const Witness& w) {
            rec.r_anchor = w.r_anchor;
            rec.r_conj = w.r_conj;
            rec.r_member = w.r_member;
            rec.max_residual = w.max_residual();
            rec.witnessed = rec.max_residual <= tol;
        };
        if (closed_form && !rec.targeted) {
            Witness w = detail::closed_form_witness(fam, rec.z, rec.x, cfg, &rec.restarts);
            record_witness(w);
            rec.best_penalty = rec.witnessed ? 0.0 : rec.max_residual * rec.max_residual;
        } else {
            auto out = generic_witness_search(fam.pair, *nd, j, rec.x,
                                              detail::search_reps(fam, rec.z), cfg);
            rec.best_penalty = out.penalty;
            rec.restarts = out.restarts_used;
            if (out.success)
                record_witness(finish_witness(fam.pair, MatD::identity(fam.pair.dim_a), out.n, j,
                                              rec.x));
        }
        std::lock_guard<std::mutex> lock(mu);
        rep.samples[idx] = std::move(rec);
    });
    for (std::size_t i = 0; i < rep.samples.size(); ++i) {
        if (!rep.samples[i].witnessed) rep.failures.push_back(i);
        rep.max_residual = std::max(rep.max_residual, rep.samples[i].max_residual);
    }
    return rep;
}

/// Combined verdict: sampling plus whichever obstruction applies.
struct WsDecision {
    VerdictReport samples;
    WsComputed computed = WsComputed::inconclusive;
    ExpectedWs expected = ExpectedWs::unknown;
    bool match = true;
    int exit_code = 0;
    std::string obstruction_note;
    std::optional<ObstructionReport> dim7_report;
    std::optional<RepInvarianceReport> rep_report;
    std::optional<BlockStructure> blocks;
    std::optional<PurePartReport> pure_part;
};

inline WsDecision decide_ws(const BuiltFamily& fam, std::size_t n_samples, std::uint64_t seed,
                            double tol = 1e-8, SearchConfig search_cfg = {}) {
    WsDecision d;
    d.expected = fam.expected_ws;

    std::optional<NormalizerData> nd;
    const bool needs_nd = !detail::has_closed_form_witness(fam) ||
                          fam.spec.kind == FamilyKind::dim7_theta;
    if (needs_nd) nd = normalizer_algebra(fam.pair);

    bool obstruction_flag = false;
    const bool dim7_kind = fam.spec.kind == FamilyKind::dim7_theta ||
                           (fam.spec.kind == FamilyKind::reduction && fam.spec.reduction_case == 3);
    if (dim7_kind) {
        if (!nd) nd = normalizer_algebra(fam.pair);
        d.dim7_report = dim7_obstruction(fam, *nd, seed);
        obstruction_flag = d.dim7_report->not_ws;
        d.obstruction_note = d.dim7_report->reason;
    } else if (fam.spec.kind == FamilyKind::dim3_rep) {
        d.rep_report = rep_block_invariance(fam, *nd);
        obstruction_flag = d.rep_report->invariant;
        d.obstruction_note = d.rep_report->reason;
    } else if (fam.spec.kind == FamilyKind::dim3_centralizer) {
        d.pure_part = pure_part_so3_check(fam.pair, *nd);
        d.blocks = block_structure(fam.pair, nd->dim_p());
        if (d.blocks->ws_necessary_violated) {
            obstruction_flag = true;
            d.obstruction_note =
                "discrete normalizer quotient with no sign-reversing block pattern: the witness "
                "equation fails on the first block group";
        }
    } else if (fam.spec.kind == FamilyKind::reduction && fam.spec.reduction_case == 4) {
        auto type = eigenvalue_type(fam.pair);
        bool admissible = false;
        for (const auto& t : clifford_admissible_types(7, 8))
            if (t == type.multiplicities) admissible = true;
        if (!admissible) {
            obstruction_flag = true;
            d.obstruction_note = "eigenvalue type " + type.str() +
                                 " is outside the admissible set for this Clifford case";
        }
        d.expected = admissible ? ExpectedWs::yes : ExpectedWs::no;
    }

    if (!obstruction_flag) {
        d.samples = ws_sample_verdict(fam, n_samples, seed, tol, nd ? &*nd : nullptr, search_cfg);
    } else {
        // the verdict is already decided; keep the probe light, it only
        // documents counterexample candidates
        SearchConfig light = search_cfg;
        light.restarts = std::min<std::size_t>(light.restarts, 3);
        light.max_gd_iters = std::min<std::size_t>(light.max_gd_iters, 60);
        light.max_gn_iters = std::min<std::size_t>(light.max_gn_iters, 15);
        d.samples = ws_sample_verdict(fam, dim7_kind ? std::min<std::size_t>(n_samples, 3) : 0,
                                      seed, tol, nd ? &*nd : nullptr, light);
    }

    if (d.samples.vacuous && !obstruction_flag) {
        d.computed = WsComputed::inconclusive;
        d.exit_code = 3;
        d.match = false;
        return d;
    }

    const bool witnessed = d.samples.all_witnessed();
    if (obstruction_flag) {
        d.computed = WsComputed::not_ws;
    } else if (witnessed) {
        d.computed = WsComputed::ws;
    } else if (fam.expected_ws == ExpectedWs::no || fam.expected_ws == ExpectedWs::unknown) {
        // search failures alone are evidence, not proof; report candidates
        d.computed = WsComputed::not_ws;
    } else {
        d.computed = WsComputed::inconclusive;
    }

    switch (d.expected) {
        case ExpectedWs::yes: d.match = d.computed == WsComputed::ws; break;
        case ExpectedWs::no: d.match = d.computed == WsComputed::not_ws; break;
        default: d.match = d.computed != WsComputed::inconclusive; break;
    }
    d.exit_code = d.computed == WsComputed::inconclusive ? 3 : (d.match ? 0 : 2);
    return d;
}

/// One row of the central-reduction catalog with computed-vs-expected fields.
struct CatalogRow {
    CatalogEntry entry;
    WsComputed computed_ws = WsComputed::inconclusive;
    bool computed_nonsingular = false;
    bool computed_clifford = false;
    std::optional<VecD> singular_witness;
    double min_det = 0;
    bool match = false;
    std::string family_name;
};

inline std::vector<CatalogRow> catalog_rows(double theta = M_PI / 4,
                                            const std::optional<MatQ>& entry4_gram = std::nullopt,
                                            std::uint64_t seed = 7, std::size_t samples = 8) {
    std::vector<CatalogRow> rows;
    for (auto& [fam, entry] : reduction_catalog(theta, entry4_gram)) {
        CatalogRow row;
        row.entry = entry;
        row.family_name = fam.name();
        auto ns = nonsingularity_sampled(fam.pair, seed);
        row.computed_nonsingular = ns.status != NonSingularity::singular_with_witness;
        row.min_det = ns.min_det_on_sphere;
        row.singular_witness = ns.witness;
        row.computed_clifford = is_clifford_type(fam.pair);
        auto decision = decide_ws(fam, samples, seed);
        row.computed_ws = decision.computed;

        ExpectedWs expected = entry.is_ws;
        if (entry.case_id == 4) expected = decision.expected;  // resolved by the gram
        bool ws_match = (expected == ExpectedWs::yes && row.computed_ws == WsComputed::ws) ||
                        (expected == ExpectedWs::no && row.computed_ws == WsComputed::not_ws);
        row.match = ws_match && row.computed_nonsingular == entry.is_nonsingular &&
                    row.computed_clifford == entry.clifford;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace nilws
