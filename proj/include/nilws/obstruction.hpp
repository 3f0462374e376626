#pragma once

#include <string>
#include <vector>

#include "nilws/search.hpp"
#include "nilws/spectrum.hpp"

namespace nilws {

/// N . A = N^t A N, the conjugation action used throughout the dim-7
/// obstruction chain.
inline MatD conj_action(const MatD& n, const MatD& a) { return n.transpose() * a * n; }

/// Standard inner product of 8x8 structures: <A,B> = -Tr(AB)/8.
inline double std_ip8(const MatD& a, const MatD& b) { return -(a * b).trace() / 8.0; }

/// The conjugation-invariant quartic on the theta families. The trace form is
/// normalized by dim a = 8, matching the norm convention ||J||^2 = -Tr(J^2)/8;
/// with that normalization it equals 4 sin^2(theta) <J,J'>^2 sum_i <J,J_i>^2.
struct PhiValues {
    double trace_value = 0;
    double analytic_value = 0;
    double gap() const { return std::abs(trace_value - analytic_value); }
};

inline PhiValues phi_invariant(const BuiltFamily& fam, const VecD& z) {
    const bool dim6 = fam.pair.dim_v() == 6;
    const bool dim7 = fam.pair.dim_v() == 7;
    if (!dim6 && !dim7) throw std::invalid_argument("phi_invariant: theta family required");
    const auto& js = fam.octonions;
    MatD j = j_of(fam.pair, z);
    MatD jp = j_prime(js, fam.spec.theta);
    double n2 = -(j * j).trace() / 8.0;
    MatD inner = j * j + n2 * MatD::identity(8);
    PhiValues out;
    out.trace_value = (inner * inner).trace() / 8.0;
    double sum5 = 0;
    for (int i = 0; i < 5; ++i) {
        double c = std_ip8(j, js[i]);
        sum5 += c * c;
    }
    double cp = std_ip8(j, jp);
    double st = std::sin(fam.spec.theta);
    out.analytic_value = 4.0 * st * st * cp * cp * sum5;
    return out;
}

/// Both sides of the conjugation-invariance identity
/// <J,J'>^2 sum <J,J_i>^2 = <J, N.J'>^2 sum <J, N.J_i>^2 for N in the
/// normalizer; returns the absolute gap.
inline double phi_conjugation_gap(const BuiltFamily& fam, const VecD& z, const MatD& n) {
    const auto& js = fam.octonions;
    MatD j = j_of(fam.pair, z);
    MatD jp = j_prime(js, fam.spec.theta);
    double lhs_cp = std_ip8(j, jp), lhs_sum = 0;
    double rhs_cp = std_ip8(j, conj_action(n, jp)), rhs_sum = 0;
    for (int i = 0; i < 5; ++i) {
        double l = std_ip8(j, js[i]);
        double r = std_ip8(j, conj_action(n, js[i]));
        lhs_sum += l * l;
        rhs_sum += r * r;
    }
    return std::abs(lhs_cp * lhs_cp * lhs_sum - rhs_cp * rhs_cp * rhs_sum);
}

/// Spectral split of J^2 for J = J_u + a J_6 + b J' on the dim-7 family:
/// two eigenvalues -||J||^2 +/- 2 sin(theta) b ||u||, each of multiplicity 4,
/// driven by the symmetric involution-like operator A = J_u J_6 J_7.
struct SpectrumSplit {
    SymmetricSpectrum spectrum;       // computed spectrum of J^2
    double expected_low = 0, expected_high = 0;
    double a_symmetry_defect = 0;     // ||A - A^t||
    double a_trace = 0;               // Tr A
    double a_square_residual = 0;     // ||A^2 - ||u||^2 I||
};

inline SpectrumSplit spectrum_split(const BuiltFamily& fam, const VecD& u, double a, double b) {
    if (fam.pair.dim_v() != 7) throw std::invalid_argument("spectrum_split: dim-7 family required");
    const auto& js = fam.octonions;
    MatD ju(8, 8);
    for (int i = 0; i < 5; ++i) ju = ju + u[i] * js[i];
    MatD j = ju + a * js[5] + b * j_prime(js, fam.spec.theta);
    MatD amat = ju * js[5] * js[6];
    double unorm = norm2(u);
    SpectrumSplit out;
    out.a_symmetry_defect = max_abs(amat - amat.transpose());
    out.a_trace = amat.trace();
    out.a_square_residual = max_abs(amat * amat - (unorm * unorm) * MatD::identity(8));
    out.spectrum = symmetric_spectrum(j * j);
    double jn2 = -(j * j).trace() / 8.0;
    double shift = 2.0 * std::sin(fam.spec.theta) * b * unorm;
    out.expected_low = -jn2 - std::abs(shift);
    out.expected_high = -jn2 + std::abs(shift);
    return out;
}

/// Exact version of the A = J_u J_6 J_7 identities for rational u.
inline bool spectrum_split_exact_ok(const VecQ& u) {
    auto js = octonion_complex_structures<Rational>();
    MatQ ju(8, 8);
    for (int i = 0; i < 5; ++i) ju = ju + u[i] * js[i];
    MatQ amat = ju * js[5] * js[6];
    if (!(amat == amat.transpose())) return false;
    if (!amat.trace().is_zero()) return false;
    Rational u2(0);
    for (const auto& c : u) u2 += c * c;
    return amat * amat == u2 * MatQ::identity(8);
}

struct EpsilonRecord {
    double eps6 = 0, eps7 = 0, eps_prime = 0;
    double residual = 0;  // worst deviation of N.J from +/- J on the three lines
};

struct SearchFailure {
    VecD z, x;
    double best_penalty = 0;
    std::size_t restarts = 0;
};

struct SpectrumCheck {
    VecD eigenvalues;
    std::vector<std::size_t> multiplicities;
    double expected_low = 0, expected_high = 0;
};

struct ObstructionReport {
    std::vector<std::pair<double, double>> algebra_checks;  // (||[D,J6]||, ||[D,J']||) per D
    double max_commutator = 0;
    std::vector<PhiValues> phi_values;                      // sampled invariant values
    std::vector<SpectrumCheck> spectrum_checks;             // sampled J^2 spectra
    double max_phi_gap = 0;
    double max_eq_gap = 0;       // conjugation-invariance identity residual
    std::vector<EpsilonRecord> epsilons;
    bool eps_pattern_ok = true;  // eps' = eps7 = eps6 eps7, hence eps6 = +1
    std::vector<SearchFailure> search_failures;
    double min_best_penalty = std::numeric_limits<double>::infinity();
    bool not_ws = false;
    std::string reason;
};

namespace detail {

inline EpsilonRecord epsilon_signs(const BuiltFamily& fam, const MatD& n) {
    const auto& js = fam.octonions;
    MatD jp = j_prime(js, fam.spec.theta);
    EpsilonRecord rec;
    auto sign_of = [&](const MatD& line, const MatD& image) {
        double s = trace_dot(line, image) / trace_dot(line, line);
        double eps = (s >= 0) ? 1.0 : -1.0;
        rec.residual = std::max(rec.residual, frobenius(image - eps * line) / frobenius(line));
        return eps;
    };
    rec.eps6 = sign_of(js[5], conj_action(n, js[5]));
    rec.eps7 = sign_of(js[6], conj_action(n, js[6]));
    rec.eps_prime = sign_of(jp, conj_action(n, jp));
    return rec;
}

} // namespace detail

/// Full dim-7 obstruction battery: the normalizer algebra commutes with both
/// J_6 and J', the quartic invariant is conserved, every tested discrete
/// member fixes J_6 (eps6 = +1), and the witness search for (J_6, X) stalls.
inline ObstructionReport dim7_obstruction(const BuiltFamily& fam, const NormalizerData& nd,
                                          std::uint64_t seed = 0, std::size_t phi_samples = 200,
                                          std::size_t x_samples = 3, std::size_t restarts = 5,
                                          double commutator_tol = 1e-10) {
    if (fam.pair.dim_v() != 7) throw std::invalid_argument("dim7_obstruction: dim-7 family required");
    const auto& js = fam.octonions;
    MatD jp = j_prime(js, fam.spec.theta);
    ObstructionReport rep;

    for (const auto& d : nd.n_basis) {
        double c6 = frobenius(commutator(d, js[5]));
        double cp = frobenius(commutator(d, jp));
        rep.algebra_checks.emplace_back(c6, cp);
        rep.max_commutator = std::max({rep.max_commutator, c6, cp});
    }

    Rng rng(seed, 41);
    for (std::size_t s = 0; s < phi_samples; ++s) {
        VecD z = rng.unit_vector(7);
        auto phi = phi_invariant(fam, z);
        rep.max_phi_gap = std::max(rep.max_phi_gap, phi.gap());
        if (rep.phi_values.size() < 20) rep.phi_values.push_back(phi);
        VecD c = rng.normal_vector(nd.n_basis.size());
        MatD d(8, 8);
        for (std::size_t i = 0; i < c.size(); ++i) d = d + (0.5 * c[i]) * nd.n_basis[i];
        MatD n = matrix_exp(d);
        rep.max_eq_gap = std::max(rep.max_eq_gap, phi_conjugation_gap(fam, z, n));
    }

    for (int t = 0; t < 8; ++t) {
        VecD u = rng.normal_vector(5);
        auto split = spectrum_split(fam, u, rng.normal(), rng.normal());
        SpectrumCheck check;
        check.eigenvalues = split.spectrum.eigenvalues;
        check.multiplicities = split.spectrum.multiplicities;
        check.expected_low = split.expected_low;
        check.expected_high = split.expected_high;
        rep.spectrum_checks.push_back(std::move(check));
    }

    // discrete members: J_6 itself and normalizer exponentials composed with it
    std::vector<MatD> members = {js[5]};
    for (int t = 0; t < 4; ++t) {
        VecD c = rng.normal_vector(nd.n_basis.size());
        MatD d(8, 8);
        for (std::size_t i = 0; i < c.size(); ++i) d = d + (0.4 * c[i]) * nd.n_basis[i];
        MatD e = matrix_exp(d);
        members.push_back(e);
        members.push_back(js[5] * e);
    }
    for (const auto& n : members) {
        auto rec = detail::epsilon_signs(fam, n);
        if (rec.residual > 1e-8 || rec.eps_prime != rec.eps7 ||
            rec.eps_prime != rec.eps6 * rec.eps7 || rec.eps6 != 1.0)
            rep.eps_pattern_ok = false;
        rep.epsilons.push_back(rec);
    }

    // witness search for J = J_6 must stall: record the evidence
    VecD z6(7, 0.0);
    z6[5] = 1.0;
    SearchConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = seed;
    for (std::size_t xs = 0; xs < x_samples; ++xs) {
        VecD x = rng.unit_vector(8);
        auto outcome = generic_witness_search(fam.pair, nd, js[5], x,
                                              {MatD::identity(8), js[5]}, cfg);
        SearchFailure fail;
        fail.z = z6;
        fail.x = x;
        fail.best_penalty = outcome.penalty;
        fail.restarts = outcome.restarts_used;
        rep.min_best_penalty = std::min(rep.min_best_penalty, outcome.penalty);
        rep.search_failures.push_back(std::move(fail));
    }

    rep.not_ws = rep.max_commutator <= commutator_tol && rep.eps_pattern_ok;
    rep.reason = rep.not_ws
                     ? "necessary conditions violated => not weakly symmetric: every normalizer "
                       "element fixes the line R J_6, so no N with N.J_6 = -J_6 exists"
                     : "obstruction checks inconclusive";
    return rep;
}

/// Decomposition Q = L_w R_{w'} of a nonzero intertwiner between the left
/// module structures twisted by an algebra map psi of H: recovers w from the
/// conjugation psi(u) = w^{-1} u w and w' from L_w^{-1} Q.
template <typename T>
struct Intertwiner {
    Quaternion<T> w, w_prime;
    double roundtrip_residual = 0;
};

template <typename T>
Intertwiner<T> intertwiner_decompose(const Matrix<T>& q, const Matrix<T>& psi,
                                     double relation_tol = 1e-8) {
    bool zero = true;
    for (const auto& v : q.data())
        if constexpr (std::is_same_v<T, double>) { if (std::abs(v) > 1e-14) { zero = false; break; } }
        else { if (!v.is_zero()) { zero = false; break; } }
    if (zero) throw std::invalid_argument("intertwiner_decompose: Q = 0");

    const std::vector<Quaternion<T>> units = {Quaternion<T>::i(), Quaternion<T>::j(),
                                              Quaternion<T>::k()};
    // relation check L_u Q = Q L_{psi(u)} on the imaginary units
    double defect = 0;
    std::vector<Matrix<T>> lhs_blocks;
    for (const auto& u : units) {
        std::vector<T> pu = psi.apply(u.coords());
        Matrix<T> rel = left_mult_matrix(u) * q - q * left_mult_matrix(Quaternion<T>::from_coords(pu));
        if constexpr (std::is_same_v<T, double>) defect = std::max(defect, max_abs(rel));
        else {
            for (const auto& v : rel.data())
                if (!v.is_zero()) defect = 1.0;
        }
        // u w - w psi(u) = 0  <=>  (L_u - R_{psi(u)}) w = 0
        lhs_blocks.push_back(left_mult_matrix(u) -
                             right_mult_matrix(Quaternion<T>::from_coords(pu)));
    }
    if (defect > relation_tol)
        throw std::invalid_argument("intertwiner_decompose: Q is not an intertwiner for psi");

    Matrix<T> stacked(12, 4);
    for (std::size_t b = 0; b < 3; ++b) stacked.set_block(4 * b, 0, lhs_blocks[b]);
    auto kernel = kernel_basis(stacked);
    if (kernel.empty()) throw std::invalid_argument("intertwiner_decompose: conjugation has no solution");
    std::vector<T> wv = kernel.front();

    Intertwiner<T> out;
    if constexpr (std::is_same_v<T, double>) {
        double n = std::sqrt(dot(wv, wv));
        for (auto& v : wv) v /= n;
        for (const auto& v : wv) {
            if (std::abs(v) > 1e-12) {
                if (v < 0)
                    for (auto& vv : wv) vv = -vv;
                break;
            }
        }
    } else {
        // scale so the first nonzero coefficient is +1; conjugation is
        // scale-invariant and the product L_w R_{w'} absorbs the factor
        T pivot(0);
        for (const auto& v : wv)
            if (!v.is_zero()) { pivot = v; break; }
        for (auto& v : wv) v /= pivot;
    }
    out.w = Quaternion<T>::from_coords(wv);
    Matrix<T> rw = left_mult_matrix(out.w.inv()) * q;
    out.w_prime = Quaternion<T>{rw(0, 0), rw(1, 0), rw(2, 0), rw(3, 0)};
    Matrix<T> recon = left_mult_matrix(out.w) * right_mult_matrix(out.w_prime);
    if constexpr (std::is_same_v<T, double>) out.roundtrip_residual = max_abs(recon - q);
    else out.roundtrip_residual = (recon == q) ? 0.0 : 1.0;
    return out;
}

/// Determinant table and three-way block partition for centralizer-type
/// pairs with a three-dimensional center. Blocks land in g1/g2/g3 by the
/// sign pattern of det(A_1 A_r^{-1}); when g2 is empty and the pure part is
/// trivial, the witness equation fails on g1 and the pair cannot be WS.
struct BlockStructure {
    std::vector<MatD> a_maps;
    MatD dets;  // dets(s, r) = det(A_s A_r^{-1})
    std::vector<std::size_t> g1, g2, g3;
    bool ws_necessary_violated = false;
};

inline BlockStructure block_structure(const MetricPairD& pair, std::size_t pure_dim,
                                      double tol = 1e-9) {
    auto a_maps = induced_center_maps(pair);
    if (pair.dim_v() != 3)
        throw std::invalid_argument("block_structure: three-dimensional center required");
    BlockStructure out;
    out.a_maps = a_maps;
    const std::size_t p = a_maps.size();
    out.dets = MatD(p, p);
    std::vector<double> det_a(p);
    for (std::size_t s = 0; s < p; ++s) {
        det_a[s] = determinant(a_maps[s]);
        if (std::abs(det_a[s]) < tol)
            throw std::domain_error("block_structure: singular block map A_s");
    }
    for (std::size_t s = 0; s < p; ++s)
        for (std::size_t r = 0; r < p; ++r) out.dets(s, r) = det_a[s] / det_a[r];
    for (std::size_t r = 0; r < p; ++r) {
        double d = out.dets(0, r);
        if (std::abs(d - 1.0) <= tol) out.g1.push_back(r);
        else if (std::abs(d + 1.0) <= tol) out.g2.push_back(r);
        else out.g3.push_back(r);
    }
    out.ws_necessary_violated = out.g2.empty() && pure_dim == 0;
    return out;
}

/// For the representation-type three-dimensional families every normalizer
/// element must be block-diagonal with respect to H^p + W; the projected
/// W-pair then fails to be weakly symmetric, which flags the family.
struct RepInvarianceReport {
    double max_offdiag = 0;
    bool invariant = true;
    bool not_ws = true;
    std::string reason = "the invariant representation block projects to an su(2) module pair "
                         "that admits no witnesses";
};

inline RepInvarianceReport rep_block_invariance(const BuiltFamily& fam, const NormalizerData& nd,
                                                double tol = 1e-10) {
    if (fam.spec.kind != FamilyKind::dim3_rep)
        throw std::invalid_argument("rep_block_invariance: representation-type family required");
    const std::size_t split = 4 * fam.spec.rep_lambdas.size();
    const std::size_t n = fam.pair.dim_a;
    RepInvarianceReport rep;
    for (const auto& d : nd.n_basis) {
        double off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if ((i < split) != (j < split)) off = std::max(off, std::abs(d(i, j)));
        rep.max_offdiag = std::max(rep.max_offdiag, off);
    }
    rep.invariant = rep.max_offdiag <= tol;
    return rep;
}

} // namespace nilws
