#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "nilws/metric_pair.hpp"
#include "nilws/octonion.hpp"
#include "nilws/quaternion.hpp"
#include "nilws/su2.hpp"

namespace nilws {

enum class FamilyKind {
    dim1,              // V = R J, J non-singular skew
    dim2,              // diag(L_{a_s}), diag(L_{b_s}) on H^p
    dim3_centralizer,  // diag(L_{a_s}), diag(L_{b_s}), diag(L_{c_s})
    dim3_scaled,       // diag(lambda_s L_i), diag(mu_s L_j), diag(mu_s L_k)
    dim3_rep,          // quaternionic blocks plus an su(2) representation part
    dim6_theta,        // span(J_1..J_5, J') on R^8
    dim7_theta,        // span(J_1..J_5, J_6, J') on R^8
    clifford,          // the classified Clifford-type cases (a)-(f)
    reduction,         // central reductions of the maximal Sp(2) pair, cases 1-5
};

inline const char* to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::dim1: return "dim1";
        case FamilyKind::dim2: return "dim2";
        case FamilyKind::dim3_centralizer: return "dim3_centralizer";
        case FamilyKind::dim3_scaled: return "dim3_scaled";
        case FamilyKind::dim3_rep: return "dim3_rep";
        case FamilyKind::dim6_theta: return "dim6_theta";
        case FamilyKind::dim7_theta: return "dim7_theta";
        case FamilyKind::clifford: return "clifford";
        default: return "reduction";
    }
}

enum class ExpectedWs { yes, no, conditional, unknown };

inline const char* to_string(ExpectedWs e) {
    switch (e) {
        case ExpectedWs::yes: return "yes";
        case ExpectedWs::no: return "no";
        case ExpectedWs::conditional: return "conditional";
        default: return "unknown";
    }
}

struct FamilySpec {
    FamilyKind kind = FamilyKind::dim1;

    // dim1: explicit skew matrix, or rotation speeds for the form diag(a_s W)
    std::optional<MatQ> j_matrix;
    VecQ alphas;

    // dim2 / dim3_centralizer
    std::vector<std::array<QuatQ, 2>> ab;
    std::vector<std::array<QuatQ, 3>> abc;

    // dim3_scaled
    VecQ lambdas, mus;

    // dim3_rep
    VecQ rep_lambdas;
    std::vector<int> irreps;

    // dim6 / dim7 / reduction entries 2-3
    double theta = M_PI / 4;

    // clifford
    char clifford_case = 'b';
    int clifford_dim_v = 2;  // for case (a)
    int blocks = 1;          // p for cases (a), (b)
    Rational type_scale{2};  // the repeated non-unit eigenvalue for (b), (d), (e)
    bool scaled_type = false;

    // reduction
    int reduction_case = 1;

    // optional gram override (rational entries; validated per family)
    std::optional<MatQ> gram;
};

struct BuiltFamily {
    FamilySpec spec;
    MetricPairD pair;
    std::optional<MetricPairQ> exact;  // present when every entry is rational
    std::vector<MatD> octonions;       // J_1..J_7 for the dim-8 families
    std::vector<std::string> warnings;
    ExpectedWs expected_ws = ExpectedWs::unknown;

    const std::string& name() const { return name_; }
    std::string name_;
};

namespace detail {

inline MatQ rotation_block(const Rational& a) {
    MatQ w(2, 2);
    w(0, 1) = -a;
    w(1, 0) = a;
    return w;
}

inline MetricPairQ block_l_pair(const std::vector<std::vector<QuatQ>>& per_element_blocks,
                                const MatQ& gram) {
    MetricPairQ p;
    const std::size_t m = per_element_blocks.size();
    const std::size_t blocks = per_element_blocks.front().size();
    p.dim_a = 4 * blocks;
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<MatQ> bl;
        for (const auto& q : per_element_blocks[k]) bl.push_back(left_mult_matrix(q));
        p.v_basis.push_back(block_diag(bl));
    }
    p.gram = gram;
    return p;
}

inline bool gram_is_scalar_multiple(const MatD& g, const MatD& g0, double tol = 1e-9) {
    double c = g(0, 0) / g0(0, 0);
    return max_abs(g - c * g0) <= tol && c > 0;
}

inline void require_spd(const MatD& g) {
    if (max_abs(g - g.transpose()) > 1e-12) throw std::invalid_argument("gram must be symmetric");
    auto eig = sym_eig(g);
    if (eig.values.front() <= 0) throw std::invalid_argument("gram must be positive definite");
}

} // namespace detail

/// Standard gram of the basis, returned exactly when the basis is rational.
template <typename T>
Matrix<T> default_gram_for(const std::vector<Matrix<T>>& v_basis, std::size_t dim_a) {
    MetricPair<T> tmp;
    tmp.dim_a = dim_a;
    tmp.v_basis = v_basis;
    tmp.gram = Matrix<T>::identity(v_basis.size());
    return standard_gram(tmp);
}

inline BuiltFamily build_dim1(const FamilySpec& spec) {
    BuiltFamily out;
    out.spec = spec;
    out.name_ = "dim1";
    out.expected_ws = ExpectedWs::yes;
    MatQ j;
    if (spec.j_matrix) {
        j = *spec.j_matrix;
        if (!is_skew(j)) throw std::invalid_argument("dim1: matrix must be skew-symmetric");
        if (j.rows() % 2 != 0 || determinant(j).is_zero())
            out.warnings.push_back("dim1 generator is singular; the pair is not non-singular");
    } else {
        if (spec.alphas.empty()) throw std::invalid_argument("dim1: need a matrix or rotation speeds");
        std::vector<MatQ> bl;
        for (const auto& a : spec.alphas) {
            if (a.is_zero()) out.warnings.push_back("dim1 rotation speed zero; singular generator");
            bl.push_back(detail::rotation_block(a));
        }
        j = block_diag(bl);
    }
    MetricPairQ p;
    p.dim_a = j.rows();
    p.v_basis = {j};
    p.gram = spec.gram ? *spec.gram : default_gram_for(p.v_basis, p.dim_a);
    validate_pair(p);
    out.exact = p;
    out.pair = to_double(p);
    return out;
}

inline BuiltFamily build_dim2(const FamilySpec& spec) {
    BuiltFamily out;
    out.spec = spec;
    out.name_ = "dim2";
    out.expected_ws = ExpectedWs::yes;
    if (spec.ab.empty()) throw std::invalid_argument("dim2: need at least one block (a_s, b_s)");
    std::vector<std::vector<QuatQ>> rows(2);
    for (const auto& [a, b] : spec.ab) {
        if (!a.w.is_zero() || !b.w.is_zero())
            throw std::invalid_argument("dim2: block quaternions must be imaginary");
        if (im_cross(a, b).norm_sq().is_zero())
            out.warnings.push_back("singular family degeneration: a_s parallel to b_s");
        rows[0].push_back(a);
        rows[1].push_back(b);
    }
    MatQ gram = spec.gram ? *spec.gram : MatQ();
    MetricPairQ p = detail::block_l_pair(rows, gram);
    if (!spec.gram) p.gram = default_gram_for(p.v_basis, p.dim_a);
    validate_pair(p);
    out.exact = p;
    out.pair = to_double(p);
    return out;
}

inline BuiltFamily build_dim3_centralizer(const FamilySpec& spec) {
    BuiltFamily out;
    out.spec = spec;
    out.name_ = "dim3_centralizer";
    out.expected_ws = ExpectedWs::unknown;
    if (spec.abc.empty()) throw std::invalid_argument("dim3_centralizer: need blocks (a_s, b_s, c_s)");
    std::vector<std::vector<QuatQ>> rows(3);
    for (const auto& [a, b, c] : spec.abc) {
        if (!a.w.is_zero() || !b.w.is_zero() || !c.w.is_zero())
            throw std::invalid_argument("dim3_centralizer: block quaternions must be imaginary");
        MatQ frame{{a.x, b.x, c.x}, {a.y, b.y, c.y}, {a.z, b.z, c.z}};
        if (determinant(frame).is_zero())
            out.warnings.push_back("block triple is not a basis of Im H; the pair degenerates");
        rows[0].push_back(a);
        rows[1].push_back(b);
        rows[2].push_back(c);
    }
    MetricPairQ p = detail::block_l_pair(rows, spec.gram ? *spec.gram : MatQ());
    if (!spec.gram) p.gram = default_gram_for(p.v_basis, p.dim_a);
    validate_pair(p);
    out.exact = p;
    out.pair = to_double(p);
    return out;
}

inline BuiltFamily build_dim3_scaled(const FamilySpec& spec) {
    BuiltFamily out;
    out.spec = spec;
    out.name_ = "dim3_scaled";
    out.expected_ws = ExpectedWs::yes;
    const std::size_t pblocks = spec.lambdas.size();
    if (pblocks == 0 || spec.mus.size() != pblocks)
        throw std::invalid_argument("dim3_scaled: lambda and mu lists must be non-empty and equal length");
    std::vector<std::vector<QuatQ>> rows(3);
    for (std::size_t s = 0; s < pblocks; ++s) {
        if (spec.lambdas[s].is_zero() || spec.mus[s].is_zero())
            out.warnings.push_back("zero scale; the pair is no longer non-singular");
        rows[0].push_back(spec.lambdas[s] * QuatQ::i());
        rows[1].push_back(spec.mus[s] * QuatQ::j());
        rows[2].push_back(spec.mus[s] * QuatQ::k());
    }
    MetricPairQ p = detail::block_l_pair(rows, spec.gram ? *spec.gram : MatQ());
    if (!spec.gram) p.gram = default_gram_for(p.v_basis, p.dim_a);
    // admissibility: J_1, J_2, J_3 mutually orthogonal and ||J_2|| = ||J_3||
    if (!(p.gram(0, 1).is_zero() && p.gram(0, 2).is_zero() && p.gram(1, 2).is_zero() &&
          p.gram(1, 1) == p.gram(2, 2)))
        throw std::invalid_argument("dim3_scaled: gram must be diag(a, b, b)");
    validate_pair(p);
    out.exact = p;
    out.pair = to_double(p);
    return out;
}

inline BuiltFamily build_dim3_rep(const FamilySpec& spec) {
    BuiltFamily out;
    out.spec = spec;
    out.name_ = "dim3_rep";
    out.expected_ws = ExpectedWs::no;
    if (spec.irreps.empty()) throw std::invalid_argument("dim3_rep: need at least one irrep");
    for (const auto& l : spec.rep_lambdas)
        if (l.is_zero()) out.warnings.push_back("zero scale; the pair is no longer non-singular");

    std::vector<MatD> li = {left_mult_matrix(QuatD::i()), left_mult_matrix(QuatD::j()),
                            left_mult_matrix(QuatD::k())};
    std::vector<std::vector<MatD>> parts(3);
    for (const auto& l : spec.rep_lambdas)
        for (int a = 0; a < 3; ++a) parts[a].push_back(l.to_double() * li[a]);
    for (int n : spec.irreps) {
        auto irrep = su2_irrep(n);
        for (int a = 0; a < 3; ++a) parts[a].push_back(irrep.skew[a]);
    }
    MetricPairD p;
    for (int a = 0; a < 3; ++a) p.v_basis.push_back(block_diag(parts[a]));
    p.dim_a = p.v_basis[0].rows();
    p.gram = spec.gram ? to_double(*spec.gram) : default_gram_for(p.v_basis, p.dim_a);
    MatD g0 = default_gram_for(p.v_basis, p.dim_a);
    if (!detail::gram_is_scalar_multiple(p.gram, g0))
        throw std::invalid_argument("dim3_rep: the inner product must be standard");
    validate_pair(p);
    out.pair = p;
    return out;
}

inline MatD j_prime(const std::vector<MatD>& js, double theta) {
    return std::cos(theta) * js[6] + std::sin(theta) * (js[5] * js[6]);
}

namespace detail {

inline void check_theta(double theta, std::vector<std::string>& warnings) {
    if (theta < 0 || theta > M_PI / 2) throw std::invalid_argument("theta must lie in [0, pi/2]");
    if (theta == 0.0) warnings.push_back("theta = 0: Clifford boundary case");
    if (theta == M_PI / 2) warnings.push_back("theta = pi/2: boundary case, no longer non-singular");
}

/// gram layout for the dim-8 families: restriction to span(J_1..J_5) a
/// positive multiple of the identity and the tail orthogonal to it.
inline void check_span5_standard(const MatD& g, std::size_t m) {
    double c = g(0, 0);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            if (std::abs(g(i, j) - (i == j ? c : 0.0)) > 1e-9)
                throw std::invalid_argument("gram restriction to span(J_1..J_5) must be standard");
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 5; j < m; ++j)
            if (std::abs(g(i, j)) > 1e-9)
                throw std::invalid_argument("tail directions must be orthogonal to J_1..J_5");
}

} // namespace detail

inline BuiltFamily build_dim6(const FamilySpec& spec) {
    BuiltFamily out;
    out.spec = spec;
    out.name_ = "dim6_theta";
    out.expected_ws = ExpectedWs::yes;
    detail::check_theta(spec.theta, out.warnings);
    out.octonions = octonion_complex_structures_d();
    MetricPairD p;
    p.dim_a = 8;
    for (int i = 0; i < 5; ++i) p.v_basis.push_back(out.octonions[i]);
    p.v_basis.push_back(j_prime(out.octonions, spec.theta));
    p.gram = spec.gram ? to_double(*spec.gram) : MatD::identity(6);
    detail::check_span5_standard(p.gram, 6);
    detail::require_spd(p.gram);
    validate_pair(p);
    out.pair = p;
    return out;
}

inline BuiltFamily build_dim7(const FamilySpec& spec) {
    BuiltFamily out;
    out.spec = spec;
    out.name_ = "dim7_theta";
    out.expected_ws = ExpectedWs::no;
    detail::check_theta(spec.theta, out.warnings);
    out.octonions = octonion_complex_structures_d();
    MetricPairD p;
    p.dim_a = 8;
    for (int i = 0; i < 5; ++i) p.v_basis.push_back(out.octonions[i]);
    p.v_basis.push_back(out.octonions[5]);
    p.v_basis.push_back(j_prime(out.octonions, spec.theta));
    p.gram = spec.gram ? to_double(*spec.gram) : MatD::identity(7);
    detail::check_span5_standard(p.gram, 7);
    detail::require_spd(p.gram);
    validate_pair(p);
    out.pair = p;
    return out;
}

/// Admissible eigenvalue-type patterns for the Clifford-type cases (by
/// dim V, dim a); multiplicities in canonical descending order.
inline std::vector<std::vector<std::size_t>> clifford_admissible_types(std::size_t dim_v,
                                                                       std::size_t dim_a) {
    if (dim_v == 1) return {{1}};
    if (dim_v == 2) return {{2}, {1, 1}};
    if (dim_v == 3) return {{3}, {2, 1}};
    if (dim_v == 5 && dim_a == 8) return {{5}};
    if (dim_v == 6 && dim_a == 8) return {{6}, {5, 1}};
    if (dim_v == 7 && dim_a == 8) return {{7}, {5, 2}};
    if (dim_v == 7 && dim_a == 16) return {{7}};
    return {};
}

inline BuiltFamily clifford_pair(const FamilySpec& spec) {
    BuiltFamily out;
    out.spec = spec;
    out.name_ = std::string("clifford_") + spec.clifford_case;
    out.expected_ws = ExpectedWs::yes;
    const char c = spec.clifford_case;
    MetricPairQ p;
    auto js = octonion_complex_structures<Rational>();
    const Rational s = spec.type_scale;
    if (spec.scaled_type && (s == Rational(1) || s <= Rational(0)))
        throw std::invalid_argument("clifford: the repeated scale must be positive and != 1");

    if (c == 'a') {
        if (spec.clifford_dim_v != 1 && spec.clifford_dim_v != 2)
            throw std::invalid_argument("clifford (a): dim V must be 1 or 2");
        std::vector<std::vector<QuatQ>> rows;
        rows.emplace_back(spec.blocks, QuatQ::i());
        if (spec.clifford_dim_v == 2) rows.emplace_back(spec.blocks, QuatQ::j());
        p = detail::block_l_pair(rows, spec.gram ? *spec.gram : MatQ());
        if (!spec.gram) p.gram = default_gram_for(p.v_basis, p.dim_a);
    } else if (c == 'b') {
        std::vector<std::vector<QuatQ>> rows = {
            std::vector<QuatQ>(spec.blocks, QuatQ::i()),
            std::vector<QuatQ>(spec.blocks, QuatQ::j()),
            std::vector<QuatQ>(spec.blocks, QuatQ::k())};
        p = detail::block_l_pair(rows, MatQ());
        p.gram = MatQ::identity(3);
        if (spec.scaled_type) p.gram(0, 0) = s;  // eigenvalue type (2,1)
        if (spec.gram) p.gram = *spec.gram;
    } else if (c == 'c') {
        p.dim_a = 8;
        for (int i = 0; i < 5; ++i) p.v_basis.push_back(js[i]);
        p.gram = MatQ::identity(5);
        if (spec.gram) {
            if (!detail::gram_is_scalar_multiple(to_double(*spec.gram), MatD::identity(5)))
                throw std::invalid_argument("clifford (c): the inner product must be standard");
            p.gram = *spec.gram;
        }
    } else if (c == 'd' || c == 'e') {
        p.dim_a = 8;
        const int nv = (c == 'd') ? 6 : 7;
        for (int i = 0; i < nv; ++i) p.v_basis.push_back(js[i]);
        p.gram = MatQ::identity(nv);
        if (spec.scaled_type) {
            p.gram(5, 5) = s;                      // type (5,1) for (d)
            if (c == 'e') p.gram(6, 6) = s;        // type (5,2) for (e)
        }
        if (spec.gram) p.gram = *spec.gram;
    } else if (c == 'f') {
        p.dim_a = 16;
        for (int i = 0; i < 7; ++i) {
            MatQ k(16, 16);
            k.set_block(0, 0, js[i]);
            k.set_block(8, 8, js[i]);
            p.v_basis.push_back(std::move(k));
        }
        p.gram = MatQ::identity(7);
        if (spec.gram) {
            if (!detail::gram_is_scalar_multiple(to_double(*spec.gram), MatD::identity(7)))
                throw std::invalid_argument("clifford (f): the inner product must be standard");
            p.gram = *spec.gram;
        }
    } else {
        throw std::invalid_argument("clifford: case must be one of a..f");
    }
    validate_pair(p);
    out.exact = p;
    out.pair = to_double(p);
    out.octonions = octonion_complex_structures_d();

    auto type = eigenvalue_type(out.pair);
    bool ok = false;
    for (const auto& t : clifford_admissible_types(out.pair.dim_v(), out.pair.dim_a))
        if (t == type.multiplicities) ok = true;
    if (!ok)
        throw std::invalid_argument("clifford: eigenvalue type " + type.str() +
                                    " is not admissible for this case");
    return out;
}

/// New pair on the gram-orthogonal complement of a coefficient subspace of V,
/// with the gram restricted; realizes passing to a central quotient.
template <typename T>
MetricPair<T> central_reduction(const MetricPair<T>& p, const std::vector<std::vector<T>>& subspace) {
    for (const auto& z : subspace)
        if (z.size() != p.dim_v()) throw std::invalid_argument("central_reduction: subspace not inside V");
    MetricPair<T> out;
    out.dim_a = p.dim_a;
    if (subspace.empty()) return p;
    Matrix<T> cons(subspace.size(), p.dim_v());
    for (std::size_t r = 0; r < subspace.size(); ++r) {
        auto gz = p.gram.apply(subspace[r]);
        for (std::size_t j = 0; j < p.dim_v(); ++j) cons(r, j) = gz[j];
    }
    auto comp = kernel_basis(cons);
    Matrix<T> w(p.dim_v(), comp.size());
    for (std::size_t j = 0; j < comp.size(); ++j)
        for (std::size_t i = 0; i < p.dim_v(); ++i) w(i, j) = comp[j][i];
    for (std::size_t j = 0; j < comp.size(); ++j) out.v_basis.push_back(j_of(p, comp[j]));
    out.gram = w.transpose() * p.gram * w;
    return out;
}

/// The maximal pair on R^8 whose center carries the 5-dimensional Sp(2)
/// module together with the full trivial module span(J_6, J_7, J_6 J_7).
inline MetricPairQ sp2_maximal_pair() {
    auto js = octonion_complex_structures<Rational>();
    MetricPairQ p;
    p.dim_a = 8;
    for (int i = 0; i < 7; ++i) p.v_basis.push_back(js[i]);
    p.v_basis.push_back(js[5] * js[6]);
    p.gram = MatQ::identity(8);
    return p;
}

struct CatalogEntry {
    int case_id = 0;
    std::string description;
    ExpectedWs is_ws = ExpectedWs::yes;
    bool is_nonsingular = true;
    bool clifford = true;
};

inline BuiltFamily build_reduction(const FamilySpec& spec);

/// The five central-reduction cases of the maximal pair, with their expected
/// verdicts.
inline std::vector<std::pair<BuiltFamily, CatalogEntry>> reduction_catalog(
    double theta = M_PI / 4, const std::optional<MatQ>& entry4_gram = std::nullopt) {
    std::vector<std::pair<BuiltFamily, CatalogEntry>> out;
    for (int c = 1; c <= 5; ++c) {
        FamilySpec spec;
        spec.kind = FamilyKind::reduction;
        spec.reduction_case = c;
        spec.theta = theta;
        if (c == 4 && entry4_gram) spec.gram = entry4_gram;
        BuiltFamily fam = build_reduction(spec);
        CatalogEntry entry;
        entry.case_id = c;
        switch (c) {
            case 1:
                entry.description = "V' = 0";
                entry.is_ws = ExpectedWs::yes;
                entry.is_nonsingular = true;
                entry.clifford = true;
                break;
            case 2:
                entry.description = "V' = R J'";
                entry.is_ws = ExpectedWs::yes;
                entry.is_nonsingular = true;
                entry.clifford = false;
                break;
            case 3:
                entry.description = "V' = span(J6, J')";
                entry.is_ws = ExpectedWs::no;
                entry.is_nonsingular = true;
                entry.clifford = false;
                break;
            case 4:
                entry.description = "V' = span(J6, J7)";
                entry.is_ws = ExpectedWs::conditional;  // iff the V' restriction is standard
                entry.is_nonsingular = true;
                entry.clifford = true;
                break;
            default:
                entry.description = "V' = span(J6, J6 J7)";
                entry.is_ws = ExpectedWs::yes;
                entry.is_nonsingular = false;
                entry.clifford = false;
                break;
        }
        out.emplace_back(std::move(fam), std::move(entry));
    }
    return out;
}

inline BuiltFamily build_reduction(const FamilySpec& spec) {
    BuiltFamily out;
    out.spec = spec;
    out.name_ = "reduction_" + std::to_string(spec.reduction_case);
    out.octonions = octonion_complex_structures_d();
    auto js = octonion_complex_structures<Rational>();
    const int c = spec.reduction_case;
    if (c < 1 || c > 5) throw std::invalid_argument("reduction: case must be 1..5");

    if (c == 2) {
        FamilySpec s6 = spec;
        s6.kind = FamilyKind::dim6_theta;
        s6.gram = spec.gram;
        out = build_dim6(s6);
        out.spec = spec;
        out.name_ = "reduction_2";
        out.expected_ws = ExpectedWs::yes;
        return out;
    }
    if (c == 3) {
        FamilySpec s7 = spec;
        s7.kind = FamilyKind::dim7_theta;
        s7.gram = spec.gram;
        out = build_dim7(s7);
        out.spec = spec;
        out.name_ = "reduction_3";
        out.expected_ws = ExpectedWs::no;
        return out;
    }

    MetricPairQ p;
    p.dim_a = 8;
    for (int i = 0; i < 5; ++i) p.v_basis.push_back(js[i]);
    if (c == 4) {
        p.v_basis.push_back(js[5]);
        p.v_basis.push_back(js[6]);
        out.expected_ws = ExpectedWs::conditional;
    } else if (c == 5) {
        p.v_basis.push_back(js[5]);
        p.v_basis.push_back(js[5] * js[6]);
        out.expected_ws = ExpectedWs::yes;
    } else {
        out.expected_ws = ExpectedWs::yes;
    }
    p.gram = spec.gram ? *spec.gram : MatQ::identity(p.v_basis.size());
    detail::check_span5_standard(to_double(p.gram), p.v_basis.size());
    detail::require_spd(to_double(p.gram));
    validate_pair(p);
    out.exact = p;
    out.pair = to_double(p);
    return out;
}

inline BuiltFamily build_family(const FamilySpec& spec) {
    switch (spec.kind) {
        case FamilyKind::dim1: return build_dim1(spec);
        case FamilyKind::dim2: return build_dim2(spec);
        case FamilyKind::dim3_centralizer: return build_dim3_centralizer(spec);
        case FamilyKind::dim3_scaled: return build_dim3_scaled(spec);
        case FamilyKind::dim3_rep: return build_dim3_rep(spec);
        case FamilyKind::dim6_theta: return build_dim6(spec);
        case FamilyKind::dim7_theta: return build_dim7(spec);
        case FamilyKind::clifford: return clifford_pair(spec);
        case FamilyKind::reduction: return build_reduction(spec);
    }
    throw std::invalid_argument("build_family: unknown kind");
}

/// Clifford-type test: all anticommutators of basis elements are scalar
/// matrices, i.e. J_a J_b + J_b J_a = c_ab I. Basis independent.
inline bool is_clifford_type(const MetricPairD& p, double tol = 1e-9) {
    const std::size_t n = p.dim_a;
    for (std::size_t a = 0; a < p.dim_v(); ++a)
        for (std::size_t b = a; b < p.dim_v(); ++b) {
            MatD anti = p.v_basis[a] * p.v_basis[b] + p.v_basis[b] * p.v_basis[a];
            double scalar = anti.trace() / static_cast<double>(n);
            if (max_abs(anti - scalar * MatD::identity(n)) > tol) return false;
            if (a == b && scalar >= 0) return false;  // J_a^2 must be a negative scalar
        }
    return true;
}

} // namespace nilws
