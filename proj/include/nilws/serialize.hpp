#pragma once

#include <json.hpp>

#include "nilws/families.hpp"
#include "nilws/metric_pair.hpp"
#include "nilws/obstruction.hpp"
#include "nilws/verdict.hpp"
#include "nilws/version.hpp"

namespace nilws {

using json = nlohmann::ordered_json;

// ---- scalars ---------------------------------------------------------------

inline json rational_to_json(const Rational& r) {
    if (r.den() == 1) return json(r.num());
    return json(r.str());
}

inline Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw std::invalid_argument("exact entries must be integers or \"p/q\" strings");
}

inline double theta_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s.rfind("pi/", 0) == 0) return M_PI / std::stod(s.substr(3));
        if (s == "pi") return M_PI;
        return std::stod(s);
    }
    throw std::invalid_argument("theta must be a number or \"pi/k\"");
}

// ---- matrices --------------------------------------------------------------

inline json matrix_to_json(const MatD& m) {
    json flat = json::array();
    for (double v : m.data()) flat.push_back(v);
    return flat;
}

inline json matrix_to_json(const MatQ& m) {
    json flat = json::array();
    for (const auto& v : m.data()) flat.push_back(rational_to_json(v));
    return flat;
}

inline json vec_to_json(const VecD& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

template <typename T>
Matrix<T> matrix_from_rows(const json& rows) {
    std::size_t r = rows.size(), c = rows.empty() ? 0 : rows.front().size();
    Matrix<T> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            if constexpr (std::is_same_v<T, double>) m(i, j) = rows[i][j].get<double>();
            else m(i, j) = rational_from_json(rows[i][j]);
        }
    return m;
}

template <typename T>
Matrix<T> matrix_from_flat(const json& flat, std::size_t rows, std::size_t cols) {
    Matrix<T> m(rows, cols);
    if (flat.size() != rows * cols) throw std::invalid_argument("matrix entry count mismatch");
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const json& e = flat[i * cols + j];
            if constexpr (std::is_same_v<T, double>) {
                m(i, j) = e.is_string() ? rational_from_json(e).to_double() : e.get<double>();
            } else {
                m(i, j) = rational_from_json(e);
            }
        }
    return m;
}

// ---- metric pairs ----------------------------------------------------------

template <typename T>
json pair_to_json(const MetricPair<T>& p) {
    json j;
    j["dim_a"] = p.dim_a;
    j["v_basis"] = json::array();
    for (const auto& v : p.v_basis) j["v_basis"].push_back(matrix_to_json(v));
    j["gram"] = matrix_to_json(p.gram);
    return j;
}

struct LoadedPair {
    MetricPairD pair;
    std::optional<MetricPairQ> exact;
};

inline LoadedPair pair_from_json(const json& j) {
    LoadedPair out;
    std::size_t n = j.at("dim_a").get<std::size_t>();
    const json& vb = j.at("v_basis");
    std::size_t m = vb.size();
    bool exact = true;
    for (const auto& mat : vb)
        for (const auto& e : mat)
            if (e.is_number_float()) exact = false;
    for (const auto& e : j.at("gram"))
        if (e.is_number_float()) exact = false;
    out.pair.dim_a = n;
    for (const auto& mat : vb) out.pair.v_basis.push_back(matrix_from_flat<double>(mat, n, n));
    out.pair.gram = matrix_from_flat<double>(j.at("gram"), m, m);
    validate_pair(out.pair);
    if (exact) {
        MetricPairQ q;
        q.dim_a = n;
        for (const auto& mat : vb) q.v_basis.push_back(matrix_from_flat<Rational>(mat, n, n));
        q.gram = matrix_from_flat<Rational>(j.at("gram"), m, m);
        out.exact = std::move(q);
    }
    return out;
}

// ---- family specs ----------------------------------------------------------

inline QuatQ quat_from_json(const json& j) {
    if (j.size() != 3) throw std::invalid_argument("imaginary quaternions are [x, y, z]");
    return QuatQ::imaginary(rational_from_json(j[0]), rational_from_json(j[1]),
                            rational_from_json(j[2]));
}

inline json quat_to_json(const QuatQ& q) {
    return json::array({rational_to_json(q.x), rational_to_json(q.y), rational_to_json(q.z)});
}

inline FamilyKind family_kind_from_string(const std::string& s) {
    if (s == "dim1") return FamilyKind::dim1;
    if (s == "dim2") return FamilyKind::dim2;
    if (s == "dim3_centralizer") return FamilyKind::dim3_centralizer;
    if (s == "dim3_scaled") return FamilyKind::dim3_scaled;
    if (s == "dim3_rep") return FamilyKind::dim3_rep;
    if (s == "dim6_theta") return FamilyKind::dim6_theta;
    if (s == "dim7_theta") return FamilyKind::dim7_theta;
    if (s == "clifford") return FamilyKind::clifford;
    if (s == "reduction") return FamilyKind::reduction;
    throw std::invalid_argument("unknown family kind: " + s);
}

inline FamilySpec family_spec_from_json(const json& j) {
    FamilySpec spec;
    spec.kind = family_kind_from_string(j.at("kind").get<std::string>());
    switch (spec.kind) {
        case FamilyKind::dim1:
            if (j.contains("j")) spec.j_matrix = matrix_from_rows<Rational>(j["j"]);
            if (j.contains("alphas"))
                for (const auto& a : j["alphas"]) spec.alphas.push_back(rational_from_json(a));
            break;
        case FamilyKind::dim2:
            for (const auto& b : j.at("blocks"))
                spec.ab.push_back({quat_from_json(b.at("a")), quat_from_json(b.at("b"))});
            break;
        case FamilyKind::dim3_centralizer:
            for (const auto& b : j.at("blocks"))
                spec.abc.push_back({quat_from_json(b.at("a")), quat_from_json(b.at("b")),
                                    quat_from_json(b.at("c"))});
            break;
        case FamilyKind::dim3_scaled:
            for (const auto& l : j.at("lambdas")) spec.lambdas.push_back(rational_from_json(l));
            for (const auto& m : j.at("mus")) spec.mus.push_back(rational_from_json(m));
            break;
        case FamilyKind::dim3_rep:
            if (j.contains("lambdas"))
                for (const auto& l : j["lambdas"]) spec.rep_lambdas.push_back(rational_from_json(l));
            for (const auto& n : j.at("irreps")) spec.irreps.push_back(n.get<int>());
            break;
        case FamilyKind::dim6_theta:
        case FamilyKind::dim7_theta:
            spec.theta = theta_from_json(j.at("theta"));
            break;
        case FamilyKind::clifford:
            spec.clifford_case = j.at("case").get<std::string>().at(0);
            if (j.contains("dim_v")) spec.clifford_dim_v = j["dim_v"].get<int>();
            if (j.contains("p")) spec.blocks = j["p"].get<int>();
            if (j.contains("scale")) {
                spec.type_scale = rational_from_json(j["scale"]);
                spec.scaled_type = true;
            }
            break;
        case FamilyKind::reduction:
            spec.reduction_case = j.at("case").get<int>();
            if (j.contains("theta")) spec.theta = theta_from_json(j["theta"]);
            break;
    }
    if (j.contains("gram")) spec.gram = matrix_from_rows<Rational>(j["gram"]);
    return spec;
}

// ---- reports ---------------------------------------------------------------

inline json witness_report_json(const SampleRecord& rec) {
    json j;
    j["j"] = vec_to_json(rec.z);  // coefficients of J in the family basis
    j["x"] = vec_to_json(rec.x);
    j["targeted"] = rec.targeted;
    if (rec.witnessed) {
        j["witness"] = {{"residuals", json::array({rec.r_anchor, rec.r_conj, rec.r_member})},
                        {"max_residual", rec.max_residual},
                        {"restarts", rec.restarts}};
    } else {
        j["failure"] = {{"best_penalty", rec.best_penalty}, {"restarts", rec.restarts}};
    }
    return j;
}

inline json verdict_report_json(const VerdictReport& rep) {
    json j;
    j["family"] = rep.family;
    j["seed"] = rep.seed;
    j["n_samples"] = rep.n_samples;
    j["vacuous"] = rep.vacuous;
    if (!rep.warning.empty()) j["warning"] = rep.warning;
    j["max_residual"] = rep.max_residual;
    j["all_witnessed"] = rep.all_witnessed();
    j["samples"] = json::array();
    for (const auto& s : rep.samples) j["samples"].push_back(witness_report_json(s));
    return j;
}

inline json obstruction_report_json(const ObstructionReport& rep) {
    json j;
    j["max_commutator"] = rep.max_commutator;
    j["algebra_checks"] = json::array();
    for (const auto& [c6, cp] : rep.algebra_checks)
        j["algebra_checks"].push_back(json::array({c6, cp}));
    j["phi_values"] = json::array();
    for (const auto& p : rep.phi_values)
        j["phi_values"].push_back({{"trace", p.trace_value}, {"analytic", p.analytic_value}});
    j["spectrum_checks"] = json::array();
    for (const auto& s : rep.spectrum_checks)
        j["spectrum_checks"].push_back({{"eigenvalues", vec_to_json(s.eigenvalues)},
                                        {"multiplicities", s.multiplicities},
                                        {"expected_low", s.expected_low},
                                        {"expected_high", s.expected_high}});
    j["max_phi_gap"] = rep.max_phi_gap;
    j["max_invariance_gap"] = rep.max_eq_gap;
    j["eps_pattern_ok"] = rep.eps_pattern_ok;
    j["epsilons"] = json::array();
    for (const auto& e : rep.epsilons)
        j["epsilons"].push_back({{"eps6", e.eps6}, {"eps7", e.eps7}, {"eps_prime", e.eps_prime},
                                 {"residual", e.residual}});
    j["search_failures"] = json::array();
    for (const auto& f : rep.search_failures)
        j["search_failures"].push_back({{"z", vec_to_json(f.z)},
                                        {"x", vec_to_json(f.x)},
                                        {"best_penalty", f.best_penalty},
                                        {"restarts", f.restarts}});
    j["min_best_penalty"] = rep.min_best_penalty;
    j["not_ws"] = rep.not_ws;
    j["reason"] = rep.reason;
    return j;
}

inline json decision_json(const WsDecision& d) {
    json j;
    j["computed"] = to_string(d.computed);
    j["expected"] = to_string(d.expected);
    j["match"] = d.match;
    j["exit_code"] = d.exit_code;
    if (!d.obstruction_note.empty()) j["obstruction"] = d.obstruction_note;
    j["sampling"] = verdict_report_json(d.samples);
    if (d.dim7_report) j["dim7_obstruction"] = obstruction_report_json(*d.dim7_report);
    if (d.rep_report)
        j["rep_invariance"] = {{"max_offdiag", d.rep_report->max_offdiag},
                               {"invariant", d.rep_report->invariant},
                               {"reason", d.rep_report->reason}};
    if (d.blocks) {
        json b;
        b["dets"] = matrix_to_json(d.blocks->dets);
        b["g1"] = d.blocks->g1;
        b["g2"] = d.blocks->g2;
        b["g3"] = d.blocks->g3;
        b["ws_necessary_violated"] = d.blocks->ws_necessary_violated;
        j["block_structure"] = b;
    }
    if (d.pure_part)
        j["pure_part"] = {{"dim", d.pure_part->p_dim},
                          {"l_diag_ok", d.pure_part->l_diag_ok},
                          {"norms_equal", d.pure_part->norms_equal},
                          {"ws_necessary_ok", d.pure_part->ws_necessary_ok}};
    return j;
}

inline json catalog_rows_json(const std::vector<CatalogRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        json row;
        row["case"] = r.entry.case_id;
        row["subspace"] = r.entry.description;
        row["expected"] = {{"ws", to_string(r.entry.is_ws)},
                           {"nonsingular", r.entry.is_nonsingular},
                           {"clifford", r.entry.clifford}};
        row["computed"] = {{"ws", to_string(r.computed_ws)},
                           {"nonsingular", r.computed_nonsingular},
                           {"clifford", r.computed_clifford},
                           {"min_det_on_sphere", r.min_det}};
        if (r.singular_witness) row["computed"]["singular_witness"] = vec_to_json(*r.singular_witness);
        row["match"] = r.match;
        arr.push_back(row);
    }
    return arr;
}

} // namespace nilws
