// Command-line front end: build classified families, verify or refute the
// weak-symmetry condition on samples, inspect normalizers, run the
// central-reduction catalog, and emit seeded JSON reports.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "nilws/nilws.hpp"

namespace {

using nilws::json;

struct Tolerances {
    std::map<std::string, double> values = {
        {"witness", 1e-8},       // per-sample residual acceptance
        {"membership", 1e-9},    // conjugation/orthogonality residual
        {"nullspace", 1e-9},     // singular values treated as zero
        {"det_zero", 1e-9},      // |det| threshold for a singular witness
        {"floor", 1e-16},        // search success floor on the penalty
        {"report_floor", 1e-4},  // stall level reported as failure evidence
        {"commutator", 1e-10},   // obstruction commutator bound
    };

    void apply(const std::vector<std::string>& overrides) {
        for (const auto& kv : overrides) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw CLI::ValidationError("--tol expects name=value");
            std::string name = kv.substr(0, eq);
            if (!values.count(name)) throw CLI::ValidationError("unknown tolerance: " + name);
            double v = std::stod(kv.substr(eq + 1));
            double floor_v = 100.0 * std::numeric_limits<double>::epsilon();
            if (v < floor_v) throw CLI::ValidationError("tolerance below 100*eps");
            values[name] = v;
        }
    }

    double at(const std::string& name) const { return values.at(name); }

    json to_json() const {
        json j;
        for (const auto& [k, v] : values) j[k] = v;
        return j;
    }
};

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

void emit(const json& report, const std::string& out_path, bool to_stdout) {
    std::string text = report.dump(2);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << text << "\n";
    }
    if (to_stdout) std::cout << text << "\n";
}

json run_config(const std::string& command, const json& spec, std::uint64_t seed,
                std::size_t samples, const Tolerances& tol) {
    json j;
    j["version"] = nilws::version;
    j["command"] = command;
    if (!spec.is_null()) j["spec"] = spec;
    j["seed"] = seed;
    j["samples"] = samples;
    j["tolerances"] = tol.to_json();
    return j;
}

nilws::SearchConfig search_config(const Tolerances& tol, std::uint64_t seed) {
    nilws::SearchConfig cfg;
    cfg.success_floor = tol.at("floor");
    cfg.report_floor = tol.at("report_floor");
    cfg.seed = seed;
    return cfg;
}

int cmd_build(const std::string& spec_path, const std::string& out_path, bool as_json,
              std::uint64_t seed) {
    json spec_json = load_json_file(spec_path);
    nilws::BuiltFamily fam = nilws::build_family(nilws::family_spec_from_json(spec_json));
    auto type = nilws::eigenvalue_type(fam.pair);
    nilws::NonSingularityVerdict ns;
    if (fam.exact && nilws::quaternionic_block_form(*fam.exact))
        ns = nilws::nonsingularity_exact_block(*fam.exact);
    else
        ns = nilws::nonsingularity_sampled(fam.pair, seed);

    json pair_json = fam.exact ? nilws::pair_to_json(*fam.exact) : nilws::pair_to_json(fam.pair);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << pair_json.dump(2) << "\n";
    }
    if (as_json) {
        json rep;
        rep["family"] = fam.name();
        rep["dim_v"] = fam.pair.dim_v();
        rep["dim_a"] = fam.pair.dim_a;
        rep["eigenvalue_type"] = type.str();
        rep["nonsingularity"] = nilws::to_string(ns.status);
        rep["warnings"] = fam.warnings;
        rep["pair"] = pair_json;
        std::cout << rep.dump(2) << "\n";
    } else {
        std::cout << "family:            " << fam.name() << "\n";
        std::cout << "dim V:             " << fam.pair.dim_v() << "\n";
        std::cout << "dim a:             " << fam.pair.dim_a << "\n";
        std::cout << "eigenvalue type:   " << type.str() << "\n";
        std::cout << "non-singularity:   " << nilws::to_string(ns.status) << "\n";
        for (const auto& w : fam.warnings) std::cout << "warning: " << w << "\n";
        if (!out_path.empty()) std::cout << "pair written to " << out_path << "\n";
    }
    return 0;
}

int cmd_verify_ws(const std::string& spec_path, std::uint64_t seed, std::size_t samples,
                  const Tolerances& tol, bool as_json, const std::string& out_path) {
    json spec_json = load_json_file(spec_path);
    nilws::BuiltFamily fam = nilws::build_family(nilws::family_spec_from_json(spec_json));
    auto decision = nilws::decide_ws(fam, samples, seed, tol.at("witness"),
                                     search_config(tol, seed));
    json rep;
    rep["config"] = run_config("verify-ws", spec_json, seed, samples, tol);
    rep["family"] = fam.name();
    rep["decision"] = nilws::decision_json(decision);
    emit(rep, out_path, as_json);
    if (!as_json) {
        std::cout << "family:    " << fam.name() << "\n";
        std::cout << "computed:  " << nilws::to_string(decision.computed) << "\n";
        std::cout << "expected:  " << nilws::to_string(decision.expected) << "\n";
        if (!decision.obstruction_note.empty())
            std::cout << "obstruction: " << decision.obstruction_note << "\n";
        std::cout << "samples:   " << decision.samples.samples.size()
                  << " (failures: " << decision.samples.failures.size() << ")\n";
        std::cout << (decision.exit_code == 0 ? "verdict matches expectation"
                      : decision.exit_code == 2 ? "verdict MISMATCH"
                                                : "inconclusive")
                  << "\n";
    }
    return decision.exit_code;
}

int cmd_normalizer(const std::string& spec_path, const std::string& pair_path, bool as_json,
                   const std::string& out_path) {
    nilws::MetricPairD pair;
    json spec_json;
    if (!spec_path.empty()) {
        spec_json = load_json_file(spec_path);
        pair = nilws::build_family(nilws::family_spec_from_json(spec_json)).pair;
    } else {
        pair = nilws::pair_from_json(load_json_file(pair_path)).pair;
    }
    auto nd = nilws::normalizer_algebra(pair);
    json rep;
    rep["config"] = json{{"version", nilws::version}, {"command", "normalizer"}};
    if (!spec_json.is_null()) rep["config"]["spec"] = spec_json;
    rep["dim_n"] = nd.dim_n();
    rep["dim_c"] = nd.dim_c();
    rep["dim_p"] = nd.dim_p();
    rep["closure_residual"] = nd.closure_residual;
    if (as_json || !out_path.empty()) {
        rep["n_basis"] = json::array();
        for (const auto& b : nd.n_basis) rep["n_basis"].push_back(nilws::matrix_to_json(b));
        rep["c_basis"] = json::array();
        for (const auto& b : nd.c_basis) rep["c_basis"].push_back(nilws::matrix_to_json(b));
        rep["p_basis"] = json::array();
        for (const auto& b : nd.p_basis) rep["p_basis"].push_back(nilws::matrix_to_json(b));
    }
    emit(rep, out_path, as_json);
    if (!as_json)
        std::cout << "dim n(V) = " << nd.dim_n() << ", dim c(V) = " << nd.dim_c()
                  << ", dim p(V) = " << nd.dim_p()
                  << ", bracket closure residual = " << nd.closure_residual << "\n";
    return 0;
}

int cmd_nonsingular(const std::string& spec_path, const std::string& pair_path,
                    const std::string& mode, std::uint64_t seed, bool as_json) {
    std::optional<nilws::MetricPairQ> exact;
    nilws::MetricPairD pair;
    if (!spec_path.empty()) {
        auto fam = nilws::build_family(nilws::family_spec_from_json(load_json_file(spec_path)));
        pair = fam.pair;
        exact = fam.exact;
    } else {
        auto loaded = nilws::pair_from_json(load_json_file(pair_path));
        pair = loaded.pair;
        exact = loaded.exact;
    }
    nilws::NonSingularityVerdict v;
    if (mode == "exact") {
        if (exact) v = nilws::nonsingularity_exact_block(*exact);
        else v = nilws::nonsingularity_exact_block(pair);
    } else {
        v = nilws::nonsingularity_sampled(pair, seed);
    }
    if (as_json) {
        json rep;
        rep["config"] = json{{"version", nilws::version}, {"command", "nonsingular"},
                             {"mode", mode}, {"seed", seed}};
        rep["status"] = nilws::to_string(v.status);
        if (v.witness) rep["witness"] = nilws::vec_to_json(*v.witness);
        if (std::isfinite(v.min_det_on_sphere)) rep["min_det_on_sphere"] = v.min_det_on_sphere;
        std::cout << rep.dump(2) << "\n";
    } else {
        std::cout << "status: " << nilws::to_string(v.status) << "\n";
        if (std::isfinite(v.min_det_on_sphere))
            std::cout << "min |det| on the unit sphere: " << v.min_det_on_sphere << "\n";
    }
    return 0;
}

int cmd_catalog(double theta, bool nonstandard_entry4, std::uint64_t seed, std::size_t samples,
                const Tolerances& tol, bool as_json, const std::string& out_path) {
    std::optional<nilws::MatQ> entry4;
    if (nonstandard_entry4) {
        nilws::MatQ g = nilws::MatQ::identity(7);
        g(6, 6) = nilws::Rational(2);  // distinct scales on J_6 and J_7
        entry4 = g;
    }
    auto rows = nilws::catalog_rows(theta, entry4, seed, samples);
    json rep;
    rep["config"] = run_config("catalog", json(), seed, samples, tol);
    rep["theta"] = theta;
    rep["rows"] = nilws::catalog_rows_json(rows);
    bool all_match = true;
    std::vector<int> mismatched;
    for (const auto& r : rows)
        if (!r.match) {
            all_match = false;
            mismatched.push_back(r.entry.case_id);
        }
    rep["all_match"] = all_match;
    emit(rep, out_path, as_json);
    if (!as_json) {
        std::printf("%-4s %-22s %-28s %-28s %s\n", "case", "V'", "expected", "computed", "match");
        for (const auto& r : rows) {
            std::string exp = std::string(nilws::to_string(r.entry.is_ws)) +
                              (r.entry.is_nonsingular ? " nonsing" : " singular") +
                              (r.entry.clifford ? " clifford" : "");
            std::string got = std::string(nilws::to_string(r.computed_ws)) +
                              (r.computed_nonsingular ? " nonsing" : " singular") +
                              (r.computed_clifford ? " clifford" : "");
            std::printf("%-4d %-22s %-28s %-28s %s\n", r.entry.case_id,
                        r.entry.description.c_str(), exp.c_str(), got.c_str(),
                        r.match ? "yes" : "NO");
        }
    }
    if (!all_match) {
        std::cerr << "mismatched rows:";
        for (int c : mismatched) std::cerr << " " << c;
        std::cerr << "\n";
        return 2;
    }
    return 0;
}

int cmd_obstruct_dim7(double theta, std::uint64_t seed, std::size_t x_samples,
                      std::size_t restarts, const Tolerances& tol, bool as_json,
                      const std::string& out_path) {
    nilws::FamilySpec spec;
    spec.kind = nilws::FamilyKind::dim7_theta;
    spec.theta = theta;
    auto fam = nilws::build_family(spec);
    auto nd = nilws::normalizer_algebra(fam.pair, tol.at("nullspace"));
    auto rep = nilws::dim7_obstruction(fam, nd, seed, 200, x_samples, restarts,
                                       tol.at("commutator"));
    json out;
    out["config"] = run_config("obstruct-dim7", json{{"theta", theta}}, seed, x_samples, tol);
    out["dim_n"] = nd.dim_n();
    out["report"] = nilws::obstruction_report_json(rep);
    emit(out, out_path, as_json);
    if (!as_json) {
        std::cout << "dim n(V) = " << nd.dim_n() << "\n";
        std::cout << "max ||[D, J6]||, ||[D, J']||: " << rep.max_commutator << "\n";
        std::cout << "invariant gap (trace vs analytic): " << rep.max_phi_gap << "\n";
        std::cout << "eps pattern (eps6 = +1 throughout): " << (rep.eps_pattern_ok ? "ok" : "violated")
                  << "\n";
        std::cout << "witness search for (J6, X): best penalty " << rep.min_best_penalty << "\n";
        std::cout << "verdict: " << rep.reason << "\n";
    }
    return rep.not_ws ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"metric 2-step nilpotent pairs: weak-symmetry verification toolkit"};
    app.require_subcommand(1);

    std::string spec_path, pair_path, out_path, mode = "sampled";
    std::uint64_t seed = 1;
    std::size_t samples = 100;
    std::size_t restarts = 20;
    double theta = M_PI / 4;
    bool as_json = false;
    bool nonstandard_entry4 = false;
    std::vector<std::string> tol_overrides;

    auto add_common = [&](CLI::App* sub, bool with_spec = true) {
        if (with_spec) sub->add_option("--spec", spec_path, "family spec JSON file");
        sub->add_option("--seed", seed, "random seed recorded in the report");
        sub->add_option("--tol", tol_overrides, "tolerance override name=value");
        sub->add_flag("--json", as_json, "machine-readable output");
        sub->add_option("--out", out_path, "write the JSON report to this path");
    };

    auto* build = app.add_subcommand("build", "construct a family and print its summary");
    add_common(build);
    build->get_option("--spec")->required();

    auto* verify = app.add_subcommand("verify-ws", "sampled weak-symmetry verdict plus obstructions");
    add_common(verify);
    verify->get_option("--spec")->required();
    verify->add_option("--samples", samples, "number of (J, X) samples");

    auto* norm = app.add_subcommand("normalizer", "normalizer/centralizer/pure-part dimensions");
    add_common(norm);
    norm->add_option("--pair", pair_path, "serialized pair JSON file");

    auto* nonsing = app.add_subcommand("nonsingular", "non-singularity verdict");
    add_common(nonsing);
    nonsing->add_option("--pair", pair_path, "serialized pair JSON file");
    nonsing->add_option("--mode", mode, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));

    auto* cat = app.add_subcommand("catalog", "the five central-reduction cases, computed vs expected");
    add_common(cat, false);
    cat->add_option("--theta", theta, "angle for the theta rows");
    cat->add_option("--samples", samples, "witness samples per row");
    cat->add_flag("--nonstandard-entry4", nonstandard_entry4,
                  "force a non-standard inner product on case 4");

    auto* obstruct = app.add_subcommand("obstruct-dim7", "conjugation obstructions for the dim-7 family");
    add_common(obstruct, false);
    obstruct->add_option("--theta", theta, "angle parameter in (0, pi/2)");
    obstruct->add_option("--samples", samples, "X samples for the witness search");
    obstruct->add_option("--restarts", restarts, "search restarts per sample");

    CLI11_PARSE(app, argc, argv);

    Tolerances tol;
    try {
        tol.apply(tol_overrides);
        if (build->parsed()) return cmd_build(spec_path, out_path, as_json, seed);
        if (verify->parsed())
            return cmd_verify_ws(spec_path, seed, verify->count("--samples") ? samples : 100, tol,
                                 as_json, out_path);
        if (norm->parsed()) {
            if (spec_path.empty() && pair_path.empty())
                throw std::runtime_error("normalizer needs --spec or --pair");
            return cmd_normalizer(spec_path, pair_path, as_json, out_path);
        }
        if (nonsing->parsed()) {
            if (spec_path.empty() && pair_path.empty())
                throw std::runtime_error("nonsingular needs --spec or --pair");
            return cmd_nonsingular(spec_path, pair_path, mode, seed, as_json);
        }
        if (cat->parsed())
            return cmd_catalog(theta, nonstandard_entry4, seed,
                               cat->count("--samples") ? samples : 8, tol, as_json, out_path);
        if (obstruct->parsed())
            return cmd_obstruct_dim7(theta, seed, obstruct->count("--samples") ? samples : 10,
                                     restarts, tol, as_json, out_path);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 1;
}
