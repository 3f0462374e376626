#include <doctest.h>

#include "nilws/families.hpp"
#include "nilws/nilalgebra.hpp"
#include "nilws/nonsingular.hpp"
#include "nilws/octonion.hpp"
#include "nilws/rng.hpp"

using namespace nilws;

namespace {

FamilySpec scaled_spec(std::vector<long long> lambdas, std::vector<long long> mus) {
    FamilySpec s;
    s.kind = FamilyKind::dim3_scaled;
    for (auto l : lambdas) s.lambdas.emplace_back(l);
    for (auto m : mus) s.mus.emplace_back(m);
    return s;
}

FamilySpec dim2_spec_ij() {
    FamilySpec s;
    s.kind = FamilyKind::dim2;
    s.ab.push_back({QuatQ::i(), QuatQ::j()});
    return s;
}

} // namespace

TEST_CASE("j_of is the linear combination of the basis") {
    auto fam = build_family(scaled_spec({2}, {3}));
    const auto& p = fam.pair;
    CHECK(max_abs(j_of(p, {1.0, 0.0, 0.0}) - p.v_basis[0]) == 0.0);
    CHECK(max_abs(j_of(p, {0.0, 0.0, 0.0})) == 0.0);
    // block expansion: Z = (a,b,c) gives L_{a l i + b m j + c m k}
    MatD expect = left_mult_matrix(QuatD::imaginary(1.0 * 2, 2.0 * 3, -1.0 * 3));
    CHECK(max_abs(j_of(p, {1.0, 2.0, -1.0}) - expect) < 1e-14);
    CHECK_THROWS_AS(j_of(p, VecD{1.0}), std::invalid_argument);
}

TEST_CASE("bracket on the one-block quaternionic pair") {
    MetricPairQ p;
    p.dim_a = 4;
    p.v_basis = {left_mult_matrix(QuatQ::i())};
    p.gram = MatQ::identity(1);
    NilpotentAlgebra<Rational> alg(p);
    // [1, i]: t = <L_i 1, i> = 1, so Z = (1)
    auto e1 = alg.element({Rational(0)}, {Rational(1), Rational(0), Rational(0), Rational(0)});
    auto e2 = alg.element({Rational(0)}, {Rational(0), Rational(1), Rational(0), Rational(0)});
    auto br = bracket(alg, e1, e2);
    CHECK(br.z[0] == Rational(1));
    for (const auto& c : br.x) CHECK(c.is_zero());
    // central elements bracket to zero
    auto z1 = alg.element({Rational(2)}, VecQ(4, Rational(0)));
    auto zz = bracket(alg, z1, e2);
    CHECK(zz.z[0].is_zero());
}

TEST_CASE("defining identity round trip, double and exact") {
    auto fam = build_family(scaled_spec({1, 2}, {1, 1}));
    const auto& p = fam.pair;
    NilpotentAlgebra<double> alg(p);
    Rng rng(21);
    for (int t = 0; t < 200; ++t) {
        VecD z = rng.normal_vector(3);
        VecD x = rng.normal_vector(8);
        VecD y = rng.normal_vector(8);
        auto zb = bracket_z(p, x, y);
        double lhs = dot(z, p.gram.apply(zb));
        double rhs = dot(j_of(p, z).apply(x), y);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
    // exact mode on the rational pair
    const auto& q = *fam.exact;
    Rng rng2(22);
    auto rnd = [&] { return Rational(static_cast<long long>(rng2.next_u64() % 11) - 5, 1 + rng2.next_u64() % 3); };
    for (int t = 0; t < 20; ++t) {
        VecQ z{rnd(), rnd(), rnd()};
        VecQ x(8), y(8);
        for (auto& v : x) v = rnd();
        for (auto& v : y) v = rnd();
        auto zb = bracket_z(q, x, y);
        Rational lhs = dot(z, q.gram.apply(zb));
        Rational rhs = dot(j_of(q, z).apply(x), y);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("structure check passes on built families") {
    for (auto fam : {build_family(scaled_spec({1}, {1})), build_family(dim2_spec_ij())}) {
        auto rep = structure_check(fam.pair, 1);
        CHECK(rep.all_ok());
        CHECK(rep.derived_dim == fam.pair.dim_v());
        CHECK(rep.center_equals_v);
    }
}

TEST_CASE("derived algebra of the two-dimensional family has dimension 2") {
    auto fam = build_family(dim2_spec_ij());
    auto rep = structure_check(fam.pair, 3);
    CHECK(rep.derived_dim == 2);
}

TEST_CASE("a pair with a common kernel is flagged: center exceeds V") {
    MetricPairD p;
    p.dim_a = 6;
    MatD j(6, 6);
    j.set_block(0, 0, left_mult_matrix(QuatD::i()));
    p.v_basis = {j};
    p.gram = MatD::identity(1);
    auto rep = structure_check(p, 5);
    CHECK(!rep.center_equals_v);
    CHECK(rep.common_kernel_dim == 2);
    CHECK(!rep.all_ok());
}

TEST_CASE("standard gram of the octonion structures is the identity, exactly") {
    auto js = octonion_complex_structures<Rational>();
    MetricPairQ p;
    p.dim_a = 8;
    p.v_basis = js;
    p.gram = MatQ::identity(7);
    MatQ g = standard_gram(p);
    CHECK(g == MatQ::identity(7));
}

TEST_CASE("standard gram normalization and scaling") {
    MetricPairQ p;
    p.dim_a = 4;
    p.v_basis = {left_mult_matrix(QuatQ::i())};
    p.gram = MatQ::identity(1);
    CHECK(standard_gram(p)(0, 0) == Rational(1));  // -Tr(L_i^2)/4 = 1
    p.v_basis = {Rational(3) * left_mult_matrix(QuatQ::i())};
    CHECK(standard_gram(p)(0, 0) == Rational(9));  // scales by c^2
}

TEST_CASE("eigenvalue types") {
    // standard inner product: single cluster of full multiplicity
    auto fam = build_family(scaled_spec({1}, {1}));
    CHECK(eigenvalue_type(fam.pair).str() == "(3)");

    // dim 3 Clifford with gram diag(2,1,1): type (2,1)
    FamilySpec cb;
    cb.kind = FamilyKind::clifford;
    cb.clifford_case = 'b';
    cb.scaled_type = true;
    cb.type_scale = Rational(2);
    auto fb = build_family(cb);
    auto t = eigenvalue_type(fb.pair);
    CHECK(t.str() == "(2,1)");

    // dim 6 family with the tail direction scaled: type (5,1)
    FamilySpec d6;
    d6.kind = FamilyKind::dim6_theta;
    d6.theta = M_PI / 4;
    MatQ g = MatQ::identity(6);
    g(5, 5) = Rational(3);
    d6.gram = g;
    auto f6 = build_family(d6);
    CHECK(eigenvalue_type(f6.pair).str() == "(5,1)");
}

TEST_CASE("eigenvalue type is invariant under standard-orthogonal basis change") {
    FamilySpec cb;
    cb.kind = FamilyKind::clifford;
    cb.clifford_case = 'b';
    cb.scaled_type = true;
    cb.type_scale = Rational(3);
    auto fam = build_family(cb);
    auto before = eigenvalue_type(fam.pair);
    // rotate the basis by an orthogonal matrix (standard gram here is I_3)
    Rng rng(31);
    MatD o = skew_exp([&] {
        MatD d(3, 3);
        d(0, 1) = rng.normal();
        d(1, 0) = -d(0, 1);
        d(0, 2) = rng.normal();
        d(2, 0) = -d(0, 2);
        d(1, 2) = rng.normal();
        d(2, 1) = -d(1, 2);
        return d;
    }());
    MetricPairD rotated;
    rotated.dim_a = fam.pair.dim_a;
    for (std::size_t k = 0; k < 3; ++k) {
        VecD col(3);
        for (std::size_t i = 0; i < 3; ++i) col[i] = o(i, k);
        rotated.v_basis.push_back(j_of(fam.pair, col));
    }
    rotated.gram = o.transpose() * fam.pair.gram * o;
    auto after = eigenvalue_type(rotated);
    CHECK(before.multiplicities == after.multiplicities);
}

TEST_CASE("nonsingularity: exact block certification") {
    auto fam = build_family(dim2_spec_ij());
    auto v = nonsingularity_exact_block(*fam.exact);
    CHECK(v.status == NonSingularity::certified_nonsingular);

    // degenerate first block: a parallel to b there, V still two-dimensional
    FamilySpec bad;
    bad.kind = FamilyKind::dim2;
    bad.ab.push_back({QuatQ::i(), Rational(2) * QuatQ::i()});
    bad.ab.push_back({QuatQ::i(), QuatQ::j()});
    auto fbad = build_family(bad);
    CHECK(fbad.warnings.size() == 1);
    auto vbad = nonsingularity_exact_block(*fbad.exact);
    CHECK(vbad.status == NonSingularity::singular_with_witness);
    REQUIRE(vbad.witness.has_value());
    // the witness direction gives a singular, nonzero J
    MatD jw = j_of(fbad.pair, *vbad.witness);
    CHECK(max_abs(jw) > 0.1);
    CHECK(std::abs(determinant(jw)) < 1e-12);
}

TEST_CASE("nonsingularity: sampled mode finds the singular direction of case 5") {
    auto rows = reduction_catalog();
    const auto& fam5 = rows[4].first;
    auto v = nonsingularity_sampled(fam5.pair, 2);
    CHECK(v.status == NonSingularity::singular_with_witness);
    REQUIRE(v.witness.has_value());
    CHECK(std::abs(determinant(j_of(fam5.pair, *v.witness))) < 1e-9);

    // the known direction J_5 + J_6 J_7 is singular, exactly
    MatQ jq = fam5.exact->v_basis[4] + fam5.exact->v_basis[6];
    CHECK(determinant(jq).is_zero());
}

TEST_CASE("nonsingularity verdict does not depend on the inner product") {
    auto fam = build_family(scaled_spec({1, 3}, {2, 1}));
    auto v1 = nonsingularity_sampled(fam.pair, 4, 2000);
    MetricPairD std_pair = fam.pair;
    std_pair.gram = standard_gram(fam.pair);
    auto v2 = nonsingularity_sampled(std_pair, 4, 2000);
    CHECK(v1.status == v2.status);
    CHECK(v1.status == NonSingularity::numerically_nonsingular);
}

TEST_CASE("exact block mode rejects pairs without block structure") {
    FamilySpec d6;
    d6.kind = FamilyKind::dim6_theta;
    auto fam = build_family(d6);
    CHECK_THROWS_AS(nonsingularity_exact_block(fam.pair), std::invalid_argument);
}

#include "nilws/serialize.hpp"

TEST_CASE("pair serialization round trips, rational entries as p/q strings") {
    FamilySpec s;
    s.kind = FamilyKind::dim3_scaled;
    s.lambdas = {Rational(1, 2)};
    s.mus = {Rational(3)};
    auto fam = build_family(s);
    auto j = pair_to_json(*fam.exact);
    auto loaded = pair_from_json(j);
    REQUIRE(loaded.exact.has_value());
    CHECK(loaded.exact->gram == fam.exact->gram);
    for (std::size_t k = 0; k < 3; ++k) CHECK(loaded.exact->v_basis[k] == fam.exact->v_basis[k]);
    // a double pair round trips through numbers, without the exact side
    auto jd = pair_to_json(fam.pair);
    auto loaded_d = pair_from_json(jd);
    CHECK(max_abs(loaded_d.pair.gram - fam.pair.gram) == 0.0);
}
