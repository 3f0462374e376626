#include <doctest.h>

#include "nilws/quaternion.hpp"
#include "nilws/rng.hpp"

using namespace nilws;

namespace {

QuatD random_quat(Rng& rng) { return {rng.normal(), rng.normal(), rng.normal(), rng.normal()}; }

QuatQ random_quat_exact(Rng& rng) {
    auto r = [&] { return Rational(static_cast<long long>(rng.next_u64() % 19) - 9, 1 + rng.next_u64() % 4); };
    return {r(), r(), r(), r()};
}

} // namespace

TEST_CASE("left multiplication matrix on the standard basis") {
    MatQ li = left_mult_matrix(QuatQ::i());
    MatQ expect{{Rational(0), Rational(-1), Rational(0), Rational(0)},
                {Rational(1), Rational(0), Rational(0), Rational(0)},
                {Rational(0), Rational(0), Rational(0), Rational(-1)},
                {Rational(0), Rational(0), Rational(1), Rational(0)}};
    CHECK(li == expect);
    CHECK(left_mult_matrix(QuatQ::one()) == MatQ::identity(4));
    CHECK(right_mult_matrix(QuatQ::one()) == MatQ::identity(4));
}

TEST_CASE("multiplicativity is exact in rational arithmetic") {
    Rng rng(42);
    for (int t = 0; t < 25; ++t) {
        QuatQ p = random_quat_exact(rng), q = random_quat_exact(rng);
        CHECK(left_mult_matrix(p) * left_mult_matrix(q) == left_mult_matrix(p * q));
        // right multiplications compose in the opposite order
        CHECK(right_mult_matrix(q) * right_mult_matrix(p) == right_mult_matrix(p * q));
        CHECK(left_mult_matrix(p) * right_mult_matrix(q) ==
              right_mult_matrix(q) * left_mult_matrix(p));
    }
}

TEST_CASE("det L_q = |q|^4") {
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        QuatD q = random_quat(rng);
        double det = determinant(left_mult_matrix(q));
        double n2 = q.norm_sq();
        CHECK(det == doctest::Approx(n2 * n2).epsilon(1e-10));
    }
}

TEST_CASE("orthogonal imaginary units anticommute") {
    const std::vector<QuatQ> units = {QuatQ::i(), QuatQ::j(), QuatQ::k()};
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) {
            MatQ lab = left_mult_matrix(units[a]) * left_mult_matrix(units[b]);
            MatQ lba = left_mult_matrix(units[b]) * left_mult_matrix(units[a]);
            if (a == b) CHECK(lab == MatQ(4, 4) - MatQ::identity(4));
            else CHECK(lab == MatQ(4, 4) - lba);
        }
}

TEST_CASE("skewness characterizes imaginary quaternions") {
    CHECK(is_skew(left_mult_matrix(QuatQ::imaginary(Rational(2), Rational(-3), Rational(5)))));
    CHECK(!is_skew(left_mult_matrix(QuatQ(Rational(1), Rational(2), Rational(0), Rational(0)))));
}

TEST_CASE("conjugation and inverse") {
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
        QuatQ q = random_quat_exact(rng);
        if (q.norm_sq().is_zero()) continue;
        QuatQ prod = q * q.inv();
        CHECK(prod == QuatQ::one());
    }
}
