// Walkthrough: build a two-block family, verify its structure, compute the
// normalizer split, and print an explicit witness for one sampled (J, X).

#include <cstdio>

#include "nilws/nilws.hpp"

using namespace nilws;

int main() {
    FamilySpec spec;
    spec.kind = FamilyKind::dim3_scaled;
    spec.lambdas = {Rational(1), Rational(2)};
    spec.mus = {Rational(1), Rational(1)};
    BuiltFamily fam = build_family(spec);

    auto structure = structure_check(fam.pair, 1);
    std::printf("structure checks: %s (derived dim %zu)\n",
                structure.all_ok() ? "ok" : "FAILED", structure.derived_dim);

    auto nd = normalizer_algebra(fam.pair);
    std::printf("normalizer split: dim n = %zu, dim c = %zu, dim p = %zu\n", nd.dim_n(),
                nd.dim_c(), nd.dim_p());

    Rng rng(7);
    VecD z = gram_normalized(fam.pair, rng.unit_vector(3));
    VecD x = rng.unit_vector(8);
    Witness w = witness_dim3(fam.pair, z, x);
    std::printf("witness residuals: anchor %.2e, conjugation %.2e, membership %.2e\n",
                w.r_anchor, w.r_conj, w.r_member);
    std::printf("witness %s\n", w.valid(1e-9) ? "valid" : "invalid");
    return w.valid(1e-9) ? 0 : 1;
}
