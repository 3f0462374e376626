#pragma once

#include <functional>
#include <vector>

#include "nilws/numeric.hpp"
#include "nilws/so_basis.hpp"

namespace nilws {

/// Kernel of a linear map between matrix spaces, the map given by its action
/// on a trace-orthonormal basis of the domain. Singular values below sv_tol
/// count as zero; the returned basis is trace-orthonormal.
struct OperatorNullspace {
    std::vector<MatD> basis;            // kernel elements as matrices
    std::vector<VecD> coefficients;     // same elements in domain coordinates
    VecD singular_values;               // ascending
};

inline OperatorNullspace nullspace_of_operator(
    const std::vector<MatD>& domain_basis,
    const std::function<MatD(const MatD&)>& op,
    double sv_tol = 1e-9) {
    OperatorNullspace out;
    if (domain_basis.empty()) return out;
    const std::size_t d = domain_basis.size();
    std::vector<MatD> images;
    images.reserve(d);
    for (const auto& b : domain_basis) images.push_back(op(b));
    const std::size_t m = images.front().rows() * images.front().cols();
    MatD a(m, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < m; ++i) a(i, j) = images[j].data()[i];
    auto ns = svd_nullspace(a, sv_tol);
    out.singular_values = ns.singular_values;
    for (const auto& c : ns.kernel) {
        out.coefficients.push_back(c);
        out.basis.push_back(from_coords(domain_basis, c));
    }
    return out;
}

} // namespace nilws
