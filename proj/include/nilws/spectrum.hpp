#pragma once

#include <cstddef>
#include <vector>

#include "nilws/numeric.hpp"

namespace nilws {

/// Spectrum of a symmetric matrix with eigenvalues clustered into
/// multiplicities. Relative clustering tolerance 1e-8 by default: the spectra
/// we form are exact +/- values perturbed only by roundoff.
struct SymmetricSpectrum {
    VecD eigenvalues;                  // strictly increasing cluster means
    std::vector<std::size_t> multiplicities;

    std::size_t dimension() const {
        std::size_t n = 0;
        for (auto m : multiplicities) n += m;
        return n;
    }
};

inline SymmetricSpectrum cluster_spectrum(const VecD& values_ascending, double rel_tol = 1e-8) {
    SymmetricSpectrum s;
    double scale = 1.0;
    for (double v : values_ascending) scale = std::max(scale, std::abs(v));
    const double tol = rel_tol * scale;
    std::size_t i = 0;
    const std::size_t n = values_ascending.size();
    while (i < n) {
        std::size_t j = i;
        double sum = 0;
        while (j < n && values_ascending[j] - values_ascending[i] <= tol) sum += values_ascending[j++];
        s.eigenvalues.push_back(sum / static_cast<double>(j - i));
        s.multiplicities.push_back(j - i);
        i = j;
    }
    return s;
}

inline SymmetricSpectrum symmetric_spectrum(const MatD& m, double rel_tol = 1e-8) {
    return cluster_spectrum(sym_eig(m).values, rel_tol);
}

} // namespace nilws
