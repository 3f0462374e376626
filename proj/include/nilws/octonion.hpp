#pragma once

#include <array>
#include <vector>

#include "nilws/quaternion.hpp"

namespace nilws {

/// Octonion as a pair of quaternions under the Cayley-Dickson product
/// (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)).
template <typename T>
struct Octonion {
    Quaternion<T> a, b;

    friend Octonion operator*(const Octonion& x, const Octonion& y) {
        return {x.a * y.a - y.b.conj() * x.b, y.b * x.a + x.b * y.a.conj()};
    }

    std::vector<T> coords() const {
        return {a.w, a.x, a.y, a.z, b.w, b.x, b.y, b.z};
    }

    static Octonion basis(std::size_t idx) {
        std::vector<T> c(8, T(0));
        c[idx] = T(1);
        return {Quaternion<T>(c[0], c[1], c[2], c[3]), Quaternion<T>(c[4], c[5], c[6], c[7])};
    }
};

/// Seven anticommuting complex structures on R^8: the left multiplications by
/// the imaginary octonion units e_1..e_7. Exact integer entries.
template <typename T = Rational>
std::vector<Matrix<T>> octonion_complex_structures() {
    std::vector<Matrix<T>> js;
    js.reserve(7);
    for (std::size_t u = 1; u <= 7; ++u) {
        Matrix<T> j(8, 8);
        Octonion<T> e = Octonion<T>::basis(u);
        for (std::size_t col = 0; col < 8; ++col) {
            auto prod = e * Octonion<T>::basis(col);
            auto c = prod.coords();
            for (std::size_t row = 0; row < 8; ++row) j(row, col) = c[row];
        }
        js.push_back(std::move(j));
    }
    return js;
}

inline std::vector<MatD> octonion_complex_structures_d() {
    std::vector<MatD> out;
    for (const auto& j : octonion_complex_structures<Rational>()) out.push_back(to_double(j));
    return out;
}

} // namespace nilws
