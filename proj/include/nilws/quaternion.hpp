#pragma once

#include <cmath>

#include "nilws/matrix.hpp"

namespace nilws {

/// Quaternion w + x i + y j + z k over double or Rational.
template <typename T>
struct Quaternion {
    T w{0}, x{0}, y{0}, z{0};

    Quaternion() = default;
    Quaternion(T w_, T x_, T y_, T z_) : w(w_), x(x_), y(y_), z(z_) {}

    static Quaternion one() { return {T(1), T(0), T(0), T(0)}; }
    static Quaternion i() { return {T(0), T(1), T(0), T(0)}; }
    static Quaternion j() { return {T(0), T(0), T(1), T(0)}; }
    static Quaternion k() { return {T(0), T(0), T(0), T(1)}; }

    static Quaternion imaginary(T x_, T y_, T z_) { return {T(0), x_, y_, z_}; }

    friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
        return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
        return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    Quaternion operator-() const { return {-w, -x, -y, -z}; }
    friend Quaternion operator*(const T& s, const Quaternion& q) {
        return {s * q.w, s * q.x, s * q.y, s * q.z};
    }
    friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }
    friend bool operator==(const Quaternion& a, const Quaternion& b) {
        return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
    }

    Quaternion conj() const { return {w, -x, -y, -z}; }
    T norm_sq() const { return w * w + x * x + y * y + z * z; }

    Quaternion inv() const {
        T n = norm_sq();
        return {w / n, -x / n, -y / n, -z / n};
    }

    std::vector<T> coords() const { return {w, x, y, z}; }
    static Quaternion from_coords(const std::vector<T>& c) { return {c[0], c[1], c[2], c[3]}; }
};

using QuatD = Quaternion<double>;
using QuatQ = Quaternion<Rational>;

inline double norm(const QuatD& q) { return std::sqrt(q.norm_sq()); }

inline QuatD normalized(const QuatD& q) {
    double n = norm(q);
    return (1.0 / n) * q;
}

/// Matrix of x -> q x in the basis (1, i, j, k).
template <typename T>
Matrix<T> left_mult_matrix(const Quaternion<T>& q) {
    return Matrix<T>{{q.w, -q.x, -q.y, -q.z},
                     {q.x, q.w, -q.z, q.y},
                     {q.y, q.z, q.w, -q.x},
                     {q.z, -q.y, q.x, q.w}};
}

/// Matrix of x -> x q in the basis (1, i, j, k).
template <typename T>
Matrix<T> right_mult_matrix(const Quaternion<T>& q) {
    return Matrix<T>{{q.w, -q.x, -q.y, -q.z},
                     {q.x, q.w, q.z, -q.y},
                     {q.y, -q.z, q.w, q.x},
                     {q.z, q.y, -q.x, q.w}};
}

/// Euclidean inner product of the coefficient vectors.
template <typename T>
T quat_dot(const Quaternion<T>& a, const Quaternion<T>& b) {
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

/// Cross product on imaginary quaternions: Im(ab) for imaginary a, b.
template <typename T>
Quaternion<T> im_cross(const Quaternion<T>& a, const Quaternion<T>& b) {
    Quaternion<T> p = a * b;
    return Quaternion<T>::imaginary(p.x, p.y, p.z);
}

} // namespace nilws
