#pragma once

#include "g2fm/rational.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace g2fm {

// q = q0 + q1 i + q2 j + q3 k.
template <class T>
struct BasicQuaternion {
    std::array<T, 4> c{T(0), T(0), T(0), T(0)};

    BasicQuaternion() = default;
    BasicQuaternion(T a, T b, T cc, T d) : c{a, b, cc, d} {}
    static BasicQuaternion real(T a) { return {a, T(0), T(0), T(0)}; }
    static BasicQuaternion unit(int k) {
        BasicQuaternion q;
        q.c.at(k) = T(1);
        return q;
    }
    static BasicQuaternion from(const std::vector<T>& v) { return {v.at(0), v.at(1), v.at(2), v.at(3)}; }

    T& operator[](int k) { return c[k]; }
    const T& operator[](int k) const { return c[k]; }

    BasicQuaternion conj() const { return {c[0], T(-c[1]), T(-c[2]), T(-c[3])}; }
    T norm2() const { return c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]; }
    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }

    friend BasicQuaternion operator+(const BasicQuaternion& a, const BasicQuaternion& b) {
        return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
    }
    friend BasicQuaternion operator-(const BasicQuaternion& a, const BasicQuaternion& b) {
        return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
    }
    BasicQuaternion operator-() const { return {T(-c[0]), T(-c[1]), T(-c[2]), T(-c[3])}; }
    friend BasicQuaternion operator*(const T& s, const BasicQuaternion& a) {
        return {s * a[0], s * a[1], s * a[2], s * a[3]};
    }
    friend BasicQuaternion operator*(const BasicQuaternion& a, const BasicQuaternion& b) {
        return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
                a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
                a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
                a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
    }
    friend bool operator==(const BasicQuaternion& a, const BasicQuaternion& b) { return a.c == b.c; }
};

using Quaternion = BasicQuaternion<Rational>;
using QuaternionD = BasicQuaternion<double>;

template <class T>
T dot(const BasicQuaternion<T>& a, const BasicQuaternion<T>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

// Formal det(I, u, v, w) with I = (1, i, j, k)^T, expanded along the first column.
template <class T>
BasicQuaternion<T> triple_cross(const BasicQuaternion<T>& u, const BasicQuaternion<T>& v,
                                const BasicQuaternion<T>& w) {
    BasicQuaternion<T> out;
    for (int r = 0; r < 4; ++r) {
        int rows[3];
        int n = 0;
        for (int k = 0; k < 4; ++k)
            if (k != r) rows[n++] = k;
        T minor = u[rows[0]] * (v[rows[1]] * w[rows[2]] - v[rows[2]] * w[rows[1]]) -
                  v[rows[0]] * (u[rows[1]] * w[rows[2]] - u[rows[2]] * w[rows[1]]) +
                  w[rows[0]] * (u[rows[1]] * v[rows[2]] - u[rows[2]] * v[rows[1]]);
        out[r] = (r % 2 == 0) ? minor : T(-minor);
    }
    return out;
}

// Real 4x4 determinant with the quaternions as columns in basis (1, i, j, k).
template <class T>
T det4(const BasicQuaternion<T>& a, const BasicQuaternion<T>& b, const BasicQuaternion<T>& c,
       const BasicQuaternion<T>& d) {
    BasicQuaternion<T> t = triple_cross(b, c, d);
    return dot(a, t);
}

}  // namespace g2fm
