#pragma once
// Small fixed-size linear algebra: symmetric 2x2 / 3x3 matrices with
// closed-form inverses, determinants, and the Levi-Civita permutation symbol.
// Everything is a plain value type; all functions are pure.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "cskk/errors.hpp"

namespace cskk {

using vec2 = std::array<double, 2>;
using vec3 = std::array<double, 3>;
using mat2 = std::array<std::array<double, 2>, 2>;
using mat3 = std::array<std::array<double, 3>, 3>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

/// Symmetric 2x2 matrix, lower pair stored once.
struct sym2 {
    double a00 = 0, a01 = 0, a11 = 0;

    double operator()(int i, int j) const {
        return (i == 0 && j == 0) ? a00 : (i == 1 && j == 1) ? a11 : a01;
    }
    double det() const { return a00 * a11 - a01 * a01; }
};

/// Symmetric 3x3 matrix, lower pair stored once.
struct sym3 {
    double a00 = 0, a01 = 0, a02 = 0, a11 = 0, a12 = 0, a22 = 0;

    double operator()(int i, int j) const {
        if (i > j) std::swap(i, j);
        if (i == 0) return (j == 0) ? a00 : (j == 1) ? a01 : a02;
        if (i == 1) return (j == 1) ? a11 : a12;
        return a22;
    }
    double& at(int i, int j) {
        if (i > j) std::swap(i, j);
        if (i == 0) return (j == 0) ? a00 : (j == 1) ? a01 : a02;
        if (i == 1) return (j == 1) ? a11 : a12;
        return a22;
    }
    double det() const {
        return a00 * (a11 * a22 - a12 * a12) - a01 * (a01 * a22 - a12 * a02)
             + a02 * (a01 * a12 - a11 * a02);
    }
};

namespace detail {
inline constexpr double singular_threshold = 1e-14;
}

/// Inverse of a symmetric positive-definite 2x2 matrix.
/// Throws singular_metric_error if the determinant is below threshold or the
/// matrix is not positive definite.
inline sym2 invert_symmetric(const sym2& m) {
    const double d = m.det();
    if (!(m.a00 > 0.0) || !(d > detail::singular_threshold * (std::abs(m.a00 * m.a11) + 1e-300)))
        throw singular_metric_error("invert_symmetric: 2x2 matrix not positive definite");
    return sym2{m.a11 / d, -m.a01 / d, m.a00 / d};
}

/// Inverse of a symmetric positive-definite 3x3 matrix (adjugate formula).
inline sym3 invert_symmetric(const sym3& m) {
    const double d = m.det();
    // Positive-definite <=> all leading principal minors positive.
    const double m1 = m.a00;
    const double m2 = m.a00 * m.a11 - m.a01 * m.a01;
    if (!(m1 > 0.0) || !(m2 > 0.0) || !(d > 0.0) || std::abs(d) < detail::singular_threshold)
        throw singular_metric_error("invert_symmetric: 3x3 matrix not positive definite");
    sym3 r;
    r.a00 = (m.a11 * m.a22 - m.a12 * m.a12) / d;
    r.a01 = (m.a02 * m.a12 - m.a01 * m.a22) / d;
    r.a02 = (m.a01 * m.a12 - m.a02 * m.a11) / d;
    r.a11 = (m.a00 * m.a22 - m.a02 * m.a02) / d;
    r.a12 = (m.a02 * m.a01 - m.a00 * m.a12) / d;
    r.a22 = (m.a00 * m.a11 - m.a01 * m.a01) / d;
    return r;
}

/// Determinant of a general 3x3 matrix.
inline double det3(const mat3& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
         - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
         + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

/// Levi-Civita symbol in two indices; out-of-range indices throw.
inline int levi_civita(int i, int j) {
    if (i < 0 || i > 1 || j < 0 || j > 1)
        throw chart_error("levi_civita: index out of range for dim 2");
    if (i == j) return 0;
    return (i < j) ? 1 : -1;
}

/// Levi-Civita symbol in three indices, normalized so (0,1,2) -> +1;
/// 0 on any repeated index, out-of-range indices throw.
inline int levi_civita(int i, int j, int k) {
    if (i < 0 || i > 2 || j < 0 || j > 2 || k < 0 || k > 2)
        throw chart_error("levi_civita: index out of range for dim 3");
    if (i == j || j == k || i == k) return 0;
    // sign of the permutation (i j k) of (0 1 2)
    int sign = 1;
    if (i > j) { std::swap(i, j); sign = -sign; }
    if (j > k) { std::swap(j, k); sign = -sign; }
    if (i > j) { std::swap(i, j); sign = -sign; }
    return sign;
}

inline bool finite(double x) { return std::isfinite(x); }

} // namespace cskk
