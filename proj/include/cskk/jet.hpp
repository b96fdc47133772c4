#pragma once
// Forward-mode derivative "jets" in the two base coordinates (x0, x1).
// jet1 carries a value and its gradient; jet2 additionally carries the
// (symmetric) Hessian. All arithmetic propagates derivatives exactly, so any
// quantity assembled from field jets has machine-accurate partials without
// finite differencing. Base fields never depend on the fiber coordinate x2,
// so two derivative slots suffice; d/dx2 of every jet is identically zero.

#include <cmath>

#include "cskk/errors.hpp"

namespace cskk {

/// Value + first partials with respect to (x0, x1).
struct jet1 {
    double v = 0, d0 = 0, d1 = 0;

    /// Partial derivative by axis index; axis 2 (fiber) is identically 0.
    double d(int axis) const {
        if (axis == 0) return d0;
        if (axis == 1) return d1;
        if (axis == 2) return 0.0;
        throw chart_error("jet1: derivative axis out of range");
    }
};

/// Value + first and second partials with respect to (x0, x1).
struct jet2 {
    double v = 0, d0 = 0, d1 = 0, d00 = 0, d01 = 0, d11 = 0;
};

// ---- jet1 arithmetic -------------------------------------------------------

inline jet1 operator+(const jet1& a, const jet1& b) { return {a.v + b.v, a.d0 + b.d0, a.d1 + b.d1}; }
inline jet1 operator-(const jet1& a, const jet1& b) { return {a.v - b.v, a.d0 - b.d0, a.d1 - b.d1}; }
inline jet1 operator-(const jet1& a) { return {-a.v, -a.d0, -a.d1}; }
inline jet1 operator*(const jet1& a, const jet1& b) {
    return {a.v * b.v, a.d0 * b.v + a.v * b.d0, a.d1 * b.v + a.v * b.d1};
}
inline jet1 operator/(const jet1& a, const jet1& b) {
    const double q = a.v / b.v;
    return {q, (a.d0 - q * b.d0) / b.v, (a.d1 - q * b.d1) / b.v};
}
inline jet1 operator*(double c, const jet1& a) { return {c * a.v, c * a.d0, c * a.d1}; }
inline jet1 operator*(const jet1& a, double c) { return c * a; }
inline jet1 operator+(const jet1& a, double c) { return {a.v + c, a.d0, a.d1}; }
inline jet1 operator+(double c, const jet1& a) { return a + c; }
inline jet1 operator-(const jet1& a, double c) { return {a.v - c, a.d0, a.d1}; }
inline jet1 operator-(double c, const jet1& a) { return {c - a.v, -a.d0, -a.d1}; }
inline jet1 operator/(const jet1& a, double c) { return {a.v / c, a.d0 / c, a.d1 / c}; }
inline jet1 operator/(double c, const jet1& a) { return jet1{c, 0, 0} / a; }

inline jet1 sqrt(const jet1& a) {
    const double s = std::sqrt(a.v);
    return {s, a.d0 / (2 * s), a.d1 / (2 * s)};
}

// ---- jet2 arithmetic -------------------------------------------------------

inline jet2 operator+(const jet2& a, const jet2& b) {
    return {a.v + b.v, a.d0 + b.d0, a.d1 + b.d1, a.d00 + b.d00, a.d01 + b.d01, a.d11 + b.d11};
}
inline jet2 operator-(const jet2& a, const jet2& b) {
    return {a.v - b.v, a.d0 - b.d0, a.d1 - b.d1, a.d00 - b.d00, a.d01 - b.d01, a.d11 - b.d11};
}
inline jet2 operator-(const jet2& a) { return {-a.v, -a.d0, -a.d1, -a.d00, -a.d01, -a.d11}; }
inline jet2 operator*(const jet2& a, const jet2& b) {
    return {a.v * b.v,
            a.d0 * b.v + a.v * b.d0,
            a.d1 * b.v + a.v * b.d1,
            a.d00 * b.v + 2 * a.d0 * b.d0 + a.v * b.d00,
            a.d01 * b.v + a.d0 * b.d1 + a.d1 * b.d0 + a.v * b.d01,
            a.d11 * b.v + 2 * a.d1 * b.d1 + a.v * b.d11};
}
inline jet2 operator/(const jet2& a, const jet2& b) {
    jet2 q;
    q.v = a.v / b.v;
    q.d0 = (a.d0 - q.v * b.d0) / b.v;
    q.d1 = (a.d1 - q.v * b.d1) / b.v;
    q.d00 = (a.d00 - q.v * b.d00 - 2 * q.d0 * b.d0) / b.v;
    q.d01 = (a.d01 - q.v * b.d01 - q.d0 * b.d1 - q.d1 * b.d0) / b.v;
    q.d11 = (a.d11 - q.v * b.d11 - 2 * q.d1 * b.d1) / b.v;
    return q;
}
inline jet2 operator*(double c, const jet2& a) {
    return {c * a.v, c * a.d0, c * a.d1, c * a.d00, c * a.d01, c * a.d11};
}
inline jet2 operator*(const jet2& a, double c) { return c * a; }
inline jet2 operator+(const jet2& a, double c) { jet2 r = a; r.v += c; return r; }
inline jet2 operator+(double c, const jet2& a) { return a + c; }
inline jet2 operator-(const jet2& a, double c) { jet2 r = a; r.v -= c; return r; }
inline jet2 operator-(double c, const jet2& a) { return -(a - c); }
inline jet2 operator/(const jet2& a, double c) { return a * (1.0 / c); }
inline jet2 operator/(double c, const jet2& a) { return jet2{c, 0, 0, 0, 0, 0} / a; }

inline jet2 sqrt(const jet2& a) {
    jet2 s;
    s.v = std::sqrt(a.v);
    s.d0 = a.d0 / (2 * s.v);
    s.d1 = a.d1 / (2 * s.v);
    // from a = s*s: a.dij = 2 s.di s.dj + 2 s.v s.dij
    s.d00 = (a.d00 - 2 * s.d0 * s.d0) / (2 * s.v);
    s.d01 = (a.d01 - 2 * s.d0 * s.d1) / (2 * s.v);
    s.d11 = (a.d11 - 2 * s.d1 * s.d1) / (2 * s.v);
    return s;
}

// ---- slicing ---------------------------------------------------------------

/// The (value, gradient) part of a second-order jet.
inline jet1 value_jet(const jet2& a) { return {a.v, a.d0, a.d1}; }

/// First-order jet of the partial derivative d_axis(f), extracted from the
/// second-order jet of f.
inline jet1 derivative_jet(const jet2& a, int axis) {
    if (axis == 0) return {a.d0, a.d00, a.d01};
    if (axis == 1) return {a.d1, a.d01, a.d11};
    if (axis == 2) return {0, 0, 0};
    throw chart_error("derivative_jet: axis out of range");
}

/// Constant jets.
inline jet1 const_jet1(double c) { return {c, 0, 0}; }
inline jet2 const_jet2(double c) { return {c, 0, 0, 0, 0, 0}; }

} // namespace cskk
