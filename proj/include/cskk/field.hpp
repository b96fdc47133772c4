#pragma once
// Evaluatable fields on a chart: scalar, one-form, and symmetric-matrix
// valued, in 2 or 3 coordinates. A field carries its value closure and,
// optionally, caller-supplied exact first/second partials ("analytic" mode).
// When exact partials are absent, 4th-order central finite differences are
// used ("finite-difference" mode). Fields of the reduction data live on the
// 2d base chart and never depend on the fiber coordinate x2: any derivative
// along axis 2 is identically zero.

#include <array>
#include <cmath>
#include <functional>
#include <optional>

#include "cskk/chart.hpp"
#include "cskk/errors.hpp"
#include "cskk/jet.hpp"
#include "cskk/linalg.hpp"

namespace cskk {

enum class deriv_mode { analytic, finite_difference };

namespace detail {

/// Relative default step for 4th-order central differences.
inline constexpr double fd_default_step = 1e-4;

/// 4th-order central difference of a 1d callable.
template <class F>
double central4(F&& f, double x, double s) {
    const double num = -f(x + 2 * s) + 8 * f(x + s) - 8 * f(x - s) + f(x - 2 * s);
    const double d = num / (12 * s);
    if (!std::isfinite(d)) throw derivative_error("finite difference produced a non-finite value");
    return d;
}

} // namespace detail

// ---------------------------------------------------------------------------
// scalar field in two coordinates
// ---------------------------------------------------------------------------

struct scalar_field2 {
    std::function<double(vec2)> value;
    std::function<vec2(vec2)> gradient;                  ///< optional exact (d0, d1)
    std::function<std::array<double, 3>(vec2)> hessian;  ///< optional exact (d00, d01, d11)
    std::optional<chart_domain> chart;                   ///< for FD wrapping / boundary checks
    double fd_step = 0;                                  ///< 0 = auto (relative to axis length)

    bool has_gradient() const { return static_cast<bool>(gradient); }
    bool has_hessian() const { return static_cast<bool>(hessian); }

    double operator()(vec2 x) const {
        const double v = value(x);
        if (!std::isfinite(v)) throw derivative_error("scalar_field2: non-finite field value");
        return v;
    }
};

/// A constant scalar field (no chart).
inline scalar_field2 constant_field2(double c) {
    scalar_field2 f;
    f.value = [c](vec2) { return c; };
    f.gradient = [](vec2) { return vec2{0, 0}; };
    f.hessian = [](vec2) { return std::array<double, 3>{0, 0, 0}; };
    return f;
}

namespace detail {

inline double fd_axis_step(const scalar_field2& f, int axis) {
    if (f.fd_step > 0) return f.fd_step;
    const double scale = f.chart ? f.chart->length(axis) : 1.0;
    return fd_default_step * scale;
}

/// Check that a 4th-order stencil of half-width 2*s fits the chart on a
/// non-periodic axis.
inline void fd_check_boundary(const scalar_field2& f, int axis, double x, double s) {
    if (!f.chart || f.chart->is_periodic(axis)) return;
    if (x - 2 * s < f.chart->lo[axis] || x + 2 * s > f.chart->hi[axis])
        throw derivative_error("finite-difference stencil leaves the chart on a non-periodic axis");
}

inline double fd_partial2(const scalar_field2& f, int axis, vec2 x, double step) {
    const double s = (step > 0) ? step : fd_axis_step(f, axis);
    fd_check_boundary(f, axis, x[axis], s);
    auto g = [&](double t) {
        vec2 p = x;
        p[axis] = f.chart ? f.chart->wrap(axis, t) : t;
        return f.value(p);
    };
    return central4(g, x[axis], s);
}

} // namespace detail

/// Partial derivative of a 2d scalar field along an axis. Axis 2 (fiber)
/// returns exactly 0. Analytic mode requires a caller-supplied gradient.
inline double partial_derivative(const scalar_field2& f, int axis, vec2 x, deriv_mode mode,
                                 double step = 0) {
    if (axis == 2) return 0.0;
    if (axis < 0 || axis > 2) throw chart_error("partial_derivative: axis out of range");
    if (mode == deriv_mode::analytic) {
        if (!f.has_gradient())
            throw derivative_error("partial_derivative: analytic mode requested but no exact gradient supplied");
        return f.gradient(x)[axis];
    }
    return detail::fd_partial2(f, axis, x, step);
}

/// Partial derivative choosing analytic mode when available.
inline double partial_derivative(const scalar_field2& f, int axis, vec2 x) {
    return partial_derivative(f, axis, x,
                              f.has_gradient() ? deriv_mode::analytic : deriv_mode::finite_difference);
}

/// First-order jet of a scalar field (exact when analytic, FD otherwise).
inline jet1 eval_jet1(const scalar_field2& f, vec2 x, deriv_mode mode) {
    jet1 j;
    j.v = f(x);
    if (mode == deriv_mode::analytic && f.has_gradient()) {
        const vec2 g = f.gradient(x);
        j.d0 = g[0];
        j.d1 = g[1];
    } else {
        j.d0 = detail::fd_partial2(f, 0, x, 0);
        j.d1 = detail::fd_partial2(f, 1, x, 0);
    }
    return j;
}

/// Second-order jet. In finite-difference mode the second partials nest the
/// first-derivative operator (derivative of the FD derivative).
inline jet2 eval_jet2(const scalar_field2& f, vec2 x, deriv_mode mode) {
    jet2 j;
    const jet1 j1 = eval_jet1(f, x, mode);
    j.v = j1.v;
    j.d0 = j1.d0;
    j.d1 = j1.d1;
    if (mode == deriv_mode::analytic && f.has_hessian()) {
        const auto h = f.hessian(x);
        j.d00 = h[0];
        j.d01 = h[1];
        j.d11 = h[2];
    } else {
        auto dfi = [&](int axis, vec2 p) { return detail::fd_partial2(f, axis, p, 0); };
        auto nest = [&](int outer, int inner) {
            const double s = detail::fd_axis_step(f, outer);
            detail::fd_check_boundary(f, outer, x[outer], 3 * s); // inner stencil needs margin too
            auto g = [&](double t) {
                vec2 p = x;
                p[outer] = f.chart ? f.chart->wrap(outer, t) : t;
                return dfi(inner, p);
            };
            return detail::central4(g, x[outer], s);
        };
        j.d00 = nest(0, 0);
        j.d01 = nest(0, 1);
        j.d11 = nest(1, 1);
    }
    return j;
}

inline deriv_mode natural_mode(const scalar_field2& f) {
    return f.has_gradient() ? deriv_mode::analytic : deriv_mode::finite_difference;
}

// ---------------------------------------------------------------------------
// aggregates on the base chart: one-forms and symmetric 2x2 metric fields
// ---------------------------------------------------------------------------

struct oneform_field2 {
    std::array<scalar_field2, 2> comp;

    vec2 value(vec2 x) const { return {comp[0](x), comp[1](x)}; }
};

/// Jets of the three independent components of a symmetric 2x2 field.
struct sym2_jet2 {
    jet2 a00, a01, a11;
    jet2 operator()(int i, int j) const { return (i == 0 && j == 0) ? a00 : (i == 1 && j == 1) ? a11 : a01; }
};
struct sym2_jet1 {
    jet1 a00, a01, a11;
    jet1 operator()(int i, int j) const { return (i == 0 && j == 0) ? a00 : (i == 1 && j == 1) ? a11 : a01; }
};

inline jet2 det(const sym2_jet2& h) { return h.a00 * h.a11 - h.a01 * h.a01; }
inline jet1 det(const sym2_jet1& h) { return h.a00 * h.a11 - h.a01 * h.a01; }

/// Inverse of a symmetric 2x2 jet matrix (propagates derivatives of h^{ab}).
inline sym2_jet2 invert(const sym2_jet2& h) {
    const jet2 d = det(h);
    if (!(d.v > 0) || !(h.a00.v > 0))
        throw singular_metric_error("sym2_jet2: matrix not positive definite");
    return {h.a11 / d, -(h.a01 / d), h.a00 / d};
}
inline sym2_jet1 invert(const sym2_jet1& h) {
    const jet1 d = det(h);
    if (!(d.v > 0) || !(h.a00.v > 0))
        throw singular_metric_error("sym2_jet1: matrix not positive definite");
    return {h.a11 / d, -(h.a01 / d), h.a00 / d};
}

inline sym2_jet1 value_jet(const sym2_jet2& h) {
    return {value_jet(h.a00), value_jet(h.a01), value_jet(h.a11)};
}

struct metric_field2 {
    scalar_field2 c00, c01, c11;

    sym2 value(vec2 x) const { return sym2{c00(x), c01(x), c11(x)}; }

    sym2_jet1 jets1(vec2 x, deriv_mode mode) const {
        return {eval_jet1(c00, x, mode), eval_jet1(c01, x, mode), eval_jet1(c11, x, mode)};
    }
    sym2_jet2 jets2(vec2 x, deriv_mode mode) const {
        return {eval_jet2(c00, x, mode), eval_jet2(c01, x, mode), eval_jet2(c11, x, mode)};
    }
    deriv_mode natural_mode() const {
        return (c00.has_gradient() && c01.has_gradient() && c11.has_gradient())
                   ? deriv_mode::analytic
                   : deriv_mode::finite_difference;
    }
};

// ---------------------------------------------------------------------------
// scalar field in three coordinates (for generic 3d metric fields)
// ---------------------------------------------------------------------------

struct scalar_field3 {
    std::function<double(vec3)> value;
    std::function<vec3(vec3)> gradient; ///< optional exact (d0, d1, d2)
    std::optional<chart_domain> chart;
    double fd_step = 0;

    bool has_gradient() const { return static_cast<bool>(gradient); }

    double operator()(vec3 x) const {
        const double v = value(x);
        if (!std::isfinite(v)) throw derivative_error("scalar_field3: non-finite field value");
        return v;
    }
};

namespace detail {

inline double fd_partial3(const scalar_field3& f, int axis, vec3 x, double step) {
    double scale = 1.0;
    bool periodic = false;
    if (f.chart && axis < f.chart->dim) {
        scale = f.chart->length(axis);
        periodic = f.chart->is_periodic(axis);
    }
    const double s = (step > 0) ? step : (f.fd_step > 0 ? f.fd_step : fd_default_step * scale);
    if (f.chart && axis < f.chart->dim && !periodic) {
        if (x[axis] - 2 * s < f.chart->lo[axis] || x[axis] + 2 * s > f.chart->hi[axis])
            throw derivative_error("finite-difference stencil leaves the chart on a non-periodic axis");
    }
    auto g = [&](double t) {
        vec3 p = x;
        p[axis] = (f.chart && axis < f.chart->dim) ? f.chart->wrap(axis, t) : t;
        return f.value(p);
    };
    return central4(g, x[axis], s);
}

} // namespace detail

inline double partial_derivative(const scalar_field3& f, int axis, vec3 x, deriv_mode mode,
                                 double step = 0) {
    if (axis < 0 || axis > 2) throw chart_error("partial_derivative: axis out of range");
    if (mode == deriv_mode::analytic) {
        if (!f.has_gradient())
            throw derivative_error("partial_derivative: analytic mode requested but no exact gradient supplied");
        return f.gradient(x)[axis];
    }
    return detail::fd_partial3(f, axis, x, step);
}

inline double partial_derivative(const scalar_field3& f, int axis, vec3 x) {
    return partial_derivative(f, axis, x,
                              f.has_gradient() ? deriv_mode::analytic : deriv_mode::finite_difference);
}

struct metric_field3 {
    // components in row-major symmetric order: 00, 01, 02, 11, 12, 22
    std::array<scalar_field3, 6> comp;

    static int index(int i, int j) {
        if (i > j) std::swap(i, j);
        if (i == 0) return j;          // 00->0, 01->1, 02->2
        if (i == 1) return 2 + j;      // 11->3, 12->4
        return 5;                      // 22->5
    }

    sym3 value(vec3 x) const {
        sym3 g;
        g.a00 = comp[0](x); g.a01 = comp[1](x); g.a02 = comp[2](x);
        g.a11 = comp[3](x); g.a12 = comp[4](x); g.a22 = comp[5](x);
        return g;
    }

    /// d_axis of every component, as a symmetric matrix.
    sym3 gradient(int axis, vec3 x, deriv_mode mode) const {
        sym3 g;
        g.a00 = partial_derivative(comp[0], axis, x, mode);
        g.a01 = partial_derivative(comp[1], axis, x, mode);
        g.a02 = partial_derivative(comp[2], axis, x, mode);
        g.a11 = partial_derivative(comp[3], axis, x, mode);
        g.a12 = partial_derivative(comp[4], axis, x, mode);
        g.a22 = partial_derivative(comp[5], axis, x, mode);
        return g;
    }

    deriv_mode natural_mode() const {
        for (const auto& c : comp)
            if (!c.has_gradient()) return deriv_mode::finite_difference;
        return deriv_mode::analytic;
    }
};

} // namespace cskk
