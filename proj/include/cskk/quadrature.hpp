#pragma once
// Tensor-product quadrature on rectangular charts: Gauss-Legendre on
// non-periodic axes (nodes strictly interior, so coordinate degenerations at
// chart edges are never sampled) and the trapezoid rule on periodic axes
// (spectrally accurate for smooth periodic integrands). Error estimates come
// from re-integrating with the point counts multiplied by the refinement
// factor.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "cskk/chart.hpp"
#include "cskk/errors.hpp"
#include "cskk/linalg.hpp"

namespace cskk {

enum class axis_rule { gauss_legendre, periodic_trapezoid };

struct quadrature_spec {
    std::array<axis_rule, 2> rule{axis_rule::gauss_legendre, axis_rule::gauss_legendre};
    std::array<int, 2> points{64, 64};
    int refine = 2; ///< factor applied to the point counts for the error pass

    quadrature_spec() = default;
    quadrature_spec(axis_rule r0, int n0, axis_rule r1, int n1, int refine_ = 2)
        : rule{r0, r1}, points{n0, n1}, refine(refine_) {}
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// computed by Newton iteration on the Legendre polynomial.
inline void gauss_legendre_rule(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess for the i-th positive root.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            // evaluate P_n and P'_n by the three-term recurrence
            double p0 = 1.0, p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2 * k + 1) * x * p1 - k * p2) / (k + 1);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

namespace detail {

struct axis_points {
    std::vector<double> x, w;
};

inline axis_points build_axis(axis_rule rule, int n, double lo, double hi, bool periodic) {
    if (n < 4) throw quadrature_error("quadrature_spec: point count must be >= 4");
    axis_points ap;
    const double L = hi - lo;
    if (rule == axis_rule::periodic_trapezoid) {
        if (!periodic)
            throw quadrature_error("periodic-trapezoid rule requested on a non-periodic axis");
        ap.x.resize(n);
        ap.w.assign(n, L / n);
        for (int k = 0; k < n; ++k) ap.x[k] = lo + L * k / n;
    } else {
        std::vector<double> gx, gw;
        gauss_legendre_rule(n, gx, gw);
        ap.x.resize(n);
        ap.w.resize(n);
        for (int k = 0; k < n; ++k) {
            ap.x[k] = lo + 0.5 * L * (gx[k] + 1.0);
            ap.w[k] = 0.5 * L * gw[k];
        }
    }
    return ap;
}

inline double tensor_integrate(const std::function<double(vec2)>& f, const chart_domain& dom,
                               const quadrature_spec& spec, int n0, int n1) {
    const axis_points a0 =
        build_axis(spec.rule[0], n0, dom.lo[0], dom.hi[0], dom.is_periodic(0));
    const axis_points a1 =
        build_axis(spec.rule[1], n1, dom.lo[1], dom.hi[1], dom.is_periodic(1));
    double sum = 0;
    for (std::size_t i = 0; i < a0.x.size(); ++i) {
        double row = 0;
        for (std::size_t j = 0; j < a1.x.size(); ++j) {
            const double v = f({a0.x[i], a1.x[j]});
            if (!std::isfinite(v))
                throw quadrature_error("integrate_chart: non-finite integrand sample");
            row += a1.w[j] * v;
        }
        sum += a0.w[i] * row;
    }
    return sum;
}

} // namespace detail

struct integral_result {
    double value = 0;          ///< refined-pass value
    double error_estimate = 0; ///< |refined - base|
};

/// Integrate a scalar function over a 2d chart. The returned value is the
/// refined pass; the error estimate is the difference from the base pass.
inline integral_result integrate_chart(const std::function<double(vec2)>& f,
                                       const chart_domain& dom, const quadrature_spec& spec) {
    if (dom.dim != 2) throw quadrature_error("integrate_chart: expected a 2d chart");
    if (spec.refine < 2) throw quadrature_error("quadrature_spec: refinement factor must be >= 2");
    const double base = detail::tensor_integrate(f, dom, spec, spec.points[0], spec.points[1]);
    const double fine = detail::tensor_integrate(f, dom, spec, spec.refine * spec.points[0],
                                                 spec.refine * spec.points[1]);
    return {fine, std::abs(fine - base)};
}

} // namespace cskk
