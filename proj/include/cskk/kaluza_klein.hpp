#pragma once
// The adiabatic metric family on (base surface) x (circle fiber): assembly of
// the 3d metric from 2d data (h, phi, epsilon), its closed-form inverse, the
// invariant field strength of phi, the base covariant derivative of phi, and
// the closed-form Christoffel symbols (five index families). Every closed
// form here is cross-checked in tests against the generic definitions in
// connection.hpp.

#include <array>
#include <cmath>

#include "cskk/chart.hpp"
#include "cskk/connection.hpp"
#include "cskk/errors.hpp"
#include "cskk/field.hpp"
#include "cskk/jet.hpp"
#include "cskk/linalg.hpp"

namespace cskk {

/// The 2d data defining the metric family
///   G = [ h + eps*phi phi^T , eps*phi ; eps*phi^T , eps ]
/// together with the fiber circumference (volume of the x2 circle).
struct kk_data {
    metric_field2 h;
    oneform_field2 phi;
    double epsilon = 1.0;
    double fiber_volume = 2.0 * pi;

    deriv_mode natural_mode() const {
        const bool analytic = h.c00.has_gradient() && h.c01.has_gradient() && h.c11.has_gradient() &&
                              phi.comp[0].has_gradient() && phi.comp[1].has_gradient();
        return analytic ? deriv_mode::analytic : deriv_mode::finite_difference;
    }
};

inline void validate(const kk_data& kk) {
    if (!(kk.epsilon > 0)) throw config_error("kk_data: epsilon must be > 0");
    if (!(kk.fiber_volume > 0)) throw config_error("kk_data: fiber_volume must be > 0");
}

/// Metric and closed-form inverse at a point.
struct metric3_pair {
    sym3 G;
    sym3 Ginv;
};

/// Assemble G and its closed-form inverse
///   Ginv = [ h^{-1} , -h^{-1} phi ; -phi^T h^{-1} , 1/eps + phi^T h^{-1} phi ].
inline metric3_pair assemble_metric(const kk_data& kk, vec2 x) {
    validate(kk);
    const sym2 h = kk.h.value(x);
    const sym2 hinv = invert_symmetric(h);
    const vec2 p = kk.phi.value(x);
    const double e = kk.epsilon;

    metric3_pair m;
    m.G.a00 = h.a00 + e * p[0] * p[0];
    m.G.a01 = h.a01 + e * p[0] * p[1];
    m.G.a11 = h.a11 + e * p[1] * p[1];
    m.G.a02 = e * p[0];
    m.G.a12 = e * p[1];
    m.G.a22 = e;

    const vec2 hp = {hinv.a00 * p[0] + hinv.a01 * p[1], hinv.a01 * p[0] + hinv.a11 * p[1]};
    m.Ginv.a00 = hinv.a00;
    m.Ginv.a01 = hinv.a01;
    m.Ginv.a11 = hinv.a11;
    m.Ginv.a02 = -hp[0];
    m.Ginv.a12 = -hp[1];
    m.Ginv.a22 = 1.0 / e + p[0] * hp[0] + p[1] * hp[1];
    return m;
}

/// View the assembled metric as a generic 3d metric field (components with
/// exact gradients derived from the 2d data by the product rule), suitable
/// for the generic Christoffel / spin-connection routes. `mode` selects how
/// the underlying 2d data is differentiated. The optional base chart is
/// extended by a periodic fiber axis for finite-difference consumers.
inline metric_field3 assemble_metric_field(const kk_data& kk, deriv_mode mode,
                                           std::optional<chart_domain> base_chart = std::nullopt) {
    validate(kk);
    std::optional<chart_domain> chart3;
    if (base_chart) {
        chart3 = chart_domain(3, {base_chart->lo[0], base_chart->lo[1], 0.0},
                              {base_chart->hi[0], base_chart->hi[1], 2.0 * pi},
                              {base_chart->periodic[0], base_chart->periodic[1], true});
    }

    const metric_field2 h = kk.h;
    const oneform_field2 phi = kk.phi;
    const double e = kk.epsilon;

    // component jets of G as functions of the base point
    auto comp_jet = [h, phi, e, mode](int i, int j, vec2 x) -> jet1 {
        auto hj = [&](int a, int b) {
            return eval_jet1((a == 0 && b == 0) ? h.c00 : (a == 1 && b == 1) ? h.c11 : h.c01, x, mode);
        };
        auto pj = [&](int a) { return eval_jet1(phi.comp[a], x, mode); };
        if (i == 2 && j == 2) return const_jet1(e);
        if (j == 2) return e * pj(i);
        if (i == 2) return e * pj(j);
        return hj(i, j) + e * (pj(i) * pj(j));
    };

    metric_field3 G;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            scalar_field3 f;
            f.chart = chart3;
            f.value = [comp_jet, i, j](vec3 q) { return comp_jet(i, j, {q[0], q[1]}).v; };
            f.gradient = [comp_jet, i, j](vec3 q) {
                const jet1 cj = comp_jet(i, j, {q[0], q[1]});
                return vec3{cj.d0, cj.d1, 0.0};
            };
            G.comp[metric_field3::index(i, j)] = f;
        }
    return G;
}

/// Antisymmetric curl of phi and the invariant scalar f with
/// f_{01} = sqrt(det h) * f.
struct field_strength_result {
    mat2 f_ab;  ///< f_{alpha beta}
    double f;   ///< invariant scalar
};

inline field_strength_result field_strength(const kk_data& kk, vec2 x, deriv_mode mode) {
    const double d0p1 = partial_derivative(kk.phi.comp[1], 0, x, mode);
    const double d1p0 = partial_derivative(kk.phi.comp[0], 1, x, mode);
    const double f01 = d0p1 - d1p0;
    const double sqrt_h = std::sqrt(kk.h.value(x).det());
    field_strength_result r;
    r.f_ab = {{{0.0, f01}, {-f01, 0.0}}};
    r.f = f01 / sqrt_h;
    return r;
}

inline field_strength_result field_strength(const kk_data& kk, vec2 x) {
    return field_strength(kk, x, kk.natural_mode());
}

/// Invariant field strength as a first-order jet (exact derivatives of f).
inline jet1 field_strength_jet(const kk_data& kk, vec2 x, deriv_mode mode) {
    const jet2 p0 = eval_jet2(kk.phi.comp[0], x, mode);
    const jet2 p1 = eval_jet2(kk.phi.comp[1], x, mode);
    const jet1 f01 = derivative_jet(p1, 0) - derivative_jet(p0, 1);
    const sym2_jet2 hj = kk.h.jets2(x, mode);
    const jet1 sqrt_h = value_jet(sqrt(det(hj)));
    return f01 / sqrt_h;
}

/// Base covariant derivative D_alpha phi_beta = d_alpha phi_beta - gamma^zeta_{alpha beta} phi_zeta.
inline mat2 covariant_derivative_oneform(const kk_data& kk, vec2 x, deriv_mode mode) {
    const christoffel2 gam = christoffel_generic(kk.h, x, mode);
    const vec2 p = kk.phi.value(x);
    mat2 D;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            double v = partial_derivative(kk.phi.comp[b], a, x, mode);
            for (int z = 0; z < 2; ++z) v -= gam(z, a, b) * p[z];
            D[a][b] = v;
        }
    return D;
}

inline mat2 covariant_derivative_oneform(const kk_data& kk, vec2 x) {
    return covariant_derivative_oneform(kk, x, kk.natural_mode());
}

/// Closed-form Christoffel symbols of the assembled metric, built from the
/// five index families (base-base, fiber component of base-base, mixed, fiber
/// row of mixed, fiber-fiber):
///   Gamma^d_{ab} = gamma^d_{ab} - (e/2) h^{dz}(phi_b f_{za} + phi_a f_{zb})
///   Gamma^2_{ab} = (D_a phi_b + D_b phi_a)/2 + (e/2) phi^z (phi_b f_{za} + phi_a f_{zb})
///   Gamma^d_{2b} = (e/2) h^{dz} f_{bz}
///   Gamma^2_{2b} = (e/2) phi^z f_{zb}
///   Gamma^d_{22} = Gamma^2_{22} = 0.
inline christoffel3 christoffel_closed_form(const kk_data& kk, vec2 x, deriv_mode mode) {
    validate(kk);
    const double e = kk.epsilon;
    const sym2 h = kk.h.value(x);
    const sym2 hinv = invert_symmetric(h);
    const vec2 p = kk.phi.value(x);
    const christoffel2 gam = christoffel_generic(kk.h, x, mode);
    const field_strength_result fs = field_strength(kk, x, mode);
    const mat2 D = covariant_derivative_oneform(kk, x, mode);
    const vec2 pup = {hinv.a00 * p[0] + hinv.a01 * p[1], hinv.a01 * p[0] + hinv.a11 * p[1]};

    christoffel3 out;
    // family: base-base lower indices
    for (int a = 0; a < 2; ++a)
        for (int b = a; b < 2; ++b) {
            double mix[2];
            for (int z = 0; z < 2; ++z) mix[z] = p[b] * fs.f_ab[z][a] + p[a] * fs.f_ab[z][b];
            for (int d = 0; d < 2; ++d) {
                double v = gam(d, a, b);
                for (int z = 0; z < 2; ++z) v -= 0.5 * e * hinv(d, z) * mix[z];
                out.at(d, a, b) = v;
            }
            double v2 = 0.5 * (D[a][b] + D[b][a]);
            for (int z = 0; z < 2; ++z) v2 += 0.5 * e * pup[z] * mix[z];
            out.at(2, a, b) = v2;
        }
    // family: one fiber lower index
    for (int b = 0; b < 2; ++b) {
        for (int d = 0; d < 2; ++d) {
            double v = 0;
            for (int z = 0; z < 2; ++z) v += 0.5 * e * hinv(d, z) * fs.f_ab[b][z];
            out.at(d, 2, b) = v;
        }
        double v2 = 0;
        for (int z = 0; z < 2; ++z) v2 += 0.5 * e * pup[z] * fs.f_ab[z][b];
        out.at(2, 2, b) = v2;
    }
    // family: both lower indices on the fiber
    out.at(0, 2, 2) = 0.0;
    out.at(1, 2, 2) = 0.0;
    out.at(2, 2, 2) = 0.0;
    return out;
}

inline christoffel3 christoffel_closed_form(const kk_data& kk, vec2 x) {
    return christoffel_closed_form(kk, x, kk.natural_mode());
}

} // namespace cskk
