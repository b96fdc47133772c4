#pragma once
// Geometry presets: the round-sphere circle bundle ("hopf"), its finite
// quotients ("lens", fiber volume divided by the order p), a seeded random
// periodic torus model ("torus-random", the closed chart on which the exact
// term integrates to zero exactly), and the trivial product ("product-flat").
// All presets ship exact first and second partials, so every derivative in
// the pipeline is analytic.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cskk/chart.hpp"
#include "cskk/errors.hpp"
#include "cskk/field.hpp"
#include "cskk/kaluza_klein.hpp"
#include "cskk/quadrature.hpp"

namespace cskk {

enum class preset_kind { hopf, lens, torus_random, product_flat };

inline preset_kind parse_preset_name(const std::string& name) {
    if (name == "hopf") return preset_kind::hopf;
    if (name == "lens") return preset_kind::lens;
    if (name == "torus-random") return preset_kind::torus_random;
    if (name == "product-flat") return preset_kind::product_flat;
    throw config_error("unknown preset '" + name + "' (expected hopf|lens|torus-random|product-flat)");
}

inline std::string preset_name(preset_kind k) {
    switch (k) {
        case preset_kind::hopf: return "hopf";
        case preset_kind::lens: return "lens";
        case preset_kind::torus_random: return "torus-random";
        default: return "product-flat";
    }
}

struct preset_spec {
    preset_kind kind = preset_kind::hopf;
    double radius = 0.5;          ///< base sphere radius (hopf/lens)
    int lens_p = 2;               ///< quotient order (lens only, >= 1)
    std::uint64_t seed = 12345;   ///< torus-random reproducibility seed
    int grid0 = 64, grid1 = 64;   ///< quadrature resolution
    double epsilon = 1.0;
    std::vector<double> eps_grid = {1.0, 0.5, 0.25, 0.1, 0.01, 1e-4};
    std::optional<double> fiber_volume; ///< override; default by preset

    void validate() const {
        if (!(radius > 0)) throw config_error("preset: radius must be > 0");
        if (lens_p < 1) throw config_error("preset: lens order p must be >= 1");
        if (grid0 < 4 || grid1 < 4) throw config_error("preset: grid must be at least 4x4");
        if (!(epsilon > 0)) throw config_error("preset: epsilon must be > 0");
        if (fiber_volume && !(*fiber_volume > 0))
            throw config_error("preset: fiber volume must be > 0");
    }
};

struct preset {
    std::string name;
    kk_data kk;
    chart_domain chart;
    quadrature_spec quad;
};

// ---------------------------------------------------------------------------
// deterministic random stream (splitmix64) and periodic trig polynomials
// ---------------------------------------------------------------------------

struct splitmix64 {
    std::uint64_t state;
    explicit splitmix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    /// uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    /// uniform in [-1, 1]
    double symmetric() { return 2.0 * uniform() - 1.0; }
};

namespace detail {

/// Truncated Fourier series sum_j a_j cos(k_j . x) + b_j sin(k_j . x) with
/// exact gradient and Hessian closures.
struct trig_mode {
    double k0, k1, a, b;
};

inline scalar_field2 trig_poly_field(std::vector<trig_mode> modes, chart_domain chart) {
    scalar_field2 f;
    f.chart = chart;
    f.value = [modes](vec2 x) {
        double s = 0;
        for (const auto& m : modes) {
            const double t = m.k0 * x[0] + m.k1 * x[1];
            s += m.a * std::cos(t) + m.b * std::sin(t);
        }
        return s;
    };
    f.gradient = [modes](vec2 x) {
        vec2 g{0, 0};
        for (const auto& m : modes) {
            const double t = m.k0 * x[0] + m.k1 * x[1];
            const double d = -m.a * std::sin(t) + m.b * std::cos(t);
            g[0] += m.k0 * d;
            g[1] += m.k1 * d;
        }
        return g;
    };
    f.hessian = [modes](vec2 x) {
        std::array<double, 3> h{0, 0, 0};
        for (const auto& m : modes) {
            const double t = m.k0 * x[0] + m.k1 * x[1];
            const double dd = -m.a * std::cos(t) - m.b * std::sin(t);
            h[0] += m.k0 * m.k0 * dd;
            h[1] += m.k0 * m.k1 * dd;
            h[2] += m.k1 * m.k1 * dd;
        }
        return h;
    };
    return f;
}

/// Draw a periodic perturbation with total coefficient mass exactly `amplitude`.
inline scalar_field2 random_trig_field(splitmix64& rng, double amplitude,
                                       const chart_domain& chart, double offset = 0.0) {
    static constexpr double wave[8][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1},
                                          {2, 0}, {0, 2}, {2, 1}, {1, 2}};
    std::vector<trig_mode> modes;
    double mass = 0;
    for (const auto& w : wave) {
        trig_mode m{w[0], w[1], rng.symmetric(), rng.symmetric()};
        mass += std::abs(m.a) + std::abs(m.b);
        modes.push_back(m);
    }
    const double scale = (mass > 0) ? amplitude / mass : 0.0;
    for (auto& m : modes) {
        m.a *= scale;
        m.b *= scale;
    }
    if (offset != 0.0) modes.push_back(trig_mode{0, 0, offset, 0});
    return trig_poly_field(std::move(modes), chart);
}

} // namespace detail

// ---------------------------------------------------------------------------
// preset construction
// ---------------------------------------------------------------------------

inline preset build_preset(const preset_spec& spec) {
    spec.validate();
    preset P;
    P.name = preset_name(spec.kind);

    switch (spec.kind) {
        case preset_kind::hopf:
        case preset_kind::lens: {
            const double R = spec.radius;
            const double R2 = R * R;
            // polar chart on the round sphere of radius R; azimuth periodic
            P.chart = chart_domain::make2(0.0, pi, false, 0.0, 2 * pi, true);

            scalar_field2 h00 = constant_field2(R2);
            h00.chart = P.chart;
            scalar_field2 h01 = constant_field2(0.0);
            h01.chart = P.chart;
            scalar_field2 h11;
            h11.chart = P.chart;
            h11.value = [R2](vec2 x) { const double s = std::sin(x[0]); return R2 * s * s; };
            h11.gradient = [R2](vec2 x) {
                return vec2{2 * R2 * std::sin(x[0]) * std::cos(x[0]), 0.0};
            };
            h11.hessian = [R2](vec2 x) {
                const double c2 = std::cos(2 * x[0]);
                return std::array<double, 3>{2 * R2 * c2, 0.0, 0.0};
            };
            scalar_field2 p0 = constant_field2(0.0);
            p0.chart = P.chart;
            // phi_1 = -R^2 cos(x0): its curl equals the area density, so the
            // invariant field strength is identically 1.
            scalar_field2 p1;
            p1.chart = P.chart;
            p1.value = [R2](vec2 x) { return -R2 * std::cos(x[0]); };
            p1.gradient = [R2](vec2 x) { return vec2{R2 * std::sin(x[0]), 0.0}; };
            p1.hessian = [R2](vec2 x) {
                return std::array<double, 3>{R2 * std::cos(x[0]), 0.0, 0.0};
            };

            P.kk.h = metric_field2{h00, h01, h11};
            P.kk.phi = oneform_field2{{p0, p1}};
            const int p = (spec.kind == preset_kind::lens) ? spec.lens_p : 1;
            P.kk.fiber_volume = spec.fiber_volume.value_or(2 * pi / p);
            P.quad = quadrature_spec(axis_rule::gauss_legendre, spec.grid0,
                                     axis_rule::periodic_trapezoid, spec.grid1);
            break;
        }
        case preset_kind::torus_random: {
            P.chart = chart_domain::make2(0.0, 2 * pi, true, 0.0, 2 * pi, true);
            splitmix64 rng(spec.seed);
            // metric perturbation mass 0.15 per component keeps the smallest
            // eigenvalue of h above 0.7 (diagonal dominance), hence SPD.
            scalar_field2 h00 = detail::random_trig_field(rng, 0.15, P.chart, 1.0);
            scalar_field2 h01 = detail::random_trig_field(rng, 0.15, P.chart, 0.0);
            scalar_field2 h11 = detail::random_trig_field(rng, 0.15, P.chart, 1.0);
            scalar_field2 p0 = detail::random_trig_field(rng, 0.25, P.chart, 0.0);
            scalar_field2 p1 = detail::random_trig_field(rng, 0.25, P.chart, 0.0);
            P.kk.h = metric_field2{h00, h01, h11};
            P.kk.phi = oneform_field2{{p0, p1}};
            P.kk.fiber_volume = spec.fiber_volume.value_or(2 * pi);
            P.quad = quadrature_spec(axis_rule::periodic_trapezoid, spec.grid0,
                                     axis_rule::periodic_trapezoid, spec.grid1);
            break;
        }
        case preset_kind::product_flat: {
            P.chart = chart_domain::make2(0.0, 2 * pi, true, 0.0, 2 * pi, true);
            auto c = [&](double v) {
                scalar_field2 f = constant_field2(v);
                f.chart = P.chart;
                return f;
            };
            P.kk.h = metric_field2{c(1.0), c(0.0), c(1.0)};
            P.kk.phi = oneform_field2{{c(0.0), c(0.0)}};
            P.kk.fiber_volume = spec.fiber_volume.value_or(2 * pi);
            P.quad = quadrature_spec(axis_rule::periodic_trapezoid, spec.grid0,
                                     axis_rule::periodic_trapezoid, spec.grid1);
            break;
        }
    }
    P.kk.epsilon = spec.epsilon;
    return P;
}

/// A uniformly random interior sample point of the chart (margin keeps
/// Gauss-Legendre-style open axes away from coordinate degenerations).
inline vec2 sample_point(const chart_domain& dom, splitmix64& rng, double margin = 0.05) {
    vec2 x{};
    for (int a = 0; a < 2; ++a) {
        const double L = dom.length(a);
        if (dom.is_periodic(a)) {
            x[a] = dom.lo[a] + rng.uniform() * L;
        } else {
            x[a] = dom.lo[a] + (margin + rng.uniform() * (1 - 2 * margin)) * L;
        }
    }
    return x;
}

} // namespace cskk
