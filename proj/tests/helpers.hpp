#pragma once
// Shared test fixtures: deterministic random geometries and a tolerance-
// carrying comparison macro.

#include <cmath>
#include <cstdint>

#include <catch2/catch_amalgamated.hpp>

#include <cskk/cskk.hpp>

#define CHECK_CLOSE(lhs, rhs, tol)                                        \
    do {                                                                  \
        const double check_close_a = (lhs);                               \
        const double check_close_b = (rhs);                               \
        const double check_close_t = (tol);                               \
        INFO("lhs = " << check_close_a << ", rhs = " << check_close_b     \
                      << ", |diff| = "                                    \
                      << std::abs(check_close_a - check_close_b)          \
                      << ", tol = " << check_close_t);                    \
        REQUIRE(std::abs(check_close_a - check_close_b) <= check_close_t); \
    } while (0)

namespace testutil {

inline cskk::preset make_preset(cskk::preset_kind kind, std::uint64_t seed = 12345,
                                double epsilon = 1.0) {
    cskk::preset_spec s;
    s.kind = kind;
    s.seed = seed;
    s.epsilon = epsilon;
    return cskk::build_preset(s);
}

inline cskk::preset hopf(double epsilon = 1.0) {
    return make_preset(cskk::preset_kind::hopf, 1, epsilon);
}

inline cskk::preset torus(std::uint64_t seed, double epsilon = 1.0) {
    return make_preset(cskk::preset_kind::torus_random, seed, epsilon);
}

/// A random fibered geometry on the torus chart.
inline cskk::kk_data random_kk(std::uint64_t seed, double epsilon = 1.0) {
    cskk::kk_data kk = torus(seed).kk;
    kk.epsilon = epsilon;
    return kk;
}

inline cskk::sym2 random_spd2(cskk::splitmix64& rng) {
    const double b00 = 1 + 0.5 * rng.symmetric(), b01 = 0.5 * rng.symmetric(),
                 b10 = 0.5 * rng.symmetric(), b11 = 1 + 0.5 * rng.symmetric();
    // B^T B + 0.1 I is symmetric positive definite
    return {b00 * b00 + b10 * b10 + 0.1, b00 * b01 + b10 * b11,
            b01 * b01 + b11 * b11 + 0.1};
}

inline cskk::sym3 random_spd3(cskk::splitmix64& rng) {
    double B[3][3];
    for (auto& row : B)
        for (double& x : row) x = rng.symmetric();
    cskk::sym3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            double s = (i == j) ? 0.5 : 0.0;
            for (int k = 0; k < 3; ++k) s += B[k][i] * B[k][j];
            m.at(i, j) = s;
        }
    return m;
}

/// An analytic three-coordinate metric with genuine dependence on all three
/// coordinates (the fibered assembly never produces one, so this exercises
/// the generic three-coordinate derivative path on its own).
inline cskk::metric_field3 wavy_metric3() {
    using cskk::scalar_field3;
    using cskk::vec3;
    auto entry = [](double base, double amp, double c0, double c1, double c2) {
        scalar_field3 f;
        f.value = [=](vec3 x) { return base + amp * std::sin(c0 * x[0] + c1 * x[1] + c2 * x[2]); };
        f.gradient = [=](vec3 x) {
            const double c = amp * std::cos(c0 * x[0] + c1 * x[1] + c2 * x[2]);
            return vec3{c0 * c, c1 * c, c2 * c};
        };
        return f;
    };
    cskk::metric_field3 G;
    G.comp[cskk::metric_field3::index(0, 0)] = entry(1.5, 0.2, 1, 0, 1);
    G.comp[cskk::metric_field3::index(0, 1)] = entry(0.0, 0.1, 1, 1, 1);
    G.comp[cskk::metric_field3::index(0, 2)] = entry(0.0, 0.1, 0, 1, 2);
    G.comp[cskk::metric_field3::index(1, 1)] = entry(1.5, 0.2, 0, 1, 1);
    G.comp[cskk::metric_field3::index(1, 2)] = entry(0.0, 0.1, 2, 0, 1);
    G.comp[cskk::metric_field3::index(2, 2)] = entry(1.0, 0.1, 1, 1, 0);
    return G;
}

} // namespace testutil
