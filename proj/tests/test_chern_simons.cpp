// The secondary-invariant densities (matrix-trace and reduced vector forms),
// both integration routes, the adiabatic sweep, and the polynomial fit.

#include <vector>

#include "helpers.hpp"

using namespace cskk;

namespace {

/// Constant-in-space antisymmetric so(3) spin jets with random entries.
spin_jets random_constant_spin(splitmix64& rng) {
    spin_jets J;
    for (int mu = 0; mu < 3; ++mu) {
        const double a = rng.symmetric(), b = rng.symmetric(), c = rng.symmetric();
        J.S[mu][0][1] = const_jet1(a);
        J.S[mu][1][0] = const_jet1(-a);
        J.S[mu][0][2] = const_jet1(b);
        J.S[mu][2][0] = const_jet1(-b);
        J.S[mu][1][2] = const_jet1(c);
        J.S[mu][2][1] = const_jet1(-c);
    }
    return J;
}

} // namespace

TEST_CASE("densities vanish on trivial connection data") {
    CHECK_CLOSE(cs_integrand_reduced(reduced_jets{}), 0.0, 0.0);
    CHECK_CLOSE(cs_integrand_trace(spin_jets{}), 0.0, 0.0);

    // a constant fiber-fiber entry alone contributes nothing
    reduced_jets R{};
    R.A[2][2] = const_jet1(0.8);
    CHECK_CLOSE(cs_integrand_reduced(R), 0.0, 0.0);
}

TEST_CASE("cubic term against a brute-force trace") {
    splitmix64 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const spin_jets J = random_constant_spin(rng);

        // brute force: (1/4pi) * (2/3) * eps^{mu nu lam} Tr(S_mu S_nu S_lam)
        double cub = 0;
        for (int mu = 0; mu < 3; ++mu)
            for (int nu = 0; nu < 3; ++nu)
                for (int lam = 0; lam < 3; ++lam) {
                    const int e = levi_civita(mu, nu, lam);
                    if (e == 0) continue;
                    for (int A = 0; A < 3; ++A)
                        for (int B = 0; B < 3; ++B)
                            for (int C = 0; C < 3; ++C)
                                cub += e * J.S[mu][A][B].v * J.S[nu][B][C].v * J.S[lam][C][A].v;
                }
        const double expected = (2.0 / 3.0) * cub / (4 * pi);
        CHECK_CLOSE(cs_integrand_trace(J), expected, 1e-14);

        // the reduced route sees the same cubic through the determinant
        spin_connection sc{};
        for (int mu = 0; mu < 3; ++mu)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) sc.A[mu][a][b] = J.S[mu][a][b].v;
        const reduced_connection rc = reduce_spin_connection(sc);
        reduced_jets R{};
        for (int C = 0; C < 3; ++C)
            for (int mu = 0; mu < 3; ++mu) R.A[C][mu] = const_jet1(rc.A[C][mu]);
        CHECK_CLOSE(cs_integrand_reduced(R), expected, 1e-13);
    }
}

TEST_CASE("trace and reduced densities agree pointwise on geometries") {
    splitmix64 rng(43);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        for (double eps : {1.0, 0.3, 2.5}) {
            const kk_data torus = testutil::random_kk(seed, eps);
            kk_data sphere = testutil::hopf().kk;
            sphere.epsilon = eps;
            const chart_domain sphere_chart = testutil::hopf().chart;
            for (int i = 0; i < 10; ++i) {
                const vec2 xt{2 * pi * rng.uniform(), 2 * pi * rng.uniform()};
                const vec2 xs = sample_point(sphere_chart, rng);
                for (const auto& [kk, x] :
                     {std::pair<const kk_data&, vec2>{torus, xt}, {sphere, xs}}) {
                    const double rt =
                        cs_integrand_trace(spin_closed_form_jets(kk, x, deriv_mode::analytic));
                    const double rr =
                        cs_integrand_reduced(reduced_closed_form_jets(kk, x, deriv_mode::analytic));
                    CHECK_CLOSE(rt, rr, 1e-10 * (1 + std::abs(rr)));
                }
            }
        }
    }
}

TEST_CASE("density splits into curvature, cubic, and exact terms") {
    // rho - rho_exact = (eps/4pi) sqrt(h) r f - (eps^2/4pi) sqrt(h) f^3, and
    // det of the reduced matrix is -(eps^2/8) sqrt(h) f^3.
    splitmix64 rng(47);
    for (std::uint64_t seed : {4u, 5u}) {
        for (double eps : {1.0, 0.45}) {
            const kk_data kk = testutil::random_kk(seed, eps);
            for (int i = 0; i < 10; ++i) {
                const vec2 x{2 * pi * rng.uniform(), 2 * pi * rng.uniform()};
                const reduced_jets R = reduced_closed_form_jets(kk, x, deriv_mode::analytic);
                const double r = scalar_curvature_riemann(kk.h.jets2(x, deriv_mode::analytic));
                const double f = R.f.v, sh = R.sqrt_h.v;

                const double remainder =
                    cs_integrand_reduced(R) - cs_exact_term_density(R);
                const double expected =
                    eps / (4 * pi) * sh * r * f - eps * eps / (4 * pi) * sh * f * f * f;
                CHECK_CLOSE(remainder, expected, 1e-10 * (1 + std::abs(expected)));

                mat3 M;
                for (int C = 0; C < 3; ++C)
                    for (int mu = 0; mu < 3; ++mu) M[C][mu] = R.A[C][mu].v;
                CHECK_CLOSE(det3(M), -eps * eps / 8 * sh * f * f * f,
                            1e-12 * (1 + std::abs(det3(M))));
            }
        }
    }
}

TEST_CASE("density anchors on the round geometry") {
    kk_data kk = testutil::hopf().kk;
    kk.epsilon = 1.0;
    const reduced_jets R = reduced_closed_form_jets(kk, {pi / 2, 0.3}, deriv_mode::analytic);
    CHECK_CLOSE(cs_integrand_reduced(R), 3.0 / (16 * pi), 1e-12);
    mat3 M;
    for (int C = 0; C < 3; ++C)
        for (int mu = 0; mu < 3; ++mu) M[C][mu] = R.A[C][mu].v;
    CHECK_CLOSE(det3(M), -1.0 / 32.0, 1e-13);
}

TEST_CASE("the exact term integrates to zero on periodic charts") {
    for (std::uint64_t seed : {6u, 7u, 8u}) {
        const preset P = testutil::torus(seed);
        auto density = [&](vec2 x) {
            return stokes_exact_term(reduced_closed_form_jets(P.kk, x, deriv_mode::analytic));
        };
        const integral_result I = integrate_chart(density, P.chart, P.quad);
        CHECK_CLOSE(I.value, 0.0, 1e-10);
    }
}

TEST_CASE("reduced-route evaluation on the round geometry") {
    const preset P = testutil::hopf();
    const cs_result r = cs_reduced(P.kk, P.chart, P.quad);
    CHECK_CLOSE(r.term_linear, 4 * pi, 1e-7);
    CHECK_CLOSE(r.term_quadratic, pi / 2, 1e-7);
    CHECK_CLOSE(r.cs_reduced, 4 * pi + pi / 2, 1e-6);
    // the record invariant: value = linear * eps + quadratic * eps^2 exactly
    CHECK_CLOSE(r.cs_reduced, r.term_linear * r.epsilon + r.term_quadratic * r.epsilon * r.epsilon,
                1e-15 * (1 + std::abs(r.cs_reduced)));
    REQUIRE(std::isnan(r.cs_direct));
}

TEST_CASE("direct route on the round geometry matches its closed value") {
    // the direct density integrates to 4 pi eps - (pi/2) eps^2 here: the
    // linear terms of the two routes coincide and the quadratic terms have
    // opposite sign (measured, reproducible; see README)
    for (double eps : {1.0, 0.5}) {
        preset P = testutil::hopf();
        P.kk.epsilon = eps;
        const integral_result d = cs_direct(P.kk, P.chart, P.quad);
        CHECK_CLOSE(d.value, 4 * pi * eps - 0.5 * pi * eps * eps,
                    3 * d.error_estimate + 1e-9);
        REQUIRE(d.error_estimate <= 1e-6);
    }
}

TEST_CASE("direct route equals eps*L - eps^2*Q on random geometries") {
    for (std::uint64_t seed : {9u, 10u}) {
        preset P = testutil::torus(seed);
        const cs_reduced_terms t = cs_reduced_coefficients(P.kk, P.chart, P.quad);
        for (double eps : {1.0, 0.35}) {
            P.kk.epsilon = eps;
            const integral_result d = cs_direct(P.kk, P.chart, P.quad);
            CHECK_CLOSE(d.value, eps * t.linear - eps * eps * t.quadratic,
                        3 * (d.error_estimate + eps * t.err_linear +
                             eps * eps * t.err_quadratic) +
                            1e-9);
        }
    }
}

TEST_CASE("everything vanishes on the flat product") {
    const preset P = testutil::make_preset(preset_kind::product_flat);
    const cs_result r = evaluate_cs(P.kk, P.chart, P.quad);
    CHECK_CLOSE(r.cs_direct, 0.0, 1e-12);
    CHECK_CLOSE(r.cs_reduced, 0.0, 1e-12);
    CHECK_CLOSE(r.term_linear, 0.0, 1e-12);
    CHECK_CLOSE(r.term_quadratic, 0.0, 1e-12);
}

TEST_CASE("adiabatic sweep: exact polynomial dependence and the fit") {
    const preset P = testutil::torus(11);
    const std::vector<double> grid{1.0, 0.6, 0.3, 0.1};
    const sweep_result sw = adiabatic_sweep(P.kk, grid, P.chart, P.quad);
    REQUIRE(sw.results.size() == grid.size());
    REQUIRE(sw.fit.residual <= 1e-9);
    const cs_reduced_terms t = cs_reduced_coefficients(P.kk, P.chart, P.quad);
    CHECK_CLOSE(sw.fit.a, t.linear, 1e-8 * (1 + std::abs(t.linear)));
    CHECK_CLOSE(sw.fit.b, t.quadratic, 1e-8 * (1 + std::abs(t.quadratic)));
    for (const cs_result& r : sw.results)
        CHECK_CLOSE(r.cs_reduced, r.term_linear * r.epsilon +
                                      r.term_quadratic * r.epsilon * r.epsilon,
                    1e-14 * (1 + std::abs(r.cs_reduced)));
}

TEST_CASE("adiabatic sweep on the round geometry: closed-form coefficients") {
    const preset P = testutil::hopf();
    const std::vector<double> grid{1.0, 0.5, 0.25, 0.1, 0.01, 1e-4};
    const sweep_result sw = adiabatic_sweep(P.kk, grid, P.chart, P.quad);
    CHECK_CLOSE(sw.fit.a, 4 * pi, 1e-5 * 4 * pi);
    CHECK_CLOSE(sw.fit.b, pi / 2, 1e-5 * pi / 2);
    for (const cs_result& r : sw.results)
        if (r.epsilon == 1e-4) REQUIRE(std::abs(r.cs_reduced) <= 1.3e-3);
}

TEST_CASE("fit validation") {
    REQUIRE_THROWS_AS(fit_eps_polynomial({1.0, 0.5}, {1.0, 0.5}), config_error);
    const std::vector<double> eps{1.0, 0.5, 0.25, 0.125};
    std::vector<double> vals;
    for (double e : eps) vals.push_back(3.0 * e - 7.0 * e * e);
    const fit_result f = fit_eps_polynomial(eps, vals);
    CHECK_CLOSE(f.a, 3.0, 1e-12);
    CHECK_CLOSE(f.b, -7.0, 1e-12);
    REQUIRE(f.residual <= 1e-13);
}

TEST_CASE("fiber volume scales both routes linearly") {
    preset P = testutil::hopf();
    const cs_result base = evaluate_cs(P.kk, P.chart, P.quad);
    P.kk.fiber_volume *= 2;
    const cs_result twice = evaluate_cs(P.kk, P.chart, P.quad);
    CHECK_CLOSE(twice.cs_direct, 2 * base.cs_direct, 1e-12 * std::abs(base.cs_direct));
    CHECK_CLOSE(twice.cs_reduced, 2 * base.cs_reduced, 1e-12 * std::abs(base.cs_reduced));
    CHECK_CLOSE(twice.term_linear, 2 * base.term_linear, 1e-12 * std::abs(base.term_linear));
}

TEST_CASE("quotient geometry divides the invariant by the sheet count") {
    const preset whole = testutil::hopf();
    const preset quotient = testutil::make_preset(preset_kind::lens);
    // local data identical, fiber volume halved (two sheets)
    CHECK_CLOSE(quotient.kk.fiber_volume, pi, 1e-15);
    const cs_result a = evaluate_cs(whole.kk, whole.chart, whole.quad);
    const cs_result b = evaluate_cs(quotient.kk, quotient.chart, quotient.quad);
    CHECK_CLOSE(b.cs_direct, a.cs_direct / 2, 1e-10 * std::abs(a.cs_direct));
    CHECK_CLOSE(b.cs_reduced, a.cs_reduced / 2, 1e-10 * std::abs(a.cs_reduced));
}

TEST_CASE("framing correction") {
    CHECK_CLOSE(framing_correction(0.0), 0.0, 0.0);
    CHECK_CLOSE(framing_correction(24 * pi), 1.0, 1e-15);
    const preset P = testutil::hopf();
    const cs_result r = cs_reduced(P.kk, P.chart, P.quad);
    CHECK_CLOSE(framing_correction(r.cs_reduced), 1.0 / 6 + 1.0 / 48, 1e-7);
}
