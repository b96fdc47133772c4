// Core layer: alternating symbols, symmetric inverses, chart domains, jets,
// and the derivative operators (exact and finite-difference).

#include <limits>

#include "helpers.hpp"

using namespace cskk;

TEST_CASE("alternating symbol, two indices") {
    REQUIRE(levi_civita(0, 1) == 1);
    REQUIRE(levi_civita(1, 0) == -1);
    REQUIRE(levi_civita(0, 0) == 0);
    REQUIRE(levi_civita(1, 1) == 0);
    REQUIRE_THROWS_AS(levi_civita(2, 0), chart_error);
    REQUIRE_THROWS_AS(levi_civita(0, -1), chart_error);
}

TEST_CASE("alternating symbol, three indices") {
    REQUIRE(levi_civita(0, 1, 2) == 1);
    REQUIRE(levi_civita(1, 2, 0) == 1);
    REQUIRE(levi_civita(2, 0, 1) == 1);
    REQUIRE(levi_civita(0, 2, 1) == -1);
    REQUIRE(levi_civita(2, 1, 0) == -1);
    REQUIRE(levi_civita(1, 0, 2) == -1);
    int zeros = 0, total = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                total += std::abs(levi_civita(i, j, k));
                if (levi_civita(i, j, k) == 0) ++zeros;
            }
    REQUIRE(total == 6);
    REQUIRE(zeros == 21);
    REQUIRE_THROWS_AS(levi_civita(3, 0, 1), chart_error);
}

TEST_CASE("symmetric 2x2 inverse") {
    const sym2 id{1, 0, 1};
    const sym2 inv = invert_symmetric(id);
    CHECK_CLOSE(inv.a00, 1.0, 0.0);
    CHECK_CLOSE(inv.a01, 0.0, 0.0);
    CHECK_CLOSE(inv.a11, 1.0, 0.0);

    splitmix64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const sym2 m = testutil::random_spd2(rng);
        const sym2 w = invert_symmetric(m);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double prod = 0;
                for (int k = 0; k < 2; ++k) prod += m(i, k) * w(k, j);
                CHECK_CLOSE(prod, i == j ? 1.0 : 0.0, 1e-12);
            }
        const sym2 back = invert_symmetric(w);
        CHECK_CLOSE(back.a00, m.a00, 1e-10);
        CHECK_CLOSE(back.a01, m.a01, 1e-10);
        CHECK_CLOSE(back.a11, m.a11, 1e-10);
    }

    REQUIRE_THROWS_AS(invert_symmetric(sym2{1, 1, 1}), singular_metric_error);
    REQUIRE_THROWS_AS(invert_symmetric(sym2{-1, 0, -1}), singular_metric_error);
}

TEST_CASE("symmetric 3x3 inverse") {
    splitmix64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const sym3 m = testutil::random_spd3(rng);
        const sym3 w = invert_symmetric(m);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double prod = 0;
                for (int k = 0; k < 3; ++k) prod += m(i, k) * w(k, j);
                CHECK_CLOSE(prod, i == j ? 1.0 : 0.0, 1e-12);
            }
    }
    sym3 singular;
    singular.a00 = 1;
    singular.a11 = 1;
    singular.a22 = 0; // rank 2
    REQUIRE_THROWS_AS(invert_symmetric(singular), singular_metric_error);
}

TEST_CASE("3x3 determinant") {
    const mat3 a{{{2, 0, 0}, {0, 3, 0}, {0, 0, 4}}};
    CHECK_CLOSE(det3(a), 24.0, 0.0);
    const mat3 b{{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}}; // rank 2
    CHECK_CLOSE(det3(b), 0.0, 1e-12);
    const mat3 c{{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}}; // cyclic permutation
    CHECK_CLOSE(det3(c), 1.0, 0.0);
}

TEST_CASE("chart domains validate and wrap") {
    const chart_domain dom = chart_domain::make2(0, pi, false, 0, 2 * pi, true);
    REQUIRE(dom.dim == 2);
    CHECK_CLOSE(dom.length(0), pi, 1e-15);
    CHECK_CLOSE(dom.length(1), 2 * pi, 1e-15);
    REQUIRE(!dom.is_periodic(0));
    REQUIRE(dom.is_periodic(1));
    CHECK_CLOSE(dom.wrap(1, 2 * pi + 0.3), 0.3, 1e-12);
    CHECK_CLOSE(dom.wrap(1, -0.3), 2 * pi - 0.3, 1e-12);
    REQUIRE(dom.contains({0.5, 1.0}));
    REQUIRE(!dom.contains({-0.5, 1.0}));

    REQUIRE_THROWS_AS(chart_domain::make2(1, 1, false, 0, 1, false), chart_error);
    REQUIRE_THROWS_AS(chart_domain::make2(2, 1, false, 0, 1, false), chart_error);
}

TEST_CASE("jets differentiate like calculus") {
    // seed jets for x0 = 0.4, x1 = 1.1 and build sin(x0) * x1 + x0^2
    const jet1 x0{0.4, 1, 0}, x1{1.1, 0, 1};
    jet1 s{std::sin(0.4), std::cos(0.4), 0};
    const jet1 g = s * x1 + x0 * x0;
    CHECK_CLOSE(g.v, std::sin(0.4) * 1.1 + 0.16, 1e-15);
    CHECK_CLOSE(g.d0, std::cos(0.4) * 1.1 + 0.8, 1e-15);
    CHECK_CLOSE(g.d1, std::sin(0.4), 1e-15);
    CHECK_CLOSE(g.d(2), 0.0, 0.0);
    REQUIRE_THROWS_AS(g.d(3), chart_error);

    // quotient and square root rules at second order
    const jet2 a{2.0, 0.3, -0.7, 0.11, 0.05, -0.2};
    const jet2 b{1.5, -0.4, 0.6, 0.09, -0.03, 0.12};
    const jet2 q = a / b;
    const jet2 qb = q * b;
    CHECK_CLOSE(qb.v, a.v, 1e-14);
    CHECK_CLOSE(qb.d0, a.d0, 1e-14);
    CHECK_CLOSE(qb.d1, a.d1, 1e-14);
    CHECK_CLOSE(qb.d00, a.d00, 1e-14);
    CHECK_CLOSE(qb.d01, a.d01, 1e-14);
    CHECK_CLOSE(qb.d11, a.d11, 1e-14);
    const jet2 r = sqrt(a);
    const jet2 rr = r * r;
    CHECK_CLOSE(rr.v, a.v, 1e-14);
    CHECK_CLOSE(rr.d00, a.d00, 1e-14);
    CHECK_CLOSE(rr.d01, a.d01, 1e-14);

    const jet1 slice = value_jet(a);
    CHECK_CLOSE(slice.v, a.v, 0.0);
    CHECK_CLOSE(slice.d0, a.d0, 0.0);
    const jet1 da = derivative_jet(a, 0);
    CHECK_CLOSE(da.v, a.d0, 0.0);
    CHECK_CLOSE(da.d0, a.d00, 0.0);
    CHECK_CLOSE(da.d1, a.d01, 0.0);
    const jet1 dfiber = derivative_jet(a, 2);
    CHECK_CLOSE(dfiber.v, 0.0, 0.0);
}

namespace {

scalar_field2 smooth_test_field() {
    scalar_field2 f;
    f.value = [](vec2 x) { return std::sin(x[0]) * std::cos(2 * x[1]); };
    f.gradient = [](vec2 x) {
        return vec2{std::cos(x[0]) * std::cos(2 * x[1]), -2 * std::sin(x[0]) * std::sin(2 * x[1])};
    };
    f.hessian = [](vec2 x) {
        return std::array<double, 3>{-std::sin(x[0]) * std::cos(2 * x[1]),
                                     -2 * std::cos(x[0]) * std::sin(2 * x[1]),
                                     -4 * std::sin(x[0]) * std::cos(2 * x[1])};
    };
    return f;
}

} // namespace

TEST_CASE("partial derivatives: exact and finite difference") {
    const scalar_field2 c = constant_field2(3.5);
    CHECK_CLOSE(partial_derivative(c, 0, {0.1, 0.2}, deriv_mode::analytic), 0.0, 0.0);
    CHECK_CLOSE(partial_derivative(c, 1, {0.1, 0.2}, deriv_mode::finite_difference), 0.0, 1e-12);

    scalar_field2 f = smooth_test_field();
    const vec2 x{0.3, 0.7};
    const double exact0 = std::cos(0.3) * std::cos(1.4);
    CHECK_CLOSE(partial_derivative(f, 0, x, deriv_mode::analytic), exact0, 1e-15);
    CHECK_CLOSE(partial_derivative(f, 0, x, deriv_mode::finite_difference, 1e-3), exact0, 1e-8);
    // fiber axis is exactly flat for two-coordinate data
    CHECK_CLOSE(partial_derivative(f, 2, x, deriv_mode::finite_difference), 0.0, 0.0);

    // analytic mode demands an exact gradient
    scalar_field2 bare;
    bare.value = [](vec2 p) { return p[0]; };
    REQUIRE_THROWS_AS(partial_derivative(bare, 0, x, deriv_mode::analytic), derivative_error);
    REQUIRE(natural_mode(bare) == deriv_mode::finite_difference);
    REQUIRE(natural_mode(f) == deriv_mode::analytic);
}

TEST_CASE("finite differences converge at fourth order") {
    scalar_field2 f = smooth_test_field();
    const vec2 x{0.3, 0.7};
    const double exact = std::cos(0.3) * std::cos(1.4);
    const double e1 =
        std::abs(partial_derivative(f, 0, x, deriv_mode::finite_difference, 0.04) - exact);
    const double e2 =
        std::abs(partial_derivative(f, 0, x, deriv_mode::finite_difference, 0.02) - exact);
    const double order = std::log2(e1 / e2);
    INFO("measured order " << order);
    REQUIRE(order >= 3.5);
}

TEST_CASE("finite differences respect chart boundaries and periodicity") {
    scalar_field2 f = smooth_test_field();
    f.chart = chart_domain::make2(0, pi, false, 0, 2 * pi, true);

    // stencil would leave the non-periodic axis near the edge
    REQUIRE_THROWS_AS(partial_derivative(f, 0, {1e-6, 1.0}, deriv_mode::finite_difference),
                      derivative_error);

    // periodic axis wraps: derivative at x1 = 0 equals derivative at x1 = 2 pi
    const double at0 = partial_derivative(f, 1, {0.5, 0.0}, deriv_mode::finite_difference);
    const double at2pi = partial_derivative(f, 1, {0.5, 2 * pi}, deriv_mode::finite_difference);
    CHECK_CLOSE(at0, at2pi, 1e-12);

    // non-finite samples inside the stencil are rejected
    scalar_field2 bad;
    bad.value = [](vec2 p) {
        return p[0] > 0.5 ? std::numeric_limits<double>::quiet_NaN() : p[0];
    };
    REQUIRE_THROWS_AS(partial_derivative(bad, 0, {0.5, 0.0}, deriv_mode::finite_difference, 1e-4),
                      derivative_error);
}

TEST_CASE("field jets match direct derivatives") {
    scalar_field2 f = smooth_test_field();
    const vec2 x{0.9, 0.25};
    const jet2 exact = eval_jet2(f, x, deriv_mode::analytic);
    CHECK_CLOSE(exact.v, std::sin(0.9) * std::cos(0.5), 1e-15);
    CHECK_CLOSE(exact.d01, -2 * std::cos(0.9) * std::sin(0.5), 1e-15);

    scalar_field2 fd = f;
    fd.gradient = nullptr;
    fd.hessian = nullptr;
    fd.chart = chart_domain::make2(0, 2 * pi, true, 0, 2 * pi, true);
    const jet2 approx = eval_jet2(fd, x, deriv_mode::finite_difference);
    CHECK_CLOSE(approx.v, exact.v, 1e-14);
    CHECK_CLOSE(approx.d0, exact.d0, 1e-8);
    CHECK_CLOSE(approx.d1, exact.d1, 1e-8);
    CHECK_CLOSE(approx.d00, exact.d00, 1e-5);
    CHECK_CLOSE(approx.d01, exact.d01, 1e-5);
    CHECK_CLOSE(approx.d11, exact.d11, 1e-5);
}
