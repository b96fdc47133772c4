#pragma once
// Orthonormal frame ("zweibein") for a 2d metric h: e^a_alpha with
// sum_a e^a_alpha e^a_beta = h_{alpha beta}, plus its inverse
// etilde^alpha_a. Gauge: lower-triangular with positive diagonal, which is
// smooth and deterministic on the whole chart and orientation-positive,
// det(e^a_alpha) = +sqrt(det h). Provided at value level and as jets so that
// frame derivatives are exact.

#include <array>

#include "cskk/errors.hpp"
#include "cskk/field.hpp"
#include "cskk/jet.hpp"
#include "cskk/linalg.hpp"

namespace cskk {

struct zweibein {
    mat2 e;  ///< e[a][alpha]
    mat2 et; ///< et[alpha][a], inverse: e^a_alpha et^alpha_b = delta^a_b
};

/// Build the lower-triangular zweibein of an SPD 2x2 matrix.
/// Entries: e^1_1 = sqrt(h11), e^1_0 = h01/sqrt(h11), e^0_0 = sqrt(det h/h11), e^0_1 = 0.
inline zweibein build_zweibein(const sym2& h) {
    const double d = h.det();
    if (!(h.a11 > 0) || !(d > 0))
        throw singular_metric_error("build_zweibein: metric not positive definite");
    zweibein z;
    const double e11 = std::sqrt(h.a11);
    const double e10 = h.a01 / e11;
    const double e00 = std::sqrt(d / h.a11);
    z.e = {{{e00, 0.0}, {e10, e11}}};
    z.et = {{{1.0 / e00, 0.0}, {-e10 / (e00 * e11), 1.0 / e11}}};
    return z;
}

/// Zweibein with exact first/second derivatives, from metric jets.
struct zweibein_jet2 {
    std::array<std::array<jet2, 2>, 2> e;  ///< e[a][alpha]
    std::array<std::array<jet2, 2>, 2> et; ///< et[alpha][a]
};

inline zweibein_jet2 build_zweibein(const sym2_jet2& h) {
    const jet2 d = det(h);
    if (!(h.a11.v > 0) || !(d.v > 0))
        throw singular_metric_error("build_zweibein: metric not positive definite");
    zweibein_jet2 z;
    const jet2 e11 = sqrt(h.a11);
    const jet2 e10 = h.a01 / e11;
    const jet2 e00 = sqrt(d / h.a11);
    z.e[0][0] = e00; z.e[0][1] = const_jet2(0.0);
    z.e[1][0] = e10; z.e[1][1] = e11;
    z.et[0][0] = 1.0 / e00;                 z.et[0][1] = const_jet2(0.0);
    z.et[1][0] = -(e10 / (e00 * e11));      z.et[1][1] = 1.0 / e11;
    return z;
}

/// First-order-jet zweibein (cheaper; enough for one derivative of the frame).
struct zweibein_jet1 {
    std::array<std::array<jet1, 2>, 2> e;
    std::array<std::array<jet1, 2>, 2> et;
};

inline zweibein_jet1 build_zweibein(const sym2_jet1& h) {
    const jet1 d = det(h);
    if (!(h.a11.v > 0) || !(d.v > 0))
        throw singular_metric_error("build_zweibein: metric not positive definite");
    zweibein_jet1 z;
    const jet1 e11 = sqrt(h.a11);
    const jet1 e10 = h.a01 / e11;
    const jet1 e00 = sqrt(d / h.a11);
    z.e[0][0] = e00; z.e[0][1] = const_jet1(0.0);
    z.e[1][0] = e10; z.e[1][1] = e11;
    z.et[0][0] = 1.0 / e00;                 z.et[0][1] = const_jet1(0.0);
    z.et[1][0] = -(e10 / (e00 * e11));      z.et[1][1] = 1.0 / e11;
    return z;
}

inline zweibein_jet1 value_jet(const zweibein_jet2& z) {
    zweibein_jet1 r;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            r.e[a][b] = value_jet(z.e[a][b]);
            r.et[a][b] = value_jet(z.et[a][b]);
        }
    return r;
}

} // namespace cskk
