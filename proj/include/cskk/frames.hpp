#pragma once
// Orthonormal 3d frame for the assembled metric, the spin connection from
// the generic frame formula and from closed forms, and the reduction of the
// so(3)-valued connection to the vector-valued one-form A^C_mu. The frame
// metric is Euclidean (identity), so frame indices are raised and lowered
// trivially.

#include <array>
#include <cmath>

#include "cskk/connection.hpp"
#include "cskk/errors.hpp"
#include "cskk/field.hpp"
#include "cskk/jet.hpp"
#include "cskk/kaluza_klein.hpp"
#include "cskk/linalg.hpp"
#include "cskk/zweibein.hpp"

namespace cskk {

/// 3d frame E^A_mu and inverse Etilde^mu_A for the assembled metric:
///   E^a_alpha = e^a_alpha, E^a_2 = 0, E^2_alpha = sqrt(eps) phi_alpha, E^2_2 = sqrt(eps);
///   Et^alpha_a = et^alpha_a, Et^alpha_2 = 0, Et^2_a = -phi_zeta et^zeta_a, Et^2_2 = 1/sqrt(eps).
struct vielbein3 {
    mat3 E;  ///< E[A][mu]
    mat3 Et; ///< Et[mu][A]
};

inline vielbein3 build_vielbein3(const kk_data& kk, vec2 x) {
    validate(kk);
    const zweibein z = build_zweibein(kk.h.value(x));
    const vec2 p = kk.phi.value(x);
    const double se = std::sqrt(kk.epsilon);
    vielbein3 v{};
    for (int a = 0; a < 2; ++a)
        for (int al = 0; al < 2; ++al) {
            v.E[a][al] = z.e[a][al];
            v.Et[al][a] = z.et[al][a];
        }
    v.E[0][2] = v.E[1][2] = 0.0;
    v.E[2][0] = se * p[0];
    v.E[2][1] = se * p[1];
    v.E[2][2] = se;
    v.Et[0][2] = v.Et[1][2] = 0.0;
    v.Et[2][0] = -(p[0] * z.et[0][0] + p[1] * z.et[1][0]);
    v.Et[2][1] = -(p[0] * z.et[0][1] + p[1] * z.et[1][1]);
    v.Et[2][2] = 1.0 / se;
    return v;
}

/// Frame entries as first-order jets (exact d_0, d_1 of each entry; every
/// entry is x2-independent).
struct vielbein3_jets {
    std::array<std::array<jet1, 3>, 3> E;  ///< E[A][mu]
    std::array<std::array<jet1, 3>, 3> Et; ///< Et[mu][A]
};

inline vielbein3_jets build_vielbein3_jets(const kk_data& kk, vec2 x, deriv_mode mode) {
    validate(kk);
    const sym2_jet1 hj = kk.h.jets1(x, mode);
    const zweibein_jet1 z = build_zweibein(hj);
    const jet1 p[2] = {eval_jet1(kk.phi.comp[0], x, mode), eval_jet1(kk.phi.comp[1], x, mode)};
    const double se = std::sqrt(kk.epsilon);
    vielbein3_jets v{};
    for (int a = 0; a < 2; ++a)
        for (int al = 0; al < 2; ++al) {
            v.E[a][al] = z.e[a][al];
            v.Et[al][a] = z.et[al][a];
        }
    v.E[0][2] = v.E[1][2] = const_jet1(0.0);
    v.E[2][0] = se * p[0];
    v.E[2][1] = se * p[1];
    v.E[2][2] = const_jet1(se);
    v.Et[0][2] = v.Et[1][2] = const_jet1(0.0);
    v.Et[2][0] = -(p[0] * z.et[0][0] + p[1] * z.et[1][0]);
    v.Et[2][1] = -(p[0] * z.et[0][1] + p[1] * z.et[1][1]);
    v.Et[2][2] = const_jet1(1.0 / se);
    return v;
}

/// Spin connection [A_mu]^A_B, one 3x3 frame matrix per coordinate direction.
/// With the Euclidean frame metric the lowered form equals the mixed form.
struct spin_connection {
    std::array<mat3, 3> A{}; ///< A[mu][upper A][B]

    double lowered(int mu, int a, int b) const { return A[mu][a][b]; }

    /// Worst antisymmetry violation of the lowered form.
    double antisymmetry_residual() const {
        double worst = 0;
        for (int mu = 0; mu < 3; ++mu)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    worst = std::max(worst, std::abs(A[mu][a][b] + A[mu][b][a]));
        return worst;
    }
};

/// Generic frame formula
///   [A_mu]^A_B = E^A_nu Et^lam_B Gamma^nu_{mu lam} - Et^lam_B d_mu E^A_lam,
/// with Gamma from the generic Christoffel definition of the assembled metric
/// and exact frame derivatives (d_2 E = 0).
inline spin_connection spin_connection_generic(const kk_data& kk, vec2 x, deriv_mode mode) {
    const metric_field3 Gf = assemble_metric_field(kk, mode);
    const christoffel3 gam = christoffel_generic(Gf, {x[0], x[1], 0.0}, deriv_mode::analytic);
    const vielbein3_jets vj = build_vielbein3_jets(kk, x, mode);
    spin_connection sc{};
    for (int mu = 0; mu < 3; ++mu)
        for (int A = 0; A < 3; ++A)
            for (int B = 0; B < 3; ++B) {
                double s = 0;
                for (int lam = 0; lam < 3; ++lam) {
                    for (int nu = 0; nu < 3; ++nu)
                        s += vj.E[A][nu].v * vj.Et[lam][B].v * gam(nu, mu, lam);
                    s -= vj.Et[lam][B].v * vj.E[A][lam].d(mu);
                }
                sc.A[mu][A][B] = s;
            }
    return sc;
}

inline spin_connection spin_connection_generic(const kk_data& kk, vec2 x) {
    return spin_connection_generic(kk, x, kk.natural_mode());
}

/// Closed forms (base zweibein e, its inverse et, base connection gamma,
/// field strength f_{ab}, all-lowered frame metric trivial):
///   [A_al]^a_b   = sum_z et^z_b [ -D_al e^a_z - (eps/2) e^a_d h^{dr} phi_al f_{r z} ]
///   [A_al]^a_2   = (sqrt(eps)/2) e^a_d h^{dz} f_{al z}    (and ^2_b by antisymmetry)
///   [A_2]^a_b    = (eps/2) et^z_b e^a_d h^{dr} f_{z r}
///   [A_2]^a_2    = [A_2]^2_b = 0,  [A_mu]^2_2 = 0.
inline spin_connection spin_connection_closed_form(const kk_data& kk, vec2 x, deriv_mode mode) {
    validate(kk);
    const double eps = kk.epsilon;
    const sym2_jet2 hj2 = kk.h.jets2(x, mode);
    const zweibein_jet1 z = build_zweibein(value_jet(hj2));
    const christoffel2_jets gam = christoffel_jets(hj2);
    const sym2 hv{hj2.a00.v, hj2.a01.v, hj2.a11.v};
    const sym2 hinv = invert_symmetric(hv);
    const vec2 p = kk.phi.value(x);
    const field_strength_result fs = field_strength(kk, x, mode);

    spin_connection sc{};
    // base directions, both frame indices on the base
    for (int al = 0; al < 2; ++al)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                double s = 0;
                for (int zt = 0; zt < 2; ++zt) {
                    double D = z.e[a][zt].d(al);
                    for (int lam = 0; lam < 2; ++lam) D -= gam(lam, al, zt).v * z.e[a][lam].v;
                    double corr = 0;
                    for (int d = 0; d < 2; ++d)
                        for (int r = 0; r < 2; ++r)
                            corr += z.e[a][d].v * hinv(d, r) * p[al] * fs.f_ab[r][zt];
                    s += z.et[zt][b].v * (-D - 0.5 * eps * corr);
                }
                sc.A[al][a][b] = s;
            }
    // base directions, one frame index on the fiber
    const double se2 = 0.5 * std::sqrt(eps);
    for (int al = 0; al < 2; ++al)
        for (int a = 0; a < 2; ++a) {
            double s = 0;
            for (int d = 0; d < 2; ++d)
                for (int zt = 0; zt < 2; ++zt) s += z.e[a][d].v * hinv(d, zt) * fs.f_ab[al][zt];
            sc.A[al][a][2] = se2 * s;
            sc.A[al][2][a] = -se2 * s;
        }
    // fiber direction, both frame indices on the base
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            double s = 0;
            for (int zt = 0; zt < 2; ++zt)
                for (int d = 0; d < 2; ++d)
                    for (int r = 0; r < 2; ++r)
                        s += z.et[zt][b].v * z.e[a][d].v * hinv(d, r) * fs.f_ab[zt][r];
            sc.A[2][a][b] = 0.5 * eps * s;
        }
    // remaining entries are identically zero: [A_2]^a_2, [A_2]^2_b, [A_mu]^2_2
    return sc;
}

inline spin_connection spin_connection_closed_form(const kk_data& kk, vec2 x) {
    return spin_connection_closed_form(kk, x, kk.natural_mode());
}

/// Vector-valued one-form A^C_mu obtained from the so(3)-valued connection.
struct reduced_connection {
    std::array<std::array<double, 3>, 3> A{}; ///< A[C][mu]
};

namespace detail {
inline constexpr double reduce_antisymmetry_tolerance = 1e-6;
}

/// Reduction A^C_mu = (1/2) eps^{ABC} [A_mu]_{AB}. Inputs whose lowered form
/// violates antisymmetry beyond tolerance signal inconsistent frames and are
/// rejected.
inline reduced_connection reduce_spin_connection(const spin_connection& sc) {
    if (sc.antisymmetry_residual() > detail::reduce_antisymmetry_tolerance)
        throw frame_error("reduce_spin_connection: lowered connection not antisymmetric within 1e-6");
    reduced_connection rc{};
    for (int C = 0; C < 3; ++C)
        for (int mu = 0; mu < 3; ++mu) {
            double s = 0;
            for (int A = 0; A < 3; ++A)
                for (int B = 0; B < 3; ++B) s += levi_civita(A, B, C) * sc.lowered(mu, A, B);
            rc.A[C][mu] = 0.5 * s;
        }
    return rc;
}

/// Worst deviation of the reconstruction eps_{ABC} A^C_mu from [A_mu]_{AB}.
inline double reconstruction_residual(const reduced_connection& rc, const spin_connection& sc) {
    double worst = 0;
    for (int mu = 0; mu < 3; ++mu)
        for (int A = 0; A < 3; ++A)
            for (int B = 0; B < 3; ++B) {
                double s = 0;
                for (int C = 0; C < 3; ++C) s += levi_civita(A, B, C) * rc.A[C][mu];
                worst = std::max(worst, std::abs(s - sc.lowered(mu, A, B)));
            }
    return worst;
}

/// Closed-form reduced connection with the frame-rotation one-form and the
/// invariant field strength as named outputs:
///   A^2_alpha = -omega_alpha - (eps/2) f phi_alpha,  A^2_2 = -(eps/2) f,
///   A^a_alpha = (sqrt(eps)/2) f e^a_alpha,           A^a_2 = 0.
struct reduced_closed_result {
    reduced_connection rc;
    vec2 omega{};
    double f = 0;
};

inline reduced_closed_result reduced_closed_form(const kk_data& kk, vec2 x, deriv_mode mode) {
    validate(kk);
    const double eps = kk.epsilon;
    const sym2_jet2 hj2 = kk.h.jets2(x, mode);
    const frame_rotation fr = frame_rotation_jets(hj2);
    const zweibein z = build_zweibein(kk.h.value(x));
    const vec2 p = kk.phi.value(x);
    const double f = field_strength(kk, x, mode).f;

    reduced_closed_result out;
    out.omega = {fr.omega[0].v, fr.omega[1].v};
    out.f = f;
    for (int al = 0; al < 2; ++al) {
        out.rc.A[2][al] = -out.omega[al] - 0.5 * eps * f * p[al];
        for (int a = 0; a < 2; ++a) out.rc.A[a][al] = 0.5 * std::sqrt(eps) * f * z.e[a][al];
    }
    out.rc.A[2][2] = -0.5 * eps * f;
    out.rc.A[0][2] = out.rc.A[1][2] = 0.0;
    return out;
}

inline reduced_closed_result reduced_closed_form(const kk_data& kk, vec2 x) {
    return reduced_closed_form(kk, x, kk.natural_mode());
}

} // namespace cskk
