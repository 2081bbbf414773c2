#pragma once

#include "cmslab/surface.hpp"

namespace cmslab {

/// Everything static about the embedded surface at one node, as jets of
/// (u, v, t) about the node. Index conventions: Greek/chart indices run over
/// {u, v} = {0, 1}; Latin/ambient indices over Cartesian {x, y, z} = {0, 1, 2}.
/// Jet validity decreases with each derivative taken from the embedding:
/// basis vectors carry order-1 depth less than R, curvature order-2 less.
struct FrameSample {
    double u = 0, v = 0, t = 0;
    int order = 3;

    Jet R[3];           // embedding point
    Jet S[2][3];        // tangent basis S_alpha
    Jet DD[2][2][3];    // second embedding derivatives, symmetric in the chart pair
    Jet N[3];           // unit normal along S_1 x S_2
    Jet metric[2][2];   // S_alphabeta
    Jet metric_inv[2][2];
    Jet det;            // det metric
    Jet sqrt_det;
    Jet Sup[2][3];      // contravariant basis S^alpha
    Jet B[2][2];        // curvature tensor, both indices down
    Jet Bmix[2][2];     // B^alpha_beta
    Jet gamma[2][2][2]; // gamma[g][a][b] = Gamma^g_ab, symmetric in (a,b)
    Jet eps_lo[2][2];   // sqrt(det) * [ab]
    Jet eps_up[2][2];   // [ab] / sqrt(det)

    // Riemann tensor values riem[d][g][a][b] = R^d_{g a b} from the
    // Christoffel-derivative form, with the commutator pair in the last two
    // slots: (grad_a grad_b - grad_b grad_a) psi^d = R^d_{g a b} psi^g.
    double riem[2][2][2][2] = {};
};

/// Sample all frame quantities. Throws on degenerate tangent planes
/// (|S_1 x S_2| < 1e-12) naming the node, and on order < 2.
FrameSample sample_frame(const SurfaceSpec& spec, double u, double v, double t, int order);

/// Gauss-equation route to the fully lowered Riemann tensor:
/// R_{wxyz} = B_wy B_xz - B_wz B_xy (values).
void riemann_gauss(const FrameSample& f, double out[2][2][2][2]);

/// Residual helpers (max absolute component values at the node).
double check_normal_unit(const FrameSample& f);
double check_normal_orthogonal(const FrameSample& f);
double check_curvature_symmetric(const FrameSample& f);
double check_curvature_two_routes(const FrameSample& f);
double check_metric_compat(const FrameSample& f);
double check_levi_civita_compat(const FrameSample& f);
double check_codazzi(const FrameSample& f);
double check_gauss_vs_christoffel(const FrameSample& f);
double check_bianchi(const FrameSample& f);

/// Commutator checks against the stored Riemann values; the two sides are
/// evaluated independently (nested derivatives vs curvature contraction).
double riemann_commutator_scalar(const FrameSample& f, const Jet& psi);
double riemann_commutator_vector(const FrameSample& f, const Jet psi_up[2]);
double riemann_commutator_covector(const FrameSample& f, const Jet psi_lo[2]);

} // namespace cmslab
