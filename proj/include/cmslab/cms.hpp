#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cmslab/ambient.hpp"
#include "cmslab/frame.hpp"
#include "cmslab/tensorfield.hpp"

namespace cmslab {

/// Velocity data of the moving surface at one node.
struct CmsSample {
    Jet V[3];            // Cartesian surface velocity dR/dt at a fixed chart point
    Jet C;               // normal speed, V . N
    Jet Vsurf[2];        // chart components V^alpha = S^alpha . V
    Jet Vlo[2];          // V_alpha = S_alpha . V
    Jet gammadot[2][2];  // gammadot[a][b] = cov_b V^a - C B^a_b, the connection rate
    Jet K[2][2];         // K[a][b] = d/dt S_ab = cov_a V_b + cov_b V_a - 2 C B_ab
    Jet Kup[2][2];       // indices raised; d/dt S^ab = -Kup[a][b]
    Jet gradC[2];        // cov_a C
    Jet gradCup[2];      // cov^a C
};

CmsSample cms_sample(const FrameSample& f);

/// Invariant time derivative d/dt - V^gamma cov_gamma with connection-rate
/// corrections on surface slots and coordinate-velocity corrections on ambient
/// slots.  Fields with ambient slots need `amb`.
TensorField inv_time_derivative(const TensorField& tf, const FrameSample& f, const CmsSample& c,
                                const AmbientFrame* amb = nullptr);

/// | d/dt S_ab - K_ab | and | d/dt S^ab + K^ab |, worst entry.
double metric_dot_two_ways(const FrameSample& f, const CmsSample& c);

/// Invariant time derivative of every frame object against its closed form:
/// tangent basis, dual basis, normal, mixed curvature, and the objects the
/// derivative must annihilate (metrics, area tensors, kronecker, and - when an
/// ambient frame is supplied - the ambient basis and ambient metric).
/// Returns (row label, worst residual) pairs.
std::vector<std::pair<std::string, double>> frame_derivative_table(const FrameSample& f,
                                                                   const CmsSample& c,
                                                                   const AmbientFrame* amb);

/// Second invariant time derivative of a scalar: closed form in plain chart
/// partials versus the operator applied twice.
double second_order_scalar(const CmsSample& c, const Jet& psi);

/// On scalars the time derivative and the surface derivative commute up to a
/// curvature advection term: (ddot cov_a - cov_a ddot - C B^g_a cov_g) psi = 0.
double semi_commutation_scalar(const FrameSample& f, const CmsSample& c, const Jet& psi);

/// Temporal curvature out[b][a][g] (first index upper), from its definition
/// d/dt Gamma^b_ag + R^b_gad V^d - cov_a gammadot^b_g ...
void temporal_curvature_def(const FrameSample& f, const CmsSample& c, double out[2][2][2]);
/// ... and from the reduced closed form B_ag cov^b C - B^b_a cov_g C.
void temporal_curvature_reduced(const FrameSample& f, const CmsSample& c, double out[2][2][2]);

/// Commutator on surface vectors/covectors against the reduced temporal
/// curvature; returns the worst residual entry.
double commutator_vector_check(const FrameSample& f, const CmsSample& c, const Jet psi_up[2]);
double commutator_covector_check(const FrameSample& f, const CmsSample& c, const Jet psi_lo[2]);

/// Time derivative of the surface connection two ways: plain d/dt of the
/// Christoffel symbols versus the covariant closed form.
double dt_christoffel_two_ways(const FrameSample& f, const CmsSample& c);

/// Trace of the temporal curvature (vanishes identically) and the scalar
/// sqrt(S^ab trace_a trace_b) built from it; the radicand is clamped at zero
/// and a radicand below -1e-14 is an error.
struct TraceScalar {
    double trace_max = 0;
    double delta = 0;
};
TraceScalar trace_and_scalar(const FrameSample& f, const CmsSample& c);

/// Flat-space consistency of the ambient connection along the moving surface:
/// d/dt of the shift-contracted ambient Christoffel field must equal the
/// surface-covariant derivative of its velocity-contracted counterpart.
double ambient_temporal_curvature(const FrameSample& f, const AmbientFrame& amb);

/// Projections of the commutation relation onto the frame: out[0] is the
/// curvature-rate identity ddot B_ab = cov_a cov_b C + C B^g_a B_gb, out[1]
/// the reduced temporal curvature against its definition, out[2] the mixed
/// curvature-gradient symmetry B_ag cov^g C = B^g_a cov_g C.
void frame_commutation_projections(const FrameSample& f, const CmsSample& c, double out[3]);

} // namespace cmslab
