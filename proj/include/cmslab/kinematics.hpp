#pragma once

#include <array>

#include "cmslab/ambient.hpp"
#include "cmslab/cms.hpp"
#include "cmslab/expr.hpp"
#include "cmslab/frame.hpp"
#include "cmslab/grid.hpp"

namespace cmslab {

/// Residuals of the three velocity-decomposition identities at one node.
/// `decomposition` rebuilds the velocity vector from its normal speed and
/// tangential components; `frame_split` applies the invariant time derivative
/// to the velocity (componentwise advective derivative on the Cartesian
/// components) and matches it against the split through the moving frame;
/// `projections` recovers the invariant derivatives of the normal speed and
/// of the tangential components from projections of that same derivative.
struct TriVelocityCheck {
    double decomposition = 0.0;
    double frame_split = 0.0;
    double projections = 0.0;
};

TriVelocityCheck tri_velocity_check(const FrameSample& f, const CmsSample& c);

/// Acceleration data at one node, components in the coordinates of `amb`.
/// A is the coordinate acceleration of the material point, dV^i/dt plus the
/// ambient Christoffel correction. Atri is the invariant surface
/// acceleration: A stripped of the advective normal and tangential pieces
/// generated by the observed parametrization. Ahat and Atilde are its scalar
/// normal and chart-tangential projections.
struct TriAcceleration {
    Jet A[3];
    Jet Atri[3];
    Jet Ahat;
    Jet Atilde[2];
};

TriAcceleration tri_acceleration(const FrameSample& f, const CmsSample& c,
                                 const AmbientFrame& amb);

/// Residual of reassembling Atri from its projections:
/// Atri^i - N^i (Ahat + V^a grad_a C) - Z^i_a (Atilde^a - C grad^a C).
double tri_acceleration_check(const FrameSample& f, const CmsSample& c,
                              const AmbientFrame& amb);

/// Residual of the projection-shift identity: the gap between Atri and its
/// naive projection sum N^i Ahat + Z^i_a Atilde^a equals the pairing of the
/// normal-tangent commutator (NT)^{ij}_a = N^i Z^j_a - Z^i_a N^j with the
/// velocity and the normal-speed gradient.
double normal_shift_check(const FrameSample& f, const CmsSample& c, const AmbientFrame& amb);

/// Pairing properties of (NT)^{ij}_a. `tensor_weighted` contracts it with the
/// true area tensors (permutation symbols carrying the sqrt-determinant
/// weights of the ambient and surface metrics) and compares against the
/// shift tensor Z^b_k; `bare_symbols` repeats the contraction with unweighted
/// permutation symbols, which misses by the determinant factors whenever the
/// chart area element differs from 1. `metric_annihilation` contracts with
/// the ambient metric, which kills the antisymmetric pair exactly.
struct EpsilonPairing {
    double tensor_weighted = 0.0;
    double bare_symbols = 0.0;
    double metric_annihilation = 0.0;
};

EpsilonPairing epsilon_pairing(const FrameSample& f, const AmbientFrame& amb);

/// Surface kinetic energy and its rate at one time slice.
/// kinetic        = rho/2 * integral of V.V dS
/// rate_formula   = rho * integral of [V.Atri - C B^a_a (C^2 + V_a V^a) / 2] dS
/// rate_fd        = five-point finite-difference rate of the kinetic integral
/// power          = rho * integral of V.alpha dS (when a force is given)
/// The equation-of-motion residual field V.(Atri - alpha) - C B^a_a
/// (C^2 + V_a V^a)/2 is reported pointwise (worst node) and integrated over
/// the surface; with no force it describes the rate bookkeeping itself and
/// its integral times rho reproduces rate_formula.
struct EnergyReport {
    double kinetic = 0.0;
    double rate_formula = 0.0;
    double rate_fd = 0.0;
    double power = 0.0;
    double work_energy_max = 0.0;
    double work_energy_integral = 0.0;
    bool has_force = false;
    int skipped = 0;
};

/// Force components are expressions over the chart variables u, v, t, the
/// embedding coordinates x, y, z, and the surface parameters.
EnergyReport surface_energy(const SurfaceSpec& spec, const GridSpec& grid, double t,
                            double rho, const std::array<Expr, 3>* force = nullptr);

}  // namespace cmslab
