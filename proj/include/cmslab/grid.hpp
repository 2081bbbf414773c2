#pragma once

#include <functional>
#include <vector>

#include "cmslab/frame.hpp"
#include "cmslab/surface.hpp"

namespace cmslab {

/// Sampling request for a surface: node counts per chart direction, the
/// time slices to visit, the jet order, and the inset applied to a clamped
/// endpoint whose chart frame is degenerate (e.g. the poles of a sphere
/// chart, where the tangent plane collapses).
struct GridSpec {
    int nu = 64;
    int nv = 64;
    std::vector<double> times = {0.0, 0.25, 0.5};
    int order = 4;
    double pole_offset = 1e-3;
};

/// One chart direction of a concrete quadrature grid. Periodic directions
/// carry n equally spaced nodes with no endpoint duplication (the trapezoid
/// rule is spectrally accurate there); clamped directions carry n nodes from
/// lo to hi inclusive, where either bound has been moved inward by the pole
/// inset if the chart frame degenerates at the original endpoint.
struct GridAxis {
    std::vector<double> x;
    double h = 0.0;
    bool periodic = false;
    double lo = 0.0;
    double hi = 0.0;
    bool inset_lo = false;
    bool inset_hi = false;

    double weight(int i) const {
        if (periodic) return h;
        return (i == 0 || i + 1 == static_cast<int>(x.size())) ? 0.5 * h : h;
    }
};

struct QuadratureGrid {
    GridAxis u;
    GridAxis v;
    int order = 4;
};

/// Builds the node/weight layout for one surface at one time. Degeneracy of
/// clamped endpoints is probed by attempting to sample the frame there.
QuadratureGrid build_quadrature(const SurfaceSpec& spec, const GridSpec& grid, double t);

/// Integrates density * dS over the surface patch at time t. The density
/// callback returns the physical integrand as a jet; the area factor
/// sqrt(det S) is supplied here. Clamped directions get the Euler-Maclaurin
/// endpoint correction -h^2/12 * [f'(hi) - f'(lo)], with the derivative of
/// the full integrand read exactly off the jets, which restores near-spectral
/// accuracy on smooth integrands. Nodes where the frame degenerates are
/// skipped and counted in *skipped when provided.
double integrate(const SurfaceSpec& spec, const QuadratureGrid& q, double t,
                 const std::function<Jet(const FrameSample&)>& density,
                 int* skipped = nullptr);

/// Same sweep evaluating several densities per node, one result per density.
std::vector<double> integrate_many(const SurfaceSpec& spec, const QuadratureGrid& q, double t,
                                   const std::vector<std::function<Jet(const FrameSample&)>>& densities,
                                   int* skipped = nullptr);

}  // namespace cmslab
