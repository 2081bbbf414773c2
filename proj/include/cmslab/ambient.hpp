#pragma once

#include "cmslab/frame.hpp"

namespace cmslab {

enum class AmbientKind { Cartesian, Cylindrical, Spherical };

const char* ambient_name(AmbientKind k);

/// A curvilinear coordinate system of flat Euclidean 3-space evaluated along
/// the surface: coordinates of the node, shift tensor, coordinate velocity,
/// Christoffel symbols, metric, and the coordinate basis in Cartesian
/// components. Everything is a jet of (u, v, t), so the cancellation checks
/// can differentiate any of it. Cartesian is the identity system.
struct AmbientFrame {
    AmbientKind kind = AmbientKind::Cartesian;
    Jet coord[3];        // Z^i at the node
    Jet shift[3][2];     // Z^i_alpha
    Jet vel[3];          // V^i = dt Z^i
    Jet gamma[3][3][3];  // Gamma^i_jk, symmetric in (j,k)
    Jet metric[3][3];    // Z_ij
    Jet metric_inv[3][3];
    Jet basis[3][3];     // basis[i][c]: Cartesian component c of E_i
};

/// Throws when the node sits on the coordinate axis/origin of the system.
AmbientFrame build_ambient(AmbientKind kind, const FrameSample& f);

} // namespace cmslab
