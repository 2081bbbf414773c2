#pragma once

#include "cmslab/expr.hpp"

#include <array>
#include <map>
#include <string>

namespace cmslab {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    bool periodic = false;
};

/// A time-dependent parametric surface: three embedding expressions in
/// (u, v, t), the chart ranges, and a table of named numeric parameters.
struct SurfaceSpec {
    std::string name;
    Expr x, y, z;
    std::string x_src, y_src, z_src;
    Interval u, v;
    Params params;

    std::array<Jet, 3> embedding(double u0, double v0, double t0, int order) const;
};

/// Parse and validate a surface document (JSON text). Throws Error naming the
/// offending field; probes chart regularity at 16 deterministic random nodes.
SurfaceSpec load_surface_doc(const std::string& json_text);
SurfaceSpec load_surface_file(const std::string& path);

/// Serialize back to the document schema (numbers at 17 significant digits).
std::string surface_doc(const SurfaceSpec& spec);

/// Expand a built-in family to a full spec. Families: sphere(radius),
/// cylinder(radius, height), torus(major, minor), ellipsoid(a, b, c),
/// translating-sphere(speed). Radius-like parameters may be expressions in t;
/// height/major/speed must be constants.
SurfaceSpec expand_builtin(const std::string& family,
                           const std::map<std::string, std::string>& params);

/// Regularity probe used by the loaders; throws on a degenerate node.
void probe_regularity(const SurfaceSpec& spec, int nodes = 16, double pole_offset = 1e-3);

} // namespace cmslab
