#pragma once

#include <string>
#include <vector>

#include "cmslab/grid.hpp"
#include "cmslab/surface.hpp"

namespace cmslab {

struct FieldComponent {
    std::string name;       // e.g. "Rdot_u_uv"
    std::string signature;  // index signature of the object it belongs to
};

/// One exported quantity on the full grid at one time slice. Node-major
/// layout: node k = i * nv + j holds values[k * ncomp .. k * ncomp + ncomp).
/// Invariant: values.size() == nu * nv * components.size().
struct FieldExport {
    std::string quantity;
    std::string signature;  // summary of the component layout
    int nu = 0, nv = 0;
    double t = 0.0;
    std::vector<double> u, v;        // chart coordinates per node
    std::vector<double> x, y, z;     // ambient position per node
    std::vector<FieldComponent> components;
    std::vector<double> values;
};

/// Names of the exportable quantities, fixed order.
const std::vector<std::string>& quantity_catalog();

/// Evaluate one catalog quantity over the grid. Unknown names and nodes that
/// cannot be evaluated raise Error (exports require every node; the identity
/// suite is the tool that tolerates degenerate nodes).
FieldExport export_quantity(const SurfaceSpec& spec, const GridSpec& grid, double t,
                            const std::string& quantity);

/// Renderers share one number formatter (17 significant digits), so the two
/// formats agree token-for-token after parsing.
std::string field_csv(const FieldExport& fe);
std::string field_json(const FieldExport& fe);

}  // namespace cmslab
