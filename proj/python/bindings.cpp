#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cmslab/export.hpp"
#include "cmslab/kinematics.hpp"
#include "cmslab/suite.hpp"

namespace py = pybind11;
using namespace cmslab;

namespace {

GridSpec make_grid(int nu, int nv, std::vector<double> times, int order, double pole_offset) {
    GridSpec g;
    g.nu = nu;
    g.nv = nv;
    g.times = std::move(times);
    g.order = order;
    g.pole_offset = pole_offset;
    return g;
}

py::tuple vec3(const Jet* a) {
    return py::make_tuple(a[0].value(), a[1].value(), a[2].value());
}

py::tuple mat2(const Jet (&m)[2][2]) {
    return py::make_tuple(py::make_tuple(m[0][0].value(), m[0][1].value()),
                          py::make_tuple(m[1][0].value(), m[1][1].value()));
}

py::dict frame_dict(const FrameSample& f) {
    py::dict d;
    d["u"] = f.u;
    d["v"] = f.v;
    d["t"] = f.t;
    d["R"] = vec3(f.R);
    d["N"] = vec3(f.N);
    d["S"] = py::make_tuple(vec3(f.S[0]), vec3(f.S[1]));
    d["metric"] = mat2(f.metric);
    d["metric_inv"] = mat2(f.metric_inv);
    d["curvature"] = mat2(f.B);
    d["sqrt_det"] = f.sqrt_det.value();
    return d;
}

py::dict cms_dict(const FrameSample& f) {
    CmsSample c = cms_sample(f);
    py::dict d;
    d["C"] = c.C.value();
    d["V"] = vec3(c.V);
    d["Vsurf"] = py::make_tuple(c.Vsurf[0].value(), c.Vsurf[1].value());
    d["gradC"] = py::make_tuple(c.gradC[0].value(), c.gradC[1].value());
    d["K"] = mat2(c.K);
    return d;
}

py::dict suite_dict(const SuiteResult& res) {
    py::dict d;
    py::list rows;
    for (const ReportRow& r : res.rows) {
        py::dict row;
        row["id"] = r.id;
        row["description"] = r.description;
        row["anchor"] = r.anchor;
        row["time"] = r.time;
        row["max_abs"] = r.max_abs;
        row["rms"] = r.rms;
        row["node"] = py::make_tuple(r.node_u, r.node_v);
        row["tolerance"] = r.tolerance;
        row["pass"] = r.pass;
        row["samples"] = r.samples;
        row["skipped"] = r.skipped;
        rows.append(row);
    }
    d["rows"] = rows;
    d["notes"] = res.notes;
    d["pass"] = res.pass;
    return d;
}

py::dict energy_dict(const EnergyReport& rep) {
    py::dict d;
    d["kinetic"] = rep.kinetic;
    d["rate_formula"] = rep.rate_formula;
    d["rate_fd"] = rep.rate_fd;
    d["power"] = rep.power;
    d["work_energy_max"] = rep.work_energy_max;
    d["work_energy_integral"] = rep.work_energy_integral;
    d["has_force"] = rep.has_force;
    d["skipped"] = rep.skipped;
    return d;
}

}  // namespace

PYBIND11_MODULE(_cmslab, m) {
    m.doc() = "moving-surface calculus laboratory";
    m.attr("__version__") = "0.1.0";

    py::register_exception<Error>(m, "CmsError", PyExc_ValueError);

    py::class_<SurfaceSpec>(m, "Surface")
        .def_readonly("name", &SurfaceSpec::name)
        .def("__repr__",
             [](const SurfaceSpec& s) { return "<cmslab.Surface '" + s.name + "'>"; });

    m.def("builtin", &expand_builtin, py::arg("family"),
          py::arg("params") = std::map<std::string, std::string>{},
          "expand a built-in surface family "
          "(sphere|cylinder|torus|ellipsoid|translating-sphere)");
    m.def("load_doc", &load_surface_doc, py::arg("json_text"),
          "parse and validate a surface document");
    m.def("doc", &surface_doc, py::arg("surface"), "serialize a surface back to its document");

    m.def(
        "eval_expr",
        [](const std::string& src, double u, double v, double t,
           const std::map<std::string, double>& params) {
            Params p;
            for (const auto& [k, val] : params) p[k] = val;
            return Expr::parse(src).eval_jet(u, v, t, 1, p).value();
        },
        py::arg("src"), py::arg("u") = 0.0, py::arg("v") = 0.0, py::arg("t") = 0.0,
        py::arg("params") = std::map<std::string, double>{},
        "evaluate an expression in (u, v, t) and named parameters");

    m.def(
        "frame",
        [](const SurfaceSpec& spec, double u, double v, double t, int order) {
            return frame_dict(sample_frame(spec, u, v, t, order));
        },
        py::arg("surface"), py::arg("u"), py::arg("v"), py::arg("t") = 0.0, py::arg("order") = 3,
        "frame objects (normal, tangent basis, metric, curvature) at one node");

    m.def(
        "cms",
        [](const SurfaceSpec& spec, double u, double v, double t, int order) {
            return cms_dict(sample_frame(spec, u, v, t, order));
        },
        py::arg("surface"), py::arg("u"), py::arg("v"), py::arg("t") = 0.0, py::arg("order") = 3,
        "velocity data (normal speed, tangent velocity, metric rate) at one node");

    m.def(
        "run_suite",
        [](const SurfaceSpec& spec, int nu, int nv, std::vector<double> times, int order,
           double tol_first, double tol_third, double pole_offset, int workers) {
            GridSpec grid = make_grid(nu, nv, std::move(times), order, pole_offset);
            SuiteTolerances tol{tol_first, tol_third};
            SuiteResult res;
            {
                py::gil_scoped_release release;
                res = run_suite(spec, grid, tol, workers);
            }
            return suite_dict(res);
        },
        py::arg("surface"), py::arg("nu") = 64, py::arg("nv") = 64,
        py::arg("times") = std::vector<double>{0.0, 0.25, 0.5}, py::arg("order") = 4,
        py::arg("tol_first") = 1e-10, py::arg("tol_third") = 1e-8, py::arg("pole_offset") = 1e-3,
        py::arg("workers") = 1, "sweep the identity catalog; returns rows, notes, overall pass");

    m.def(
        "report",
        [](const SurfaceSpec& spec, int nu, int nv, std::vector<double> times, int order,
           double tol_first, double tol_third, double pole_offset, int workers) {
            GridSpec grid = make_grid(nu, nv, std::move(times), order, pole_offset);
            SuiteTolerances tol{tol_first, tol_third};
            SuiteResult res;
            {
                py::gil_scoped_release release;
                res = run_suite(spec, grid, tol, workers);
            }
            return report_json(spec, grid, tol, res);
        },
        py::arg("surface"), py::arg("nu") = 64, py::arg("nv") = 64,
        py::arg("times") = std::vector<double>{0.0, 0.25, 0.5}, py::arg("order") = 4,
        py::arg("tol_first") = 1e-10, py::arg("tol_third") = 1e-8, py::arg("pole_offset") = 1e-3,
        py::arg("workers") = 1, "run the suite and return the structured report text");

    m.def(
        "energy",
        [](const SurfaceSpec& spec, double t, double rho, int nu, int nv, int order,
           double pole_offset, py::object alpha) {
            GridSpec grid = make_grid(nu, nv, {t}, order, pole_offset);
            if (alpha.is_none()) return energy_dict(surface_energy(spec, grid, t, rho));
            auto comps = alpha.cast<std::array<std::string, 3>>();
            std::array<Expr, 3> force = {Expr::parse(comps[0]), Expr::parse(comps[1]),
                                         Expr::parse(comps[2])};
            return energy_dict(surface_energy(spec, grid, t, rho, &force));
        },
        py::arg("surface"), py::arg("t") = 0.0, py::arg("rho") = 1.0, py::arg("nu") = 64,
        py::arg("nv") = 64, py::arg("order") = 4, py::arg("pole_offset") = 1e-3,
        py::arg("alpha") = py::none(),
        "kinetic energy, rate by formula and finite differences, and the work-energy residual");

    m.def("quantities", [] { return quantity_catalog(); },
          "names of the exportable field quantities");

    m.def(
        "export_field",
        [](const SurfaceSpec& spec, const std::string& quantity, double t, int nu, int nv,
           int order, double pole_offset) {
            GridSpec grid = make_grid(nu, nv, {t}, order, pole_offset);
            FieldExport fe = export_quantity(spec, grid, t, quantity);
            py::dict d;
            d["quantity"] = fe.quantity;
            d["signature"] = fe.signature;
            d["nu"] = fe.nu;
            d["nv"] = fe.nv;
            d["time"] = fe.t;
            py::list comps;
            for (const auto& comp : fe.components) comps.append(comp.name);
            d["components"] = comps;
            d["u"] = fe.u;
            d["v"] = fe.v;
            d["x"] = fe.x;
            d["y"] = fe.y;
            d["z"] = fe.z;
            d["values"] = fe.values;  // node-major, components fastest
            return d;
        },
        py::arg("surface"), py::arg("quantity"), py::arg("t") = 0.0, py::arg("nu") = 64,
        py::arg("nv") = 64, py::arg("order") = 4, py::arg("pole_offset") = 1e-3,
        "evaluate one catalog quantity over the grid");
}
