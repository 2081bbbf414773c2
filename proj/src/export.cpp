#include "cmslab/export.hpp"

#include <cstdio>
#include <functional>

#include "cmslab/ambient.hpp"
#include "cmslab/cms.hpp"
#include "cmslab/frame.hpp"
#include "cmslab/kinematics.hpp"

namespace cmslab {

namespace {

struct QuantityDef {
    const char* name;
    const char* signature;
    std::vector<FieldComponent> components;
    // appends components.size() values for one node
    std::function<void(const FrameSample&, std::vector<double>&)> fill;
};

void fill_frame(const FrameSample& f, std::vector<double>& out) {
    for (int i = 0; i < 3; ++i) out.push_back(f.N[i].value());
    for (int a = 0; a < 2; ++a)
        for (int i = 0; i < 3; ++i) out.push_back(f.S[a][i].value());
    out.push_back(f.metric[0][0].value());
    out.push_back(f.metric[0][1].value());
    out.push_back(f.metric[1][1].value());
    out.push_back(f.B[0][0].value());
    out.push_back(f.B[0][1].value());
    out.push_back(f.B[1][1].value());
    out.push_back(f.sqrt_det.value());
}

void fill_cms(const FrameSample& f, std::vector<double>& out) {
    CmsSample c = cms_sample(f);
    out.push_back(c.C.value());
    for (int i = 0; i < 3; ++i) out.push_back(c.V[i].value());
    out.push_back(c.Vsurf[0].value());
    out.push_back(c.Vsurf[1].value());
    out.push_back(c.gradC[0].value());
    out.push_back(c.gradC[1].value());
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) out.push_back(c.gammadot[a][b].value());
    out.push_back(c.K[0][0].value());
    out.push_back(c.K[0][1].value());
    out.push_back(c.K[1][1].value());
}

void fill_temporal(const FrameSample& f, std::vector<double>& out) {
    CmsSample c = cms_sample(f);
    double rr[2][2][2];
    temporal_curvature_reduced(f, c, rr);
    for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a)
            for (int g = 0; g < 2; ++g) out.push_back(rr[b][a][g]);
}

void fill_accel(const FrameSample& f, std::vector<double>& out) {
    CmsSample c = cms_sample(f);
    AmbientFrame amb = build_ambient(AmbientKind::Cartesian, f);
    TriAcceleration ta = tri_acceleration(f, c, amb);
    for (int i = 0; i < 3; ++i) out.push_back(ta.A[i].value());
    for (int i = 0; i < 3; ++i) out.push_back(ta.Atri[i].value());
    out.push_back(ta.Ahat.value());
    out.push_back(ta.Atilde[0].value());
    out.push_back(ta.Atilde[1].value());
    for (int i = 0; i < 3; ++i) {
        double gap = ta.Atri[i].value() - f.N[i].value() * ta.Ahat.value();
        for (int a = 0; a < 2; ++a) gap -= amb.shift[i][a].value() * ta.Atilde[a].value();
        out.push_back(gap);
    }
}

void fill_energy(const FrameSample& f, std::vector<double>& out) {
    CmsSample c = cms_sample(f);
    AmbientFrame amb = build_ambient(AmbientKind::Cartesian, f);
    TriAcceleration ta = tri_acceleration(f, c, amb);
    double vv = 0.0, va = 0.0;
    for (int i = 0; i < 3; ++i) {
        vv += c.V[i].value() * c.V[i].value();
        va += c.V[i].value() * ta.Atri[i].value();
    }
    double vtan = c.Vsurf[0].value() * c.Vlo[0].value() + c.Vsurf[1].value() * c.Vlo[1].value();
    double cc = c.C.value();
    double btr = f.Bmix[0][0].value() + f.Bmix[1][1].value();
    out.push_back(0.5 * vv);
    out.push_back(va - 0.5 * cc * btr * (cc * cc + vtan));
    out.push_back(f.sqrt_det.value());
}

std::vector<QuantityDef> build_defs() {
    std::vector<QuantityDef> defs;
    {
        QuantityDef d{"frame", "N^i; S_a^i; S_ab; B_ab; sqrt(det S)", {}, fill_frame};
        for (const char* ax : {"x", "y", "z"})
            d.components.push_back({std::string("N_") + ax, "i"});
        for (const char* ch : {"u", "v"})
            for (const char* ax : {"x", "y", "z"})
                d.components.push_back({std::string("S_") + ch + "_" + ax, "a i"});
        for (const char* ab : {"uu", "uv", "vv"})
            d.components.push_back({std::string("S_") + ab, "a b"});
        for (const char* ab : {"uu", "uv", "vv"})
            d.components.push_back({std::string("B_") + ab, "a b"});
        d.components.push_back({"sqrt_det", "scalar"});
        defs.push_back(std::move(d));
    }
    {
        QuantityDef d{"cms", "C; V^i; V^a; grad_a C; Gdot^a_b; K_ab", {}, fill_cms};
        d.components.push_back({"C", "scalar"});
        for (const char* ax : {"x", "y", "z"})
            d.components.push_back({std::string("V_") + ax, "i"});
        d.components.push_back({"Vsurf_u", "a"});
        d.components.push_back({"Vsurf_v", "a"});
        d.components.push_back({"gradC_u", "a"});
        d.components.push_back({"gradC_v", "a"});
        for (const char* a : {"u", "v"})
            for (const char* b : {"u", "v"})
                d.components.push_back({std::string("Gdot_") + a + "_" + b, "a b"});
        for (const char* ab : {"uu", "uv", "vv"})
            d.components.push_back({std::string("K_") + ab, "a b"});
        defs.push_back(std::move(d));
    }
    {
        QuantityDef d{"temporal_curvature", "Rdot^b_ag", {}, fill_temporal};
        for (const char* b : {"u", "v"})
            for (const char* a : {"u", "v"})
                for (const char* g : {"u", "v"})
                    d.components.push_back({std::string("Rdot_") + b + "_" + a + g, "b a g"});
        defs.push_back(std::move(d));
    }
    {
        QuantityDef d{"accelerations",
                      "A^i; Atri^i; Ahat; Atilde^a; gap^i = Atri^i - N^i Ahat - Z^i_a Atilde^a",
                      {},
                      fill_accel};
        for (const char* ax : {"x", "y", "z"})
            d.components.push_back({std::string("A_") + ax, "i"});
        for (const char* ax : {"x", "y", "z"})
            d.components.push_back({std::string("Atri_") + ax, "i"});
        d.components.push_back({"Ahat", "scalar"});
        d.components.push_back({"Atilde_u", "a"});
        d.components.push_back({"Atilde_v", "a"});
        for (const char* ax : {"x", "y", "z"})
            d.components.push_back({std::string("gap_") + ax, "i"});
        defs.push_back(std::move(d));
    }
    {
        QuantityDef d{"energy",
                      "(1/2) V.V; V.Atri - (1/2) C B^a_a (C^2 + V^b V_b); sqrt(det S)",
                      {},
                      fill_energy};
        d.components.push_back({"kinetic_density", "scalar"});
        d.components.push_back({"rate_density", "scalar"});
        d.components.push_back({"area_density", "scalar"});
        defs.push_back(std::move(d));
    }
    return defs;
}

const std::vector<QuantityDef>& defs() {
    static const std::vector<QuantityDef> d = build_defs();
    return d;
}

std::string num17(double x) {
    char b[48];
    std::snprintf(b, sizeof b, "%.17g", x);
    return b;
}

}  // namespace

const std::vector<std::string>& quantity_catalog() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& d : defs()) n.push_back(d.name);
        return n;
    }();
    return names;
}

FieldExport export_quantity(const SurfaceSpec& spec, const GridSpec& grid, double t,
                            const std::string& quantity) {
    const QuantityDef* def = nullptr;
    for (const auto& d : defs())
        if (quantity == d.name) def = &d;
    if (!def) {
        std::string names;
        for (const auto& n : quantity_catalog()) names += (names.empty() ? "" : ", ") + n;
        throw Error("unknown quantity '" + quantity + "'; available: " + names);
    }
    const QuadratureGrid q = build_quadrature(spec, grid, t);
    const int nu = static_cast<int>(q.u.x.size());
    const int nv = static_cast<int>(q.v.x.size());

    FieldExport fe;
    fe.quantity = def->name;
    fe.signature = def->signature;
    fe.nu = nu;
    fe.nv = nv;
    fe.t = t;
    fe.components = def->components;
    const std::size_t nn = static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv);
    fe.u.reserve(nn);
    fe.v.reserve(nn);
    fe.x.reserve(nn);
    fe.y.reserve(nn);
    fe.z.reserve(nn);
    fe.values.reserve(nn * def->components.size());
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            double uu = q.u.x[static_cast<std::size_t>(i)];
            double vv = q.v.x[static_cast<std::size_t>(j)];
            FrameSample f;
            try {
                f = sample_frame(spec, uu, vv, t, grid.order);
                fe.u.push_back(uu);
                fe.v.push_back(vv);
                fe.x.push_back(f.R[0].value());
                fe.y.push_back(f.R[1].value());
                fe.z.push_back(f.R[2].value());
                def->fill(f, fe.values);
            } catch (const std::exception& e) {
                throw Error("field export needs every grid node; node (" + num17(uu) + ", " +
                            num17(vv) + ") failed: " + e.what());
            }
        }
    }
    return fe;
}

std::string field_csv(const FieldExport& fe) {
    std::string out = "i,j,u,v,x,y,z";
    for (const auto& comp : fe.components) out += "," + comp.name;
    out += "\n";
    const std::size_t ncomp = fe.components.size();
    for (int i = 0; i < fe.nu; ++i) {
        for (int j = 0; j < fe.nv; ++j) {
            const std::size_t k =
                static_cast<std::size_t>(i) * static_cast<std::size_t>(fe.nv) +
                static_cast<std::size_t>(j);
            out += std::to_string(i) + "," + std::to_string(j);
            out += "," + num17(fe.u[k]) + "," + num17(fe.v[k]);
            out += "," + num17(fe.x[k]) + "," + num17(fe.y[k]) + "," + num17(fe.z[k]);
            for (std::size_t m = 0; m < ncomp; ++m) out += "," + num17(fe.values[k * ncomp + m]);
            out += "\n";
        }
    }
    return out;
}

std::string field_json(const FieldExport& fe) {
    std::string out;
    out.reserve(fe.values.size() * 24 + 4096);
    out += "{\n  \"quantity\": \"" + fe.quantity + "\",\n";
    out += "  \"signature\": \"" + fe.signature + "\",\n";
    out += "  \"time\": " + num17(fe.t) + ",\n";
    out += "  \"grid\": {\"nu\": " + std::to_string(fe.nu) +
           ", \"nv\": " + std::to_string(fe.nv) + "},\n";
    out += "  \"components\": [";
    for (std::size_t m = 0; m < fe.components.size(); ++m) {
        if (m) out += ", ";
        out += "{\"name\": \"" + fe.components[m].name + "\", \"signature\": \"" +
               fe.components[m].signature + "\"}";
    }
    out += "],\n  \"nodes\": [\n";
    const std::size_t ncomp = fe.components.size();
    for (int i = 0; i < fe.nu; ++i) {
        for (int j = 0; j < fe.nv; ++j) {
            const std::size_t k =
                static_cast<std::size_t>(i) * static_cast<std::size_t>(fe.nv) +
                static_cast<std::size_t>(j);
            out += "    {\"i\": " + std::to_string(i) + ", \"j\": " + std::to_string(j);
            out += ", \"u\": " + num17(fe.u[k]) + ", \"v\": " + num17(fe.v[k]);
            out += ", \"x\": " + num17(fe.x[k]) + ", \"y\": " + num17(fe.y[k]) +
                   ", \"z\": " + num17(fe.z[k]);
            out += ", \"values\": [";
            for (std::size_t m = 0; m < ncomp; ++m) {
                if (m) out += ", ";
                out += num17(fe.values[k * ncomp + m]);
            }
            out += "]}";
            bool last = (i == fe.nu - 1) && (j == fe.nv - 1);
            out += last ? "\n" : ",\n";
        }
    }
    out += "  ]\n}\n";
    return out;
}

}  // namespace cmslab
