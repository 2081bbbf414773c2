#include "cmslab/surface.hpp"

#include "cmslab/frame.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace cmslab {

namespace {

std::string g17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Interval parse_interval(const nlohmann::json& j, const char* field) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
        !j[2].is_string())
        throw Error(std::string("surface field '") + field +
                    "' must be [min, max, \"periodic\"|\"clamped\"]");
    Interval iv;
    iv.lo = j[0].get<double>();
    iv.hi = j[1].get<double>();
    std::string mode = j[2].get<std::string>();
    if (mode == "periodic") iv.periodic = true;
    else if (mode == "clamped") iv.periodic = false;
    else
        throw Error(std::string("surface field '") + field + "' mode must be \"periodic\" or "
                    "\"clamped\", got \"" + mode + "\"");
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.hi > iv.lo))
        throw Error(std::string("surface field '") + field + "' range is degenerate");
    return iv;
}

Expr parse_component(const nlohmann::json& j, const char* field, std::string& src) {
    if (!j.is_string())
        throw Error(std::string("surface field '") + field + "' must be an expression string");
    src = j.get<std::string>();
    try {
        return Expr::parse(src);
    } catch (const ParseError& e) {
        throw Error(std::string("surface field '") + field + "': " + e.what());
    }
}

} // namespace

std::array<Jet, 3> SurfaceSpec::embedding(double u0, double v0, double t0, int order) const {
    return {x.eval_jet(u0, v0, t0, order, params), y.eval_jet(u0, v0, t0, order, params),
            z.eval_jet(u0, v0, t0, order, params)};
}

SurfaceSpec load_surface_doc(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(std::string("surface document is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error("surface document must be a JSON object");
    SurfaceSpec spec;
    if (!j.contains("name") || !j["name"].is_string())
        throw Error("surface field 'name' missing or not a string");
    spec.name = j["name"].get<std::string>();
    for (const char* f : {"x", "y", "z", "u", "v"})
        if (!j.contains(f)) throw Error(std::string("surface field '") + f + "' missing");
    spec.x = parse_component(j["x"], "x", spec.x_src);
    spec.y = parse_component(j["y"], "y", spec.y_src);
    spec.z = parse_component(j["z"], "z", spec.z_src);
    spec.u = parse_interval(j["u"], "u");
    spec.v = parse_interval(j["v"], "v");
    if (j.contains("params")) {
        if (!j["params"].is_object())
            throw Error("surface field 'params' must be an object of numbers");
        for (auto& [k, val] : j["params"].items()) {
            if (!val.is_number())
                throw Error("surface parameter '" + k + "' must be a number");
            if (k == "u" || k == "v" || k == "t")
                throw Error("surface parameter '" + k + "' shadows a chart variable");
            spec.params[k] = val.get<double>();
        }
    }
    const Expr* comps[3] = {&spec.x, &spec.y, &spec.z};
    const char* fnames[3] = {"x", "y", "z"};
    for (int i = 0; i < 3; ++i)
        for (const std::string& p : comps[i]->param_names())
            if (!spec.params.count(p))
                throw Error(std::string("surface field '") + fnames[i] +
                            "' references parameter '" + p + "' not present in params");
    probe_regularity(spec);
    return spec;
}

SurfaceSpec load_surface_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open surface file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_surface_doc(ss.str());
}

std::string surface_doc(const SurfaceSpec& spec) {
    auto interval = [](const Interval& iv) {
        return "[" + g17(iv.lo) + ", " + g17(iv.hi) + ", \"" +
               (iv.periodic ? "periodic" : "clamped") + "\"]";
    };
    std::string out = "{\n";
    out += "  \"name\": " + nlohmann::json(spec.name).dump() + ",\n";
    out += "  \"x\": " + nlohmann::json(spec.x_src).dump() + ",\n";
    out += "  \"y\": " + nlohmann::json(spec.y_src).dump() + ",\n";
    out += "  \"z\": " + nlohmann::json(spec.z_src).dump() + ",\n";
    out += "  \"u\": " + interval(spec.u) + ",\n";
    out += "  \"v\": " + interval(spec.v) + ",\n";
    out += "  \"params\": {";
    bool first = true;
    for (const auto& [k, val] : spec.params) {
        if (!first) out += ", ";
        first = false;
        out += nlohmann::json(k).dump() + ": " + g17(val);
    }
    out += "}\n}\n";
    return out;
}

namespace {

std::string require_wrapped_expr(const std::map<std::string, std::string>& params,
                                 const std::string& key, const std::string& fallback) {
    auto it = params.find(key);
    std::string text = (it == params.end()) ? fallback : it->second;
    try {
        Expr e = Expr::parse(text);
        for (const std::string& p : e.param_names())
            throw Error("builtin parameter '" + key + "' references unknown name '" + p + "'");
    } catch (const ParseError& e) {
        throw Error("builtin parameter '" + key + "' does not parse: " + e.what());
    }
    return "(" + text + ")";
}

double require_constant(const std::map<std::string, std::string>& params,
                        const std::string& key, double fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    Expr e;
    try {
        e = Expr::parse(it->second);
    } catch (const ParseError& err) {
        throw Error("builtin parameter '" + key + "' does not parse: " + err.what());
    }
    if (!e.param_names().empty())
        throw Error("builtin parameter '" + key + "' must be a constant");
    double a = e.eval(0, 0, 0), b = e.eval(1, 2, 3);
    if (a != b) throw Error("builtin parameter '" + key + "' must be a constant");
    return a;
}

SurfaceSpec make_doc(const std::string& name, const std::string& x, const std::string& y,
                     const std::string& z, Interval u, Interval v) {
    SurfaceSpec spec;
    spec.name = name;
    spec.x_src = x;
    spec.y_src = y;
    spec.z_src = z;
    spec.x = Expr::parse(x);
    spec.y = Expr::parse(y);
    spec.z = Expr::parse(z);
    spec.u = u;
    spec.v = v;
    return spec;
}

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

} // namespace

SurfaceSpec expand_builtin(const std::string& family,
                           const std::map<std::string, std::string>& params) {
    auto known = [&](std::initializer_list<const char*> names) {
        for (const auto& [k, v] : params) {
            bool ok = false;
            for (const char* n : names)
                if (k == n) ok = true;
            if (!ok)
                throw Error("builtin '" + family + "' does not take parameter '" + k + "'");
        }
    };
    SurfaceSpec spec;
    if (family == "sphere") {
        known({"radius"});
        std::string r = require_wrapped_expr(params, "radius", "1");
        spec = make_doc("sphere", r + "*sin(u)*cos(v)", r + "*sin(u)*sin(v)", r + "*cos(u)",
                        {0.0, kPi, false}, {0.0, kTwoPi, true});
    } else if (family == "cylinder") {
        known({"radius", "height"});
        std::string r = require_wrapped_expr(params, "radius", "1");
        double h = require_constant(params, "height", 2.0);
        if (!(h > 0)) throw Error("builtin parameter 'height' must be positive");
        spec = make_doc("cylinder", r + "*cos(u)", r + "*sin(u)", "v", {0.0, kTwoPi, true},
                        {-h / 2, h / 2, false});
    } else if (family == "torus") {
        known({"major", "minor"});
        double a = require_constant(params, "major", 1.0);
        std::string r = require_wrapped_expr(params, "minor", "0.3");
        std::string ring = "(" + g17(a) + "+" + r + "*cos(v))";
        spec = make_doc("torus", ring + "*cos(u)", ring + "*sin(u)", r + "*sin(v)",
                        {0.0, kTwoPi, true}, {0.0, kTwoPi, true});
    } else if (family == "ellipsoid") {
        known({"a", "b", "c"});
        std::string a = require_wrapped_expr(params, "a", "1");
        std::string b = require_wrapped_expr(params, "b", "1.3");
        std::string c = require_wrapped_expr(params, "c", "0.8");
        spec = make_doc("ellipsoid", a + "*sin(u)*cos(v)", b + "*sin(u)*sin(v)", c + "*cos(u)",
                        {0.0, kPi, false}, {0.0, kTwoPi, true});
    } else if (family == "translating-sphere") {
        known({"speed"});
        double w = require_constant(params, "speed", 0.2);
        spec = make_doc("translating-sphere", "sin(u)*cos(v)", "sin(u)*sin(v)",
                        "cos(u)+" + g17(w) + "*t", {0.0, kPi, false},
                        {0.0, kTwoPi, true});
    } else {
        throw Error("unknown builtin surface family: '" + family + "'");
    }
    probe_regularity(spec);
    return spec;
}

void probe_regularity(const SurfaceSpec& spec, int nodes, double pole_offset) {
    std::mt19937 rng(12345);
    auto inset = [&](const Interval& iv) {
        double lo = iv.lo, hi = iv.hi;
        if (!iv.periodic) {
            lo += pole_offset;
            hi -= pole_offset;
        }
        return std::pair<double, double>{lo, hi};
    };
    auto [ulo, uhi] = inset(spec.u);
    auto [vlo, vhi] = inset(spec.v);
    std::uniform_real_distribution<double> du(ulo, uhi), dv(vlo, vhi);
    for (int k = 0; k < nodes; ++k) {
        double u0 = du(rng), v0 = dv(rng);
        sample_frame(spec, u0, v0, 0.0, 2); // throws on degenerate tangent plane
    }
}

} // namespace cmslab
