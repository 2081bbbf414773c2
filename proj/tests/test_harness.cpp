#include "doctest.h"

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "cmslab/export.hpp"
#include "cmslab/suite.hpp"

using namespace cmslab;

namespace {

std::string num17(double x) {
    char b[48];
    std::snprintf(b, sizeof b, "%.17g", x);
    return b;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        auto c = line.find(sep, pos);
        out.push_back(line.substr(pos, c == std::string::npos ? std::string::npos : c - pos));
        if (c == std::string::npos) break;
        pos = c + 1;
    }
    return out;
}

GridSpec small_grid(int n, std::vector<double> times) {
    GridSpec g;
    g.nu = n;
    g.nv = n;
    g.times = std::move(times);
    return g;
}

}  // namespace

TEST_CASE("suite: deterministic rows, one per identity per time slice") {
    SurfaceSpec spec = expand_builtin("torus", {});
    GridSpec grid = small_grid(16, {0.0, 0.4});
    SuiteTolerances tol;
    SuiteResult res = run_suite(spec, grid, tol);
    REQUIRE(res.rows.size() % grid.times.size() == 0);
    const std::size_t per_slice = res.rows.size() / grid.times.size();
    for (std::size_t k = 0; k < per_slice; ++k) {
        CHECK(res.rows[k].id == res.rows[per_slice + k].id);
        CHECK(res.rows[k].time == 0.0);
        CHECK(res.rows[per_slice + k].time == 0.4);
    }
    // the catalog covers every module: spot ids from each block
    std::map<std::string, int> seen;
    for (const auto& r : res.rows) seen[r.id]++;
    for (const char* id :
         {"normal-unit", "gauss-curvature", "table-mixed-curvature",
          "temporal-curvature-two-routes", "second-order", "ambient-flatness-spherical",
          "tri-acceleration", "epsilon-pairing"})
        CHECK(seen[id] == 2);
    CHECK(res.pass);
    for (const auto& r : res.rows) {
        CHECK(r.pass == (r.samples > 0 && r.max_abs <= r.tolerance));
        CHECK(r.rms <= r.max_abs + 1e-300);
    }
}

TEST_CASE("suite: identical bytes across repeats and worker counts") {
    SurfaceSpec spec = expand_builtin("sphere", {{"radius", "1+0.25*t"}});
    GridSpec grid = small_grid(12, {0.0, 0.5});
    SuiteTolerances tol;
    std::string a = report_json(spec, grid, tol, run_suite(spec, grid, tol, 1));
    std::string b = report_json(spec, grid, tol, run_suite(spec, grid, tol, 1));
    std::string c = report_json(spec, grid, tol, run_suite(spec, grid, tol, 3));
    std::string d = report_json(spec, grid, tol, run_suite(spec, grid, tol, 5));
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a == d);
    CHECK(a.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("suite: tolerance plumbing only flips pass flags") {
    SurfaceSpec spec = expand_builtin("sphere", {});
    GridSpec grid = small_grid(16, {0.0});
    SuiteResult base = run_suite(spec, grid, SuiteTolerances{});
    REQUIRE(base.pass);

    SuiteTolerances tight{1e-13, 1e-8};  // first-class rows squeezed under the noise floor
    SuiteResult squeezed = run_suite(spec, grid, tight);
    CHECK_FALSE(squeezed.pass);
    REQUIRE(squeezed.rows.size() == base.rows.size());
    bool some_flipped = false;
    for (std::size_t k = 0; k < base.rows.size(); ++k) {
        // residual values are untouched; only tolerances and verdicts moved
        CHECK(squeezed.rows[k].max_abs == base.rows[k].max_abs);
        CHECK(squeezed.rows[k].rms == base.rows[k].rms);
        CHECK(squeezed.rows[k].pass == (squeezed.rows[k].samples > 0 &&
                                        squeezed.rows[k].max_abs <= squeezed.rows[k].tolerance));
        if (base.rows[k].pass && !squeezed.rows[k].pass) {
            some_flipped = true;
            CHECK(squeezed.rows[k].max_abs > squeezed.rows[k].tolerance);
        }
        // tightening can only turn pass into fail, never the reverse
        bool loosened = !base.rows[k].pass && squeezed.rows[k].pass;
        CHECK_FALSE(loosened);
    }
    CHECK(some_flipped);
}

TEST_CASE("suite: rejects malformed grids and times") {
    SurfaceSpec spec = expand_builtin("sphere", {});
    SuiteTolerances tol;
    GridSpec no_times = small_grid(8, {});
    CHECK_THROWS_AS(run_suite(spec, no_times, tol), Error);
    GridSpec tiny = small_grid(2, {0.0});
    CHECK_THROWS_AS(run_suite(spec, tiny, tol), Error);
    GridSpec bad_order = small_grid(8, {0.0});
    bad_order.order = 2;
    CHECK_THROWS_AS(run_suite(spec, bad_order, tol), Error);
}

TEST_CASE("export: catalog, shapes, and the eight temporal components") {
    SurfaceSpec spec = expand_builtin("translating-sphere", {});
    GridSpec grid = small_grid(8, {0.0});
    CHECK(quantity_catalog() ==
          std::vector<std::string>{"frame", "cms", "temporal_curvature", "accelerations",
                                   "energy"});
    for (const std::string& name : quantity_catalog()) {
        FieldExport fe = export_quantity(spec, grid, 0.0, name);
        CHECK(fe.values.size() ==
              static_cast<std::size_t>(fe.nu) * static_cast<std::size_t>(fe.nv) *
                  fe.components.size());
        CHECK(fe.u.size() == static_cast<std::size_t>(fe.nu) * static_cast<std::size_t>(fe.nv));
    }
    FieldExport tc = export_quantity(spec, grid, 0.0, "temporal_curvature");
    CHECK(tc.components.size() == 8);
    CHECK_THROWS_WITH_AS(static_cast<void>(export_quantity(spec, grid, 0.0, "bogus")),
                         doctest::Contains("available: frame, cms"), Error);
}

TEST_CASE("export: csv and structured renderings agree token for token") {
    SurfaceSpec spec = expand_builtin("torus", {{"minor", "0.3+0.1*t"}});
    GridSpec grid = small_grid(6, {0.2});
    FieldExport fe = export_quantity(spec, grid, 0.2, "cms");
    std::string csv = field_csv(fe);
    nlohmann::json doc = nlohmann::json::parse(field_json(fe));

    CHECK(doc["quantity"] == "cms");
    CHECK(doc["grid"]["nu"] == fe.nu);
    REQUIRE(doc["nodes"].size() == static_cast<std::size_t>(fe.nu * fe.nv));

    std::vector<std::string> lines = split(csv, '\n');
    REQUIRE(lines.size() == static_cast<std::size_t>(fe.nu * fe.nv) + 2);  // header + blank tail
    std::vector<std::string> header = split(lines[0], ',');
    REQUIRE(header.size() == 7 + fe.components.size());
    CHECK(header[0] == "i");
    CHECK(header[7] == fe.components[0].name);

    for (std::size_t k = 0; k < doc["nodes"].size(); ++k) {
        const auto& node = doc["nodes"][k];
        std::vector<std::string> cells = split(lines[k + 1], ',');
        REQUIRE(cells.size() == header.size());
        CHECK(cells[0] == std::to_string(node["i"].get<int>()));
        CHECK(cells[1] == std::to_string(node["j"].get<int>()));
        CHECK(cells[2] == num17(node["u"].get<double>()));
        CHECK(cells[3] == num17(node["v"].get<double>()));
        CHECK(cells[4] == num17(node["x"].get<double>()));
        CHECK(cells[5] == num17(node["y"].get<double>()));
        CHECK(cells[6] == num17(node["z"].get<double>()));
        for (std::size_t m = 0; m < fe.components.size(); ++m)
            CHECK(cells[7 + m] == num17(node["values"][m].get<double>()));
    }
}

TEST_CASE("export: identical bytes across repeats") {
    SurfaceSpec spec = expand_builtin("ellipsoid", {});
    GridSpec grid = small_grid(6, {0.1});
    FieldExport a = export_quantity(spec, grid, 0.1, "accelerations");
    FieldExport b = export_quantity(spec, grid, 0.1, "accelerations");
    CHECK(field_csv(a) == field_csv(b));
    CHECK(field_json(a) == field_json(b));
}

TEST_CASE("report renderers: structured document parses and echoes the inputs") {
    SurfaceSpec spec = expand_builtin("cylinder", {{"radius", "1+0.3*t"}});
    GridSpec grid = small_grid(10, {0.0, 0.5});
    SuiteTolerances tol{1e-10, 1e-8};
    SuiteResult res = run_suite(spec, grid, tol);
    nlohmann::json doc = nlohmann::json::parse(report_json(spec, grid, tol, res));
    CHECK(doc["tool"] == "cmslab");
    CHECK(doc["surface"]["name"] == "cylinder");
    CHECK(doc["grid"]["nu"] == 10);
    CHECK(doc["grid"]["times"].size() == 2);
    CHECK(doc["tolerances"]["first"].get<double>() == 1e-10);
    CHECK(doc["checks"].size() == res.rows.size());
    CHECK(doc["pass"] == res.pass);
    CHECK(!doc.contains("timestamp"));
    for (std::size_t k = 0; k < res.rows.size(); ++k) {
        CHECK(doc["checks"][k]["id"] == res.rows[k].id);
        CHECK(doc["checks"][k]["max_abs"].get<double>() == res.rows[k].max_abs);
        CHECK(doc["checks"][k]["pass"] == res.rows[k].pass);
    }
    std::string table = report_table(res);
    CHECK(table.find("overall: PASS") != std::string::npos);
    CHECK(table.find("normal-unit") != std::string::npos);
}
