#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cmslab/export.hpp"
#include "cmslab/kinematics.hpp"
#include "cmslab/suite.hpp"

namespace {

std::string num17(double x) {
    char b[48];
    std::snprintf(b, sizeof b, "%.17g", x);
    return b;
}

cmslab::SurfaceSpec resolve_surface(const std::string& arg,
                                    const std::vector<std::string>& params) {
    std::map<std::string, std::string> kv;
    for (const std::string& p : params) {
        auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0)
            throw cmslab::Error("--param expects key=value, got '" + p + "'");
        kv[p.substr(0, eq)] = p.substr(eq + 1);
    }
    const std::string prefix = "builtin:";
    if (arg.rfind(prefix, 0) == 0) return cmslab::expand_builtin(arg.substr(prefix.size()), kv);
    cmslab::SurfaceSpec spec = cmslab::load_surface_file(arg);
    for (const auto& [key, value] : kv) {
        if (!spec.params.count(key))
            throw cmslab::Error("surface '" + spec.name + "' has no parameter '" + key + "'");
        std::size_t used = 0;
        double num = std::stod(value, &used);
        if (used != value.size())
            throw cmslab::Error("parameter override '" + key + "' must be numeric, got '" +
                                value + "'");
        spec.params[key] = num;
    }
    return spec;
}

std::pair<int, int> parse_grid(const std::string& s) {
    auto x = s.find_first_of("xX");
    try {
        if (x != std::string::npos) {
            std::size_t u1 = 0, u2 = 0;
            int nu = std::stoi(s.substr(0, x), &u1);
            int nv = std::stoi(s.substr(x + 1), &u2);
            if (u1 == x && u2 == s.size() - x - 1) return {nu, nv};
        }
    } catch (const std::exception&) {
    }
    throw cmslab::Error("--grid expects NUxNV (e.g. 64x64), got '" + s + "'");
}

std::vector<double> parse_times(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
        std::size_t used = 0;
        try {
            out.push_back(std::stod(tok, &used));
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != tok.size())
            throw cmslab::Error("--times expects comma-separated numbers, got '" + s + "'");
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cmslab::Error("cannot open '" + path + "' for writing");
    out << content;
    if (!out.flush()) throw cmslab::Error("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cmslab: a numerical laboratory for the calculus of moving surfaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "cmslab 0.1.0");

    std::string surface_arg, grid_arg = "64x64", times_arg = "0,0.25,0.5";
    std::vector<std::string> param_args;
    int order = 4, workers = 1;
    double pole_offset = 1e-3;

    auto add_surface_opts = [&](CLI::App* cmd) {
        cmd->add_option("--surface", surface_arg,
                        "surface document file, or builtin:NAME "
                        "(sphere|cylinder|torus|ellipsoid|translating-sphere)")
            ->required();
        cmd->add_option("--param", param_args,
                        "surface parameter key=value (repeatable); builtin radius-like "
                        "parameters accept expressions in t");
        cmd->add_option("--order", order, "jet order (3 or 4)")->check(CLI::IsMember({3, 4}));
        cmd->add_option("--pole-offset", pole_offset,
                        "inset from degenerate chart endpoints, in chart units");
    };

    // verify
    auto* verify = app.add_subcommand("verify", "sweep the identity catalog over a grid");
    add_surface_opts(verify);
    double tol_first = 1e-10, tol_third = 1e-8;
    std::string report_path;
    verify->add_option("--grid", grid_arg, "grid size NUxNV");
    verify->add_option("--times", times_arg, "comma-separated time slices");
    verify->add_option("--tol-first", tol_first, "base tolerance, first-derivative identities");
    verify->add_option("--tol-third", tol_third, "base tolerance, third-derivative identities");
    verify->add_option("--report", report_path, "write the structured report here");
    verify->add_option("--workers", workers, "worker threads (results are identical for any count)")
        ->check(CLI::PositiveNumber);

    // fields
    auto* fields = app.add_subcommand("fields", "export field values over a grid");
    add_surface_opts(fields);
    double t_arg = 0.0;
    std::string quantity_arg = "all", format_arg = "csv", out_dir = ".";
    fields->add_option("--t", t_arg, "time slice");
    fields->add_option("--grid", grid_arg, "grid size NUxNV");
    fields->add_option("--quantity", quantity_arg, "quantity name(s), comma-separated, or 'all'");
    fields->add_option("--format", format_arg, "output format")
        ->check(CLI::IsMember({"csv", "structured"}));
    fields->add_option("--out", out_dir, "output directory");

    // energy
    auto* energy = app.add_subcommand("energy", "kinetic energy, its rate, and the work-energy residual");
    add_surface_opts(energy);
    double rho = 1.0;
    std::string ax, ay, az, energy_out;
    energy->add_option("--t", t_arg, "time slice");
    energy->add_option("--grid", grid_arg, "grid size NUxNV");
    energy->add_option("--density", rho, "constant mass density")->required();
    energy->add_option("--alpha-x", ax, "force per unit mass, x component (expression)");
    energy->add_option("--alpha-y", ay, "force per unit mass, y component (expression)");
    energy->add_option("--alpha-z", az, "force per unit mass, z component (expression)");
    energy->add_option("--out", energy_out, "write the energy report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 2;
    }

    try {
        cmslab::SurfaceSpec spec = resolve_surface(surface_arg, param_args);
        auto [nu, nv] = parse_grid(grid_arg);
        cmslab::GridSpec grid;
        grid.nu = nu;
        grid.nv = nv;
        grid.order = order;
        grid.pole_offset = pole_offset;

        if (*verify) {
            grid.times = parse_times(times_arg);
            cmslab::SuiteTolerances tol{tol_first, tol_third};
            cmslab::SuiteResult res = cmslab::run_suite(spec, grid, tol, workers);
            std::fputs(cmslab::report_table(res).c_str(), stdout);
            if (!report_path.empty())
                write_file(report_path, cmslab::report_json(spec, grid, tol, res));
            return res.pass ? 0 : 1;
        }

        if (*fields) {
            grid.times = {t_arg};
            std::vector<std::string> wanted;
            if (quantity_arg == "all") {
                wanted = cmslab::quantity_catalog();
            } else {
                std::size_t pos = 0;
                while (pos <= quantity_arg.size()) {
                    auto comma = quantity_arg.find(',', pos);
                    wanted.push_back(quantity_arg.substr(
                        pos, comma == std::string::npos ? std::string::npos : comma - pos));
                    if (comma == std::string::npos) break;
                    pos = comma + 1;
                }
            }
            std::filesystem::create_directories(out_dir);
            for (const std::string& name : wanted) {
                cmslab::FieldExport fe = cmslab::export_quantity(spec, grid, t_arg, name);
                std::string ext = format_arg == "csv" ? ".csv" : ".json";
                std::string path = (std::filesystem::path(out_dir) / (name + ext)).string();
                write_file(path, format_arg == "csv" ? cmslab::field_csv(fe)
                                                     : cmslab::field_json(fe));
                std::printf("wrote %s (%d x %d nodes, %zu components)\n", path.c_str(), fe.nu,
                            fe.nv, fe.components.size());
            }
            return 0;
        }

        // energy
        grid.times = {t_arg};
        int n_alpha = (!ax.empty()) + (!ay.empty()) + (!az.empty());
        if (n_alpha != 0 && n_alpha != 3)
            throw cmslab::Error("supply all three of --alpha-x/--alpha-y/--alpha-z or none");
        cmslab::EnergyReport rep;
        if (n_alpha == 3) {
            std::array<cmslab::Expr, 3> force = {cmslab::Expr::parse(ax), cmslab::Expr::parse(ay),
                                                 cmslab::Expr::parse(az)};
            rep = cmslab::surface_energy(spec, grid, t_arg, rho, &force);
        } else {
            rep = cmslab::surface_energy(spec, grid, t_arg, rho);
        }
        std::string doc = "{\n";
        doc += "  \"surface\": " + cmslab::surface_doc(spec) + ",\n";
        doc += "  \"time\": " + num17(t_arg) + ",\n";
        doc += "  \"density\": " + num17(rho) + ",\n";
        doc += "  \"grid\": {\"nu\": " + std::to_string(grid.nu) +
               ", \"nv\": " + std::to_string(grid.nv) + ", \"order\": " + std::to_string(order) +
               "},\n";
        doc += "  \"kinetic\": " + num17(rep.kinetic) + ",\n";
        doc += "  \"rate_formula\": " + num17(rep.rate_formula) + ",\n";
        doc += "  \"rate_fd\": " + num17(rep.rate_fd) + ",\n";
        doc += "  \"power\": " + num17(rep.power) + ",\n";
        doc += "  \"work_energy_max\": " + num17(rep.work_energy_max) + ",\n";
        doc += "  \"work_energy_integral\": " + num17(rep.work_energy_integral) + ",\n";
        doc += "  \"has_force\": " + std::string(rep.has_force ? "true" : "false") + ",\n";
        doc += "  \"skipped\": " + std::to_string(rep.skipped) + "\n}\n";
        if (!energy_out.empty()) write_file(energy_out, doc);
        std::fputs(doc.c_str(), stdout);
        if (rep.skipped > 0)
            std::fprintf(stderr, "warning: %d quadrature nodes were skipped; integrals may be "
                                 "degraded\n",
                         rep.skipped);
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
