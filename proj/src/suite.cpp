#include "cmslab/suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <thread>

#include "cmslab/ambient.hpp"
#include "cmslab/cms.hpp"
#include "cmslab/frame.hpp"
#include "cmslab/kinematics.hpp"
#include "cmslab/tensorfield.hpp"

namespace cmslab {

namespace {

struct RowSpec {
    std::string id;
    std::string description;
    std::string anchor;
    int cls;      // 1: first-derivative class, 3: third-derivative class
    double mult;  // 0.01, 1, or 10
    int stride;   // node stride in each chart direction
};

struct Catalog {
    std::vector<RowSpec> rows;
    std::map<std::string, int> index;

    int add(std::string id, std::string desc, std::string anchor, int cls, double mult,
            int stride) {
        int k = static_cast<int>(rows.size());
        index.emplace(id, k);
        rows.push_back({std::move(id), std::move(desc), std::move(anchor), cls, mult, stride});
        return k;
    }
    int at(const std::string& id) const { return index.at(id); }
};

const char* ambient_suffix(AmbientKind k) {
    switch (k) {
        case AmbientKind::Cartesian: return "cartesian";
        case AmbientKind::Cylindrical: return "cylindrical";
        default: return "spherical";
    }
}

Catalog build_catalog() {
    Catalog c;
    c.add("normal-unit", "unit length of the surface normal", "N.N = 1", 1, 0.01, 1);
    c.add("normal-tangent", "normal orthogonal to the tangent basis", "N.S_a = 0", 1, 0.01, 1);
    c.add("curvature-symmetric", "symmetry of the curvature tensor", "B_ab = B_ba", 1, 1, 1);
    c.add("curvature-two-routes", "curvature from the projection route against the normal-derivative route",
          "N.d_a d_b R = -S_b.d_a N", 1, 10, 1);
    c.add("metric-compatibility", "covariant constancy of the metric", "cov_c S_ab = 0", 1, 1, 2);
    c.add("area-compatibility", "covariant constancy of the area tensors",
          "cov_c eps_ab = 0 and cov_c eps^ab = 0", 1, 10, 2);
    c.add("codazzi", "exchange symmetry of the curvature derivative", "cov_a B_bg = cov_b B_ag",
          1, 10, 2);
    c.add("gauss-curvature", "connection curvature against the curvature-product form",
          "R^d_gab = B^d_a B_gb - B^d_b B_ga", 3, 1, 2);
    c.add("riemann-symmetries", "index antisymmetries and the cyclic identity of the curvature",
          "R_dgab = -R_gdab = -R_dgba; cyclic sum over (gab) = 0", 1, 10, 2);
    c.add("commutator-scalar", "second covariant derivatives commute on scalars",
          "(cov_a cov_b - cov_b cov_a) psi = 0", 1, 1, 4);
    c.add("commutator-vector", "curvature commutator on vector fields",
          "(cov_a cov_b - cov_b cov_a) psi^d = R^d_gab psi^g", 1, 10, 4);
    c.add("commutator-covector", "curvature commutator on covector fields",
          "(cov_a cov_b - cov_b cov_a) psi_d = -R^g_dab psi_g", 1, 10, 4);
    c.add("metric-rate", "time derivative of the metric against its strain form",
          "dt S_ab = cov_a V_b + cov_b V_a - 2 C B_ab; dt S^ab = -K^ab", 1, 10, 1);
    c.add("table-tangent-basis", "invariant rate of the tangent basis", "ddt S_a = N grad_a C",
          1, 10, 2);
    c.add("table-dual-tangent-basis", "invariant rate of the dual tangent basis",
          "ddt S^a = N grad^a C", 1, 10, 2);
    c.add("table-normal", "invariant rate of the normal", "ddt N = -S^a grad_a C", 1, 10, 2);
    c.add("table-mixed-curvature", "invariant rate of the mixed curvature",
          "ddt B^a_b = grad_b grad^a C + C B^a_g B^g_b", 3, 1, 2);
    c.add("table-metric", "invariant rate annihilates the metric", "ddt S_ab = 0", 1, 10, 2);
    c.add("table-inverse-metric", "invariant rate annihilates the inverse metric",
          "ddt S^ab = 0", 1, 10, 2);
    c.add("table-area-tensor", "invariant rate annihilates the area tensor", "ddt eps_ab = 0",
          1, 10, 2);
    c.add("table-dual-area-tensor", "invariant rate annihilates the dual area tensor",
          "ddt eps^ab = 0", 1, 10, 2);
    c.add("table-kronecker", "invariant rate annihilates the mixed kronecker", "ddt delta^a_b = 0",
          1, 10, 2);
    c.add("temporal-curvature-two-routes", "temporal curvature: defining combination against the reduced form",
          "dt Gamma^b_ag + R^b_gad V^d - cov_a Gdot^b_g = B_ag grad^b C - B^b_a grad_g C", 3, 1, 1);
    c.add("temporal-curvature-trace", "trace of the temporal curvature vanishes", "Rdot^b_ab = 0",
          1, 10, 1);
    c.add("temporal-curvature-scalar", "scalar magnitude of the vanishing trace",
          "sqrt(S^ab tr_a tr_b) = 0 with tr_a = Rdot^b_ab", 1, 10, 1);
    c.add("semi-commutation", "time/surface derivative exchange on scalars",
          "(ddt cov_a - cov_a ddt) psi = C B^g_a cov_g psi", 3, 1, 8);
    c.add("cms-commutator-vector", "temporal curvature commutator on vector fields",
          "(ddt cov_a - cov_a ddt - C B^g_a cov_g) psi^b = Rdot^b_ag psi^g", 3, 10, 8);
    c.add("cms-commutator-covector", "temporal curvature commutator on covector fields",
          "(ddt cov_a - cov_a ddt - C B^g_a cov_g) psi_b = -Rdot^g_ab psi_g", 3, 10, 8);
    c.add("second-order", "closed form of the repeated invariant time derivative on scalars",
          "ddt(ddt psi) = dtt psi - (dt V^a - V^b d_b V^a) d_a psi - V^a (2 dt d_a psi - V^b d_b d_a psi)",
          3, 1, 8);
    c.add("connection-rate", "time derivative of the connection against its covariant closed form",
          "dt Gamma^b_ag = cov_a Gdot^b_g - V^e R^b_gae + grad^b (C B_ag) - grad_g (C B^b_a)",
          3, 1, 4);
    c.add("curvature-rate", "invariant rate of the lowered curvature",
          "ddt B_ab = cov_a cov_b C + C B^g_a B_gb", 3, 1, 4);
    c.add("curvature-gradient-exchange", "mixed curvature-gradient symmetry",
          "B_ag grad^g C = B^g_a grad_g C", 1, 1, 4);
    for (AmbientKind k :
         {AmbientKind::Cartesian, AmbientKind::Cylindrical, AmbientKind::Spherical}) {
        std::string sfx = ambient_suffix(k);
        c.add("ambient-flatness-" + sfx,
              "flat-space cancellation of the ambient connection along the surface (" + sfx + ")",
              "dt(Z^j_a Ga^i_jk) = cov_a(V^j Ga^i_jk)", 3, 10, 4);
        c.add("table-ambient-basis-" + sfx,
              "invariant rate annihilates the ambient basis (" + sfx + ")", "ddt Z_i = 0", 3, 10,
              4);
        c.add("table-ambient-metric-" + sfx,
              "invariant rate annihilates the ambient metric (" + sfx + ")", "ddt Z_ij = 0", 3, 10,
              4);
    }
    c.add("tri-velocity-decomposition", "velocity reassembled from normal and tangential parts",
          "V = C N + V^a S_a", 1, 0.01, 1);
    c.add("tri-velocity-frame-split", "advective velocity rate split through the moving frame",
          "ddt V = N (ddt C + V^a grad_a C) + S_a (ddt V^a - C grad^a C)", 1, 10, 1);
    c.add("tri-velocity-projections", "normal and tangential projections of the velocity rate",
          "ddt C = N.ddt V - V^a grad_a C; ddt V^a = S^a.ddt V + C grad^a C", 1, 10, 1);
    c.add("tri-acceleration", "invariant acceleration reassembled from its projections",
          "Atri^i = N^i (Ahat + V^a grad_a C) + Z^i_a (Atilde^a - C grad^a C)", 1, 10, 4);
    c.add("normal-shift", "projection gap paired through the normal-tangent commutator",
          "Atri^i - N^i Ahat - Z^i_a Atilde^a = (NT)^{ij}_a V_j grad^a C", 3, 1, 4);
    c.add("epsilon-pairing", "area-weighted pairing of the normal-tangent commutator",
          "(1/2) eps_ijk eps^ab (NT)^{ij}_a = Z^b_k", 1, 1, 4);
    c.add("epsilon-annihilation", "ambient metric annihilates the antisymmetric commutator",
          "Z_ij (NT)^{ij}_a = 0", 1, 0.01, 4);
    return c;
}

struct Accum {
    double max_abs = 0.0;
    double mu = 0.0, mv = 0.0;
    double sumsq = 0.0;
    long n = 0;
    long skipped = 0;
};

/// Pre-parsed random probe fields shared by every node (read-only after setup).
struct ProbeFields {
    std::vector<Expr> comm_scalar;             // scalar commutator probes
    std::vector<std::array<Expr, 2>> comm_vec; // vector commutator probes
    std::vector<std::array<Expr, 2>> comm_cov;
    std::vector<Expr> semi;
    std::vector<std::array<Expr, 2>> cms_vec;
    std::vector<std::array<Expr, 2>> cms_cov;
    std::vector<Expr> second;
};

ProbeFields make_probes() {
    ProbeFields p;
    for (std::uint32_t k = 0; k < 4; ++k) p.comm_scalar.push_back(random_field_expr(3100 + k));
    for (std::uint32_t k = 0; k < 4; ++k)
        p.comm_vec.push_back({random_field_expr(3200 + 2 * k), random_field_expr(3201 + 2 * k)});
    for (std::uint32_t k = 0; k < 4; ++k)
        p.comm_cov.push_back({random_field_expr(3300 + 2 * k), random_field_expr(3301 + 2 * k)});
    for (std::uint32_t k = 0; k < 6; ++k) p.semi.push_back(random_field_expr(4000 + k));
    for (std::uint32_t k = 0; k < 4; ++k)
        p.cms_vec.push_back({random_field_expr(5000 + 2 * k), random_field_expr(5001 + 2 * k)});
    for (std::uint32_t k = 0; k < 4; ++k)
        p.cms_cov.push_back({random_field_expr(5100 + 2 * k), random_field_expr(5101 + 2 * k)});
    for (std::uint32_t k = 0; k < 20; ++k) p.second.push_back(random_field_expr(9000 + k));
    return p;
}

struct RowIds {
    int normal_unit, normal_tangent, curv_sym, curv_two;
    int metric_compat, area_compat, codazzi, gauss, riemann_sym;
    int comm_scalar, comm_vec, comm_cov;
    int metric_rate;
    int table_first;  // 9 consecutive rows in table order
    int temporal_two, temporal_trace, temporal_scalar;
    int semi, cms_vec, cms_cov, second;
    int connection_rate, curvature_rate, gradient_exchange;
    int ambient_first;  // 3 kinds x 3 consecutive rows
    int tri_vel_dec, tri_vel_split, tri_vel_proj;
    int tri_acc, normal_shift, eps_pair, eps_annih;
    int hidden_bare;  // extra slot, not a report row
};

RowIds resolve(const Catalog& c) {
    RowIds r;
    r.normal_unit = c.at("normal-unit");
    r.normal_tangent = c.at("normal-tangent");
    r.curv_sym = c.at("curvature-symmetric");
    r.curv_two = c.at("curvature-two-routes");
    r.metric_compat = c.at("metric-compatibility");
    r.area_compat = c.at("area-compatibility");
    r.codazzi = c.at("codazzi");
    r.gauss = c.at("gauss-curvature");
    r.riemann_sym = c.at("riemann-symmetries");
    r.comm_scalar = c.at("commutator-scalar");
    r.comm_vec = c.at("commutator-vector");
    r.comm_cov = c.at("commutator-covector");
    r.metric_rate = c.at("metric-rate");
    r.table_first = c.at("table-tangent-basis");
    r.temporal_two = c.at("temporal-curvature-two-routes");
    r.temporal_trace = c.at("temporal-curvature-trace");
    r.temporal_scalar = c.at("temporal-curvature-scalar");
    r.semi = c.at("semi-commutation");
    r.cms_vec = c.at("cms-commutator-vector");
    r.cms_cov = c.at("cms-commutator-covector");
    r.second = c.at("second-order");
    r.connection_rate = c.at("connection-rate");
    r.curvature_rate = c.at("curvature-rate");
    r.gradient_exchange = c.at("curvature-gradient-exchange");
    r.ambient_first = c.at("ambient-flatness-cartesian");
    r.tri_vel_dec = c.at("tri-velocity-decomposition");
    r.tri_vel_split = c.at("tri-velocity-frame-split");
    r.tri_vel_proj = c.at("tri-velocity-projections");
    r.tri_acc = c.at("tri-acceleration");
    r.normal_shift = c.at("normal-shift");
    r.eps_pair = c.at("epsilon-pairing");
    r.eps_annih = c.at("epsilon-annihilation");
    r.hidden_bare = static_cast<int>(c.rows.size());
    return r;
}

// table label order as produced by frame_derivative_table
const char* kTableLabels[9] = {"tangent-basis", "dual-tangent-basis", "normal",
                               "mixed-curvature", "metric", "inverse-metric",
                               "area-tensor", "dual-area-tensor", "kronecker"};

struct NodeEvaluator {
    const SurfaceSpec& spec;
    const Catalog& cat;
    const RowIds& ids;
    const ProbeFields& probes;
    int order;

    bool gate(int row, int i, int j) const {
        int s = cat.rows[static_cast<std::size_t>(row)].stride;
        return (i % s == 0) && (j % s == 0);
    }

    void record(std::vector<Accum>& acc, int row, double r, double u, double v) const {
        Accum& a = acc[static_cast<std::size_t>(row)];
        if (r > a.max_abs) {
            a.max_abs = r;
            a.mu = u;
            a.mv = v;
        }
        a.sumsq += r * r;
        a.n += 1;
    }

    void eval(std::vector<Accum>& acc, int i, int j, double u, double v, double t) const {
        FrameSample f;
        try {
            f = sample_frame(spec, u, v, t, order);
        } catch (const std::exception&) {
            for (std::size_t r = 0; r < cat.rows.size(); ++r)
                if (gate(static_cast<int>(r), i, j)) acc[r].skipped += 1;
            return;
        }
        CmsSample c = cms_sample(f);

        record(acc, ids.normal_unit, check_normal_unit(f), u, v);
        record(acc, ids.normal_tangent, check_normal_orthogonal(f), u, v);
        record(acc, ids.curv_sym, check_curvature_symmetric(f), u, v);
        record(acc, ids.curv_two, check_curvature_two_routes(f), u, v);
        record(acc, ids.metric_rate, metric_dot_two_ways(f, c), u, v);

        if (gate(ids.metric_compat, i, j)) {
            record(acc, ids.metric_compat, check_metric_compat(f), u, v);
            record(acc, ids.area_compat, check_levi_civita_compat(f), u, v);
            record(acc, ids.codazzi, check_codazzi(f), u, v);
            record(acc, ids.gauss, check_gauss_vs_christoffel(f), u, v);
            record(acc, ids.riemann_sym, check_bianchi(f), u, v);
            auto table = frame_derivative_table(f, c, nullptr);
            for (int k = 0; k < 9; ++k) {
                // rows arrive in catalog order; match by label to stay robust
                double worst = 0.0;
                for (const auto& [label, resid] : table)
                    if (label == kTableLabels[k]) worst = std::max(worst, resid);
                record(acc, ids.table_first + k, worst, u, v);
            }
        }

        if (gate(ids.comm_scalar, i, j)) {
            double ws = 0.0, wv = 0.0, wc = 0.0;
            for (const Expr& e : probes.comm_scalar)
                ws = std::max(ws, riemann_commutator_scalar(f, e.eval_jet(u, v, t, order)));
            for (const auto& pair : probes.comm_vec) {
                Jet psi[2] = {pair[0].eval_jet(u, v, t, order), pair[1].eval_jet(u, v, t, order)};
                wv = std::max(wv, riemann_commutator_vector(f, psi));
            }
            for (const auto& pair : probes.comm_cov) {
                Jet psi[2] = {pair[0].eval_jet(u, v, t, order), pair[1].eval_jet(u, v, t, order)};
                wc = std::max(wc, riemann_commutator_covector(f, psi));
            }
            record(acc, ids.comm_scalar, ws, u, v);
            record(acc, ids.comm_vec, wv, u, v);
            record(acc, ids.comm_cov, wc, u, v);
        }

        // temporal curvature, both routes, shared by three rows
        double rd[2][2][2], rr[2][2][2];
        temporal_curvature_def(f, c, rd);
        temporal_curvature_reduced(f, c, rr);
        double two_routes = 0.0;
        for (int b = 0; b < 2; ++b)
            for (int a = 0; a < 2; ++a)
                for (int g = 0; g < 2; ++g)
                    two_routes = std::max(two_routes, std::fabs(rd[b][a][g] - rr[b][a][g]));
        record(acc, ids.temporal_two, two_routes, u, v);
        double tr[2] = {rd[0][0][0] + rd[1][0][1], rd[0][1][0] + rd[1][1][1]};
        record(acc, ids.temporal_trace, std::max(std::fabs(tr[0]), std::fabs(tr[1])), u, v);
        double radicand = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                radicand += f.metric_inv[a][b].value() * tr[a] * tr[b];
        record(acc, ids.temporal_scalar, std::sqrt(std::max(radicand, 0.0)), u, v);

        if (gate(ids.semi, i, j)) {
            double wsemi = 0.0, wvec = 0.0, wcov = 0.0, wsec = 0.0;
            for (const Expr& e : probes.semi)
                wsemi = std::max(wsemi, semi_commutation_scalar(f, c, e.eval_jet(u, v, t, order)));
            for (const auto& pair : probes.cms_vec) {
                Jet psi[2] = {pair[0].eval_jet(u, v, t, order), pair[1].eval_jet(u, v, t, order)};
                wvec = std::max(wvec, commutator_vector_check(f, c, psi));
            }
            for (const auto& pair : probes.cms_cov) {
                Jet psi[2] = {pair[0].eval_jet(u, v, t, order), pair[1].eval_jet(u, v, t, order)};
                wcov = std::max(wcov, commutator_covector_check(f, c, psi));
            }
            for (const Expr& e : probes.second)
                wsec = std::max(wsec, second_order_scalar(c, e.eval_jet(u, v, t, order)));
            record(acc, ids.semi, wsemi, u, v);
            record(acc, ids.cms_vec, wvec, u, v);
            record(acc, ids.cms_cov, wcov, u, v);
            record(acc, ids.second, wsec, u, v);
        }

        if (gate(ids.connection_rate, i, j)) {
            record(acc, ids.connection_rate, dt_christoffel_two_ways(f, c), u, v);
            double proj[3];
            frame_commutation_projections(f, c, proj);
            record(acc, ids.curvature_rate, proj[0], u, v);
            record(acc, ids.gradient_exchange, proj[2], u, v);
        }

        AmbientFrame cart;
        bool have_cart = false;
        int kind_index = 0;
        for (AmbientKind kind :
             {AmbientKind::Cartesian, AmbientKind::Cylindrical, AmbientKind::Spherical}) {
            int base = ids.ambient_first + 3 * kind_index;
            ++kind_index;
            if (!gate(base, i, j)) continue;
            try {
                AmbientFrame amb = build_ambient(kind, f);
                if (kind == AmbientKind::Cartesian) {
                    cart = amb;
                    have_cart = true;
                }
                record(acc, base, ambient_temporal_curvature(f, amb), u, v);
                auto table = frame_derivative_table(f, c, &amb);
                double basis_resid = 0.0, metric_resid = 0.0;
                for (const auto& [label, resid] : table) {
                    if (label == "ambient-basis") basis_resid = std::max(basis_resid, resid);
                    if (label == "ambient-metric") metric_resid = std::max(metric_resid, resid);
                }
                record(acc, base + 1, basis_resid, u, v);
                record(acc, base + 2, metric_resid, u, v);
            } catch (const std::exception&) {
                for (int k = 0; k < 3; ++k) acc[static_cast<std::size_t>(base + k)].skipped += 1;
            }
        }

        TriVelocityCheck tv = tri_velocity_check(f, c);
        record(acc, ids.tri_vel_dec, tv.decomposition, u, v);
        record(acc, ids.tri_vel_split, tv.frame_split, u, v);
        record(acc, ids.tri_vel_proj, tv.projections, u, v);

        if (gate(ids.tri_acc, i, j)) {
            if (!have_cart) cart = build_ambient(AmbientKind::Cartesian, f);
            record(acc, ids.tri_acc, tri_acceleration_check(f, c, cart), u, v);
            record(acc, ids.normal_shift, normal_shift_check(f, c, cart), u, v);
            EpsilonPairing ep = epsilon_pairing(f, cart);
            record(acc, ids.eps_pair, ep.tensor_weighted, u, v);
            record(acc, ids.eps_annih, ep.metric_annihilation, u, v);
            record(acc, ids.hidden_bare, ep.bare_symbols, u, v);
        }
    }
};

std::string num17(double x) {
    char b[48];
    std::snprintf(b, sizeof b, "%.17g", x);
    return b;
}

std::string num3e(double x) {
    char b[32];
    std::snprintf(b, sizeof b, "%.3e", x);
    return b;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char b[8];
                    std::snprintf(b, sizeof b, "\\u%04x", ch);
                    out += b;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

}  // namespace

SuiteResult run_suite(const SurfaceSpec& spec, const GridSpec& grid, const SuiteTolerances& tol,
                      int workers) {
    if (grid.times.empty()) throw Error("times must be non-empty");
    for (double t : grid.times)
        if (!std::isfinite(t)) throw Error("times must be finite");
    if (!(tol.first > 0.0) || !(tol.third > 0.0)) throw Error("tolerances must be positive");

    const Catalog cat = build_catalog();
    const RowIds ids = resolve(cat);
    const ProbeFields probes = make_probes();
    const std::size_t nslots = cat.rows.size() + 1;  // + hidden bare-epsilon slot
    NodeEvaluator ev{spec, cat, ids, probes, grid.order};

    SuiteResult result;
    double bare_max = 0.0, weighted_max = 0.0;
    long total_skipped = 0;

    for (double t : grid.times) {
        const QuadratureGrid q = build_quadrature(spec, grid, t);
        const int nu = static_cast<int>(q.u.x.size());
        const int nv = static_cast<int>(q.v.x.size());

        // one accumulator strip per grid row: workers never share a strip and
        // the final reduction walks strips in a fixed order, so the result is
        // bit-identical for any worker count
        std::vector<std::vector<Accum>> strips(static_cast<std::size_t>(nu),
                                               std::vector<Accum>(nslots));
        auto sweep = [&](int lo, int hi) {
            for (int i = lo; i < hi; ++i)
                for (int j = 0; j < nv; ++j)
                    ev.eval(strips[static_cast<std::size_t>(i)], i, j,
                            q.u.x[static_cast<std::size_t>(i)], q.v.x[static_cast<std::size_t>(j)],
                            t);
        };
        int nth = std::clamp(workers, 1, nu);
        if (nth <= 1) {
            sweep(0, nu);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(nth));
            for (int w = 0; w < nth; ++w) {
                int lo = nu * w / nth, hi = nu * (w + 1) / nth;
                pool.emplace_back(sweep, lo, hi);
            }
            for (auto& th : pool) th.join();
        }

        std::vector<Accum> total(nslots);
        for (int i = 0; i < nu; ++i) {
            for (std::size_t r = 0; r < nslots; ++r) {
                const Accum& a = strips[static_cast<std::size_t>(i)][r];
                Accum& b = total[r];
                if (a.max_abs > b.max_abs) {
                    b.max_abs = a.max_abs;
                    b.mu = a.mu;
                    b.mv = a.mv;
                }
                b.sumsq += a.sumsq;
                b.n += a.n;
                b.skipped += a.skipped;
            }
        }

        for (std::size_t r = 0; r < cat.rows.size(); ++r) {
            const RowSpec& rs = cat.rows[r];
            const Accum& a = total[r];
            ReportRow row;
            row.id = rs.id;
            row.description = rs.description;
            row.anchor = rs.anchor;
            row.time = t;
            row.max_abs = a.max_abs;
            row.rms = a.n > 0 ? std::sqrt(a.sumsq / static_cast<double>(a.n)) : 0.0;
            row.node_u = a.mu;
            row.node_v = a.mv;
            row.tolerance = (rs.cls == 1 ? tol.first : tol.third) * rs.mult;
            row.samples = a.n;
            row.skipped = a.skipped;
            row.pass = a.n > 0 && a.max_abs <= row.tolerance;
            result.pass = result.pass && row.pass;
            total_skipped += a.skipped;
            result.rows.push_back(std::move(row));
        }
        bare_max = std::max(bare_max, total[static_cast<std::size_t>(ids.hidden_bare)].max_abs);
        weighted_max =
            std::max(weighted_max, total[static_cast<std::size_t>(ids.eps_pair)].max_abs);
    }

    result.notes.push_back(
        "epsilon pairing: the identity is satisfied by the area-weighted tensors (max residual " +
        num3e(weighted_max) + "); bare permutation symbols deviate by up to " + num3e(bare_max) +
        " on this surface");
    if (total_skipped > 0)
        result.notes.push_back("skipped " + std::to_string(total_skipped) +
                               " node evaluations where the frame or an ambient system is "
                               "degenerate; see per-row counts");
    return result;
}

std::string report_json(const SurfaceSpec& spec, const GridSpec& grid, const SuiteTolerances& tol,
                        const SuiteResult& result) {
    std::string out;
    out.reserve(result.rows.size() * 320 + 2048);
    out += "{\n  \"tool\": \"cmslab\",\n  \"version\": \"0.1.0\",\n";
    out += "  \"surface\": " + surface_doc(spec) + ",\n";
    out += "  \"grid\": {\"nu\": " + std::to_string(grid.nu) +
           ", \"nv\": " + std::to_string(grid.nv) + ", \"order\": " + std::to_string(grid.order) +
           ", \"pole_offset\": " + num17(grid.pole_offset) + ", \"times\": [";
    for (std::size_t k = 0; k < grid.times.size(); ++k) {
        if (k) out += ", ";
        out += num17(grid.times[k]);
    }
    out += "]},\n";
    out += "  \"tolerances\": {\"first\": " + num17(tol.first) +
           ", \"third\": " + num17(tol.third) + "},\n";
    out += "  \"environment\": {\"compiler\": \"" + json_escape(__VERSION__) +
           "\", \"language\": \"C++20\", \"build\": \"" +
#ifdef NDEBUG
           "release"
#else
           "debug"
#endif
           "\", \"real\": \"IEEE-754 binary64\"},\n";
    out += "  \"checks\": [\n";
    for (std::size_t k = 0; k < result.rows.size(); ++k) {
        const ReportRow& r = result.rows[k];
        out += "    {\"id\": \"" + json_escape(r.id) + "\", \"time\": " + num17(r.time) +
               ", \"description\": \"" + json_escape(r.description) + "\", \"anchor\": \"" +
               json_escape(r.anchor) + "\", \"max_abs\": " + num17(r.max_abs) +
               ", \"rms\": " + num17(r.rms) + ", \"node\": {\"u\": " + num17(r.node_u) +
               ", \"v\": " + num17(r.node_v) + "}, \"tolerance\": " + num17(r.tolerance) +
               ", \"pass\": " + (r.pass ? "true" : "false") +
               ", \"samples\": " + std::to_string(r.samples) +
               ", \"skipped\": " + std::to_string(r.skipped) + "}";
        out += (k + 1 < result.rows.size()) ? ",\n" : "\n";
    }
    out += "  ],\n  \"notes\": [";
    for (std::size_t k = 0; k < result.notes.size(); ++k) {
        if (k) out += ", ";
        out += "\"" + json_escape(result.notes[k]) + "\"";
    }
    out += "],\n  \"pass\": ";
    out += result.pass ? "true" : "false";
    out += "\n}\n";
    return out;
}

std::string report_table(const SuiteResult& result) {
    std::string out;
    char line[200];
    std::snprintf(line, sizeof line, "%-36s %8s %12s %12s %12s %8s %8s\n", "check", "time",
                  "max_abs", "rms", "tolerance", "result", "skipped");
    out += line;
    out += std::string(101, '-') + "\n";
    long failures = 0;
    for (const ReportRow& r : result.rows) {
        if (!r.pass) ++failures;
        std::snprintf(line, sizeof line, "%-36s %8.4g %12.3e %12.3e %12.1e %8s %8ld\n",
                      r.id.c_str(), r.time, r.max_abs, r.rms, r.tolerance,
                      r.pass ? "pass" : "FAIL", r.skipped);
        out += line;
    }
    out += std::string(101, '-') + "\n";
    for (const std::string& n : result.notes) out += "note: " + n + "\n";
    std::snprintf(line, sizeof line, "overall: %s (%zu rows, %ld failures)\n",
                  result.pass ? "PASS" : "FAIL", result.rows.size(), failures);
    out += line;
    return out;
}

}  // namespace cmslab
