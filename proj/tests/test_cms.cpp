#include "doctest.h"

#include "cmslab/cms.hpp"
#include "cmslab/surface.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace cmslab;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Node {
    double u, v, t;
};

std::vector<Node> random_nodes(const SurfaceSpec& s, int n, std::uint32_t seed,
                               double pole_offset = 1e-3) {
    std::mt19937 rng(seed);
    auto inset = [&](const Interval& iv) {
        double lo = iv.lo, hi = iv.hi;
        if (!iv.periodic) {
            lo += pole_offset;
            hi -= pole_offset;
        }
        return std::pair<double, double>{lo, hi};
    };
    auto [ulo, uhi] = inset(s.u);
    auto [vlo, vhi] = inset(s.v);
    std::uniform_real_distribution<double> du(ulo, uhi), dv(vlo, vhi);
    const double times[3] = {0.0, 0.25, 0.5};
    std::vector<Node> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) out.push_back({du(rng), dv(rng), times[k % 3]});
    return out;
}

std::vector<SurfaceSpec> builtin_family() {
    std::vector<SurfaceSpec> s;
    s.push_back(expand_builtin("sphere", {{"radius", "1+0.5*t"}}));
    s.push_back(expand_builtin("cylinder", {{"radius", "1+0.3*t"}}));
    s.push_back(expand_builtin("torus", {{"major", "2"}, {"minor", "0.3+0.1*t"}}));
    s.push_back(expand_builtin("ellipsoid", {{"a", "1+0.2*sin(t)"}}));
    s.push_back(expand_builtin("translating-sphere", {}));
    return s;
}

} // namespace

TEST_CASE("expanding sphere velocity data matches closed forms") {
    SurfaceSpec s = expand_builtin("sphere", {{"radius", "1+0.5*t"}});
    const double u = 1.1, v = 2.3;
    FrameSample f = sample_frame(s, u, v, 0.0, 4);
    CmsSample c = cms_sample(f);

    CHECK(std::abs(c.C.value() - 0.5) < 1e-13);
    CHECK(std::abs(c.Vsurf[0].value()) < 1e-13);
    CHECK(std::abs(c.Vsurf[1].value()) < 1e-13);
    CHECK(std::abs(c.K[0][0].value() - 1.0) < 1e-12);
    CHECK(std::abs(c.K[1][1].value() - std::sin(u) * std::sin(u)) < 1e-12);
    CHECK(std::abs(c.K[0][1].value()) < 1e-12);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            CHECK(std::abs(c.gammadot[a][b].value() - (a == b ? 0.5 : 0.0)) < 1e-12);

    double rd[2][2][2];
    temporal_curvature_def(f, c, rd);
    for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a)
            for (int g = 0; g < 2; ++g) CHECK(std::abs(rd[b][a][g]) < 1e-10);
}

TEST_CASE("expanding cylinder velocity data matches closed forms") {
    SurfaceSpec s = expand_builtin("cylinder", {{"radius", "1+0.3*t"}});
    FrameSample f = sample_frame(s, 0.8, 0.4, 0.0, 4);
    CmsSample c = cms_sample(f);

    CHECK(std::abs(c.C.value() - 0.3) < 1e-13);
    CHECK(std::abs(c.Vsurf[0].value()) < 1e-13);
    CHECK(std::abs(c.Vsurf[1].value()) < 1e-13);
    CHECK(std::abs(c.K[0][0].value() - 0.6) < 1e-12);
    CHECK(std::abs(c.K[1][1].value()) < 1e-13);
    CHECK(std::abs(c.gammadot[0][0].value() - 0.3) < 1e-12);
    CHECK(std::abs(c.gammadot[1][1].value()) < 1e-13);

    double rr[2][2][2];
    temporal_curvature_reduced(f, c, rr);
    for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a)
            for (int g = 0; g < 2; ++g) CHECK(std::abs(rr[b][a][g]) < 1e-14);
}

TEST_CASE("translating sphere has the advected normal speed and curvature rate") {
    SurfaceSpec s = expand_builtin("translating-sphere", {});
    const double w = 0.2;

    for (double u : {0.4, kPi / 2, 2.0}) {
        FrameSample f = sample_frame(s, u, 1.3, 0.35, 4);
        CmsSample c = cms_sample(f);
        CHECK(std::abs(c.C.value() - w * std::cos(u)) < 1e-13);
        CHECK(std::abs(c.Vsurf[0].value() + w * std::sin(u)) < 1e-13);
        CHECK(std::abs(c.Vsurf[1].value()) < 1e-13);

        double rd[2][2][2], rr[2][2][2];
        temporal_curvature_def(f, c, rd);
        temporal_curvature_reduced(f, c, rr);
        const double want = w * std::pow(std::sin(u), 3);
        CHECK(std::abs(rd[0][1][1] - want) < 1e-8);
        CHECK(std::abs(rr[0][1][1] - want) < 1e-12);
    }

    // equator spot value: the polar-angle/azimuth-pair component equals the speed
    FrameSample eq = sample_frame(s, kPi / 2, 0.7, 0.0, 4);
    CmsSample ceq = cms_sample(eq);
    double rd[2][2][2];
    temporal_curvature_def(eq, ceq, rd);
    CHECK(std::abs(rd[0][1][1] - 0.2) < 1e-8);
}

TEST_CASE("static surfaces carry no velocity data") {
    SurfaceSpec s = expand_builtin("torus", {{"major", "2"}, {"minor", "0.5"}});
    FrameSample f = sample_frame(s, 0.9, 2.2, 0.7, 4);
    CmsSample c = cms_sample(f);
    CHECK(std::abs(c.C.value()) < 1e-15);
    for (int a = 0; a < 2; ++a) {
        CHECK(std::abs(c.Vsurf[a].value()) < 1e-15);
        for (int b = 0; b < 2; ++b) {
            CHECK(std::abs(c.gammadot[a][b].value()) < 1e-15);
            CHECK(std::abs(c.K[a][b].value()) < 1e-15);
        }
    }
    double rd[2][2][2];
    temporal_curvature_def(f, c, rd);
    for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a)
            for (int g = 0; g < 2; ++g) CHECK(std::abs(rd[b][a][g]) < 1e-13);
}

TEST_CASE("metric rate matches the symmetrized velocity gradient everywhere") {
    double worst = 0;
    for (const SurfaceSpec& s : builtin_family())
        for (const Node& n : random_nodes(s, 30, 555u)) {
            FrameSample f = sample_frame(s, n.u, n.v, n.t, 4);
            worst = std::max(worst, metric_dot_two_ways(f, cms_sample(f)));
        }
    CHECK(worst < 1e-9);
}

TEST_CASE("frame derivative table vanishes or matches on every builtin") {
    double worst = 0;
    std::string worst_row;
    for (const SurfaceSpec& s : builtin_family())
        for (const Node& n : random_nodes(s, 25, 777u)) {
            FrameSample f = sample_frame(s, n.u, n.v, n.t, 4);
            CmsSample c = cms_sample(f);
            AmbientFrame cart = build_ambient(AmbientKind::Cartesian, f);
            for (const auto& [row, r] : frame_derivative_table(f, c, &cart))
                if (r > worst) {
                    worst = r;
                    worst_row = row;
                }
        }
    CAPTURE(worst_row);
    CHECK(worst < 1e-9);
}

TEST_CASE("frame derivative table holds in curvilinear ambient coordinates") {
    std::vector<SurfaceSpec> safe;
    safe.push_back(expand_builtin("torus", {{"major", "2"}, {"minor", "0.3+0.1*t"}}));
    safe.push_back(expand_builtin("cylinder", {{"radius", "1+0.3*t"}}));
    safe.push_back(expand_builtin("sphere", {{"radius", "1+0.5*t"}}));

    double worst = 0;
    std::string worst_row;
    for (std::size_t k = 0; k < safe.size(); ++k) {
        // keep sphere nodes away from the poles, where the axis frames blow up
        double inset = (safe[k].name == "sphere") ? 0.3 : 1e-3;
        for (const Node& n : random_nodes(safe[k], 15, 888u, inset)) {
            FrameSample f = sample_frame(safe[k], n.u, n.v, n.t, 4);
            CmsSample c = cms_sample(f);
            for (AmbientKind kind : {AmbientKind::Cylindrical, AmbientKind::Spherical}) {
                AmbientFrame amb = build_ambient(kind, f);
                for (const auto& [row, r] : frame_derivative_table(f, c, &amb))
                    if (r > worst) {
                        worst = r;
                        worst_row = row;
                    }
            }
        }
    }
    CAPTURE(worst_row);
    CHECK(worst < 1e-9);
}

TEST_CASE("second derivative closed form matches the operator applied twice") {
    std::uint32_t seed = 9000;
    double worst = 0;
    for (const SurfaceSpec& s : builtin_family())
        for (const Node& n : random_nodes(s, 20, 333u)) {
            FrameSample f = sample_frame(s, n.u, n.v, n.t, 4);
            CmsSample c = cms_sample(f);
            Jet psi = random_field_expr(seed++).eval_jet(n.u, n.v, n.t, 4);
            worst = std::max(worst, second_order_scalar(c, psi));
        }
    CHECK(worst < 1e-8);
}

TEST_CASE("scalar semi-commutation between time and surface derivatives") {
    std::uint32_t seed = 4000;
    double worst = 0;
    for (const SurfaceSpec& s : builtin_family())
        for (const Node& n : random_nodes(s, 20, 4444u)) {
            FrameSample f = sample_frame(s, n.u, n.v, n.t, 4);
            CmsSample c = cms_sample(f);
            Jet psi = random_field_expr(seed++).eval_jet(n.u, n.v, n.t, 4);
            worst = std::max(worst, semi_commutation_scalar(f, c, psi));
        }
    CHECK(worst < 1e-8);
}

TEST_CASE("vector and covector commutators close through the temporal curvature") {
    std::uint32_t seed = 5000;
    double worst_vec = 0, worst_covec = 0;
    for (const SurfaceSpec& s : builtin_family())
        for (const Node& n : random_nodes(s, 12, 5555u)) {
            FrameSample f = sample_frame(s, n.u, n.v, n.t, 4);
            CmsSample c = cms_sample(f);
            Jet up[2] = {random_field_expr(seed++).eval_jet(n.u, n.v, n.t, 4),
                         random_field_expr(seed++).eval_jet(n.u, n.v, n.t, 4)};
            Jet lo[2] = {random_field_expr(seed++).eval_jet(n.u, n.v, n.t, 4),
                         random_field_expr(seed++).eval_jet(n.u, n.v, n.t, 4)};
            worst_vec = std::max(worst_vec, commutator_vector_check(f, c, up));
            worst_covec = std::max(worst_covec, commutator_covector_check(f, c, lo));
        }
    CHECK(worst_vec < 1e-7);
    CHECK(worst_covec < 1e-7);
}

TEST_CASE("connection rate differentiates into the christoffel time derivative") {
    double worst = 0;
    for (const SurfaceSpec& s : builtin_family())
        for (const Node& n : random_nodes(s, 15, 6666u)) {
            FrameSample f = sample_frame(s, n.u, n.v, n.t, 4);
            worst = std::max(worst, dt_christoffel_two_ways(f, cms_sample(f)));
        }
    CHECK(worst < 1e-8);
}

TEST_CASE("temporal curvature trace and its scalar vanish on every builtin") {
    double worst_tr = 0, worst_delta = 0;
    for (const SurfaceSpec& s : builtin_family())
        for (const Node& n : random_nodes(s, 15, 7777u)) {
            FrameSample f = sample_frame(s, n.u, n.v, n.t, 4);
            TraceScalar ts = trace_and_scalar(f, cms_sample(f));
            worst_tr = std::max(worst_tr, ts.trace_max);
            worst_delta = std::max(worst_delta, ts.delta);
        }
    CHECK(worst_tr < 1e-9);
    CHECK(worst_delta < 1e-9);
}

TEST_CASE("ambient connection stays flat along the moving surface") {
    SurfaceSpec s = expand_builtin("translating-sphere", {});
    double worst = 0;
    for (const Node& n : random_nodes(s, 20, 999u)) {
        FrameSample f = sample_frame(s, n.u, n.v, n.t, 4);
        for (AmbientKind kind :
             {AmbientKind::Cartesian, AmbientKind::Cylindrical, AmbientKind::Spherical}) {
            AmbientFrame amb = build_ambient(kind, f);
            worst = std::max(worst, ambient_temporal_curvature(f, amb));
        }
    }
    CHECK(worst < 1e-7);
}

TEST_CASE("frame commutation projections onto the surface frame") {
    double w0 = 0, w1 = 0, w2 = 0;
    for (const SurfaceSpec& s : builtin_family())
        for (const Node& n : random_nodes(s, 15, 1111u)) {
            FrameSample f = sample_frame(s, n.u, n.v, n.t, 4);
            CmsSample c = cms_sample(f);
            double out[3];
            frame_commutation_projections(f, c, out);
            w0 = std::max(w0, out[0]);
            w1 = std::max(w1, out[1]);
            w2 = std::max(w2, out[2]);
        }
    CHECK(w0 < 1e-8);
    CHECK(w1 < 1e-8);
    CHECK(w2 < 1e-10);
}

TEST_CASE("the invariant derivative lowers and raises through the metric") {
    SurfaceSpec s = expand_builtin("sphere", {{"radius", "1+0.5*t"}});
    FrameSample f = sample_frame(s, 1.2, 0.9, 0.25, 4);
    CmsSample c = cms_sample(f);

    TensorField up({Slot::SurfUp}, 4), lo({Slot::SurfLo}, 4);
    up.at({0}) = random_field_expr(61).eval_jet(1.2, 0.9, 0.25, 4);
    up.at({1}) = random_field_expr(62).eval_jet(1.2, 0.9, 0.25, 4);
    for (int a = 0; a < 2; ++a)
        lo.at({a}) = f.metric[a][0] * up.at({0}) + f.metric[a][1] * up.at({1});

    TensorField dot_up = inv_time_derivative(up, f, c);
    TensorField dot_lo = inv_time_derivative(lo, f, c);
    // ddot (S_ab psi^b) = S_ab ddot psi^b because ddot annihilates the metric
    for (int a = 0; a < 2; ++a) {
        double want = f.metric[a][0].value() * dot_up.at({0}).value() +
                      f.metric[a][1].value() * dot_up.at({1}).value();
        CHECK(std::abs(dot_lo.at({a}).value() - want) < 1e-12);
    }
}
