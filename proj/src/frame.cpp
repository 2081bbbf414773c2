#include "cmslab/frame.hpp"

#include <cmath>
#include <cstdio>

#include "cmslab/surface.hpp"
#include "cmslab/tensorfield.hpp"

namespace cmslab {

namespace {

Jet dot3(const Jet a[3], const Jet b[3]) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

void cross3(const Jet a[3], const Jet b[3], Jet out[3]) {
    out[0] = a[1] * b[2] - a[2] * b[1];
    out[1] = a[2] * b[0] - a[0] * b[2];
    out[2] = a[0] * b[1] - a[1] * b[0];
}

} // namespace

FrameSample sample_frame(const SurfaceSpec& spec, double u, double v, double t, int order) {
    if (order < 2) throw Error("frame sampling needs jet order >= 2");

    FrameSample f;
    f.u = u;
    f.v = v;
    f.t = t;
    f.order = order;

    auto emb = spec.embedding(u, v, t, order);
    for (int c = 0; c < 3; ++c) f.R[c] = emb[static_cast<std::size_t>(c)];

    for (int a = 0; a < 2; ++a) {
        const Var dir = (a == 0) ? Var::U : Var::V;
        for (int c = 0; c < 3; ++c) f.S[a][c] = f.R[c].derivative(dir);
    }
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const Var dir = (b == 0) ? Var::U : Var::V;
            for (int c = 0; c < 3; ++c) f.DD[a][b][c] = f.S[a][c].derivative(dir);
        }

    Jet cr[3];
    cross3(f.S[0], f.S[1], cr);
    Jet nrm2 = dot3(cr, cr);
    if (!(nrm2.value() > 1e-24)) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "degenerate tangent plane at (u, v, t) = (%.17g, %.17g, %.17g)", u, v, t);
        throw Error(msg);
    }
    Jet nrm = sqrt(nrm2);
    for (int c = 0; c < 3; ++c) f.N[c] = cr[c] / nrm;

    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) f.metric[a][b] = dot3(f.S[a], f.S[b]);
    f.det = f.metric[0][0] * f.metric[1][1] - f.metric[0][1] * f.metric[1][0];
    f.sqrt_det = sqrt(f.det);
    f.metric_inv[0][0] = f.metric[1][1] / f.det;
    f.metric_inv[0][1] = (0.0 - f.metric[0][1]) / f.det;
    f.metric_inv[1][0] = (0.0 - f.metric[1][0]) / f.det;
    f.metric_inv[1][1] = f.metric[0][0] / f.det;

    for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 3; ++c)
            f.Sup[a][c] = f.metric_inv[a][0] * f.S[0][c] + f.metric_inv[a][1] * f.S[1][c];

    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) f.B[a][b] = dot3(f.N, f.DD[a][b]);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            f.Bmix[a][b] = f.metric_inv[a][0] * f.B[0][b] + f.metric_inv[a][1] * f.B[1][b];

    for (int g = 0; g < 2; ++g)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) f.gamma[g][a][b] = dot3(f.Sup[g], f.DD[a][b]);

    Jet zero = Jet::constant(0.0, order);
    f.eps_lo[0][0] = zero;
    f.eps_lo[1][1] = zero;
    f.eps_lo[0][1] = f.sqrt_det;
    f.eps_lo[1][0] = 0.0 - f.sqrt_det;
    f.eps_up[0][0] = zero;
    f.eps_up[1][1] = zero;
    f.eps_up[0][1] = 1.0 / f.sqrt_det;
    f.eps_up[1][0] = 0.0 - f.eps_up[0][1];

    // Curvature of the chart connection; one chart derivative of the
    // Christoffel symbols, so jets of order >= 3 are required.  At order 2
    // the entries stay zero and only the frame itself is usable.
    if (order >= 3) {
        double dg[2][2][2][2]; // dg[a][g][b][c] = d_a gamma[g][b][c]
        for (int a = 0; a < 2; ++a) {
            const Var dir = (a == 0) ? Var::U : Var::V;
            for (int g = 0; g < 2; ++g)
                for (int b = 0; b < 2; ++b)
                    for (int c = 0; c < 2; ++c)
                        dg[a][g][b][c] = f.gamma[g][b][c].derivative(dir).value();
        }
        for (int d = 0; d < 2; ++d)
            for (int g = 0; g < 2; ++g)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        double r = dg[a][d][b][g] - dg[b][d][a][g];
                        for (int e = 0; e < 2; ++e)
                            r += f.gamma[d][a][e].value() * f.gamma[e][b][g].value() -
                                 f.gamma[d][b][e].value() * f.gamma[e][a][g].value();
                        f.riem[d][g][a][b] = r;
                    }
    }
    return f;
}

void riemann_gauss(const FrameSample& f, double out[2][2][2][2]) {
    for (int d = 0; d < 2; ++d)
        for (int g = 0; g < 2; ++g)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    out[d][g][a][b] = f.Bmix[d][a].value() * f.B[g][b].value() -
                                      f.Bmix[d][b].value() * f.B[g][a].value();
}

double check_normal_unit(const FrameSample& f) {
    return std::abs(dot3(f.N, f.N).value() - 1.0);
}

double check_normal_orthogonal(const FrameSample& f) {
    double m = 0.0;
    for (int a = 0; a < 2; ++a) m = std::max(m, std::abs(dot3(f.N, f.S[a]).value()));
    return m;
}

double check_curvature_symmetric(const FrameSample& f) {
    return std::abs(f.B[0][1].value() - f.B[1][0].value());
}

double check_curvature_two_routes(const FrameSample& f) {
    // N . d_a d_b R  versus  -S_a . d_b N
    double m = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const Var dir = (b == 0) ? Var::U : Var::V;
            double w = 0.0;
            for (int c = 0; c < 3; ++c)
                w -= f.S[a][c].value() * f.N[c].derivative(dir).value();
            m = std::max(m, std::abs(f.B[a][b].value() - w));
        }
    return m;
}

double check_metric_compat(const FrameSample& f) {
    TensorField g({Slot::SurfLo, Slot::SurfLo}, f.order);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) g.at({a, b}) = f.metric[a][b];
    return max_abs_value(covariant_derivative(g, f));
}

double check_levi_civita_compat(const FrameSample& f) {
    TensorField lo({Slot::SurfLo, Slot::SurfLo}, f.order);
    TensorField up({Slot::SurfUp, Slot::SurfUp}, f.order);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            lo.at({a, b}) = f.eps_lo[a][b];
            up.at({a, b}) = f.eps_up[a][b];
        }
    return std::max(max_abs_value(covariant_derivative(lo, f)),
                    max_abs_value(covariant_derivative(up, f)));
}

double check_codazzi(const FrameSample& f) {
    TensorField b({Slot::SurfLo, Slot::SurfLo}, f.order);
    for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) b.at({a, c}) = f.B[a][c];
    TensorField db = covariant_derivative(b, f);
    double m = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b2 = 0; b2 < 2; ++b2)
            for (int c = 0; c < 2; ++c)
                m = std::max(m, std::abs(db.at({a, b2, c}).value() - db.at({b2, a, c}).value()));
    return m;
}

double check_gauss_vs_christoffel(const FrameSample& f) {
    double gauss[2][2][2][2];
    riemann_gauss(f, gauss);
    double m = 0.0;
    for (int d = 0; d < 2; ++d)
        for (int g = 0; g < 2; ++g)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    m = std::max(m, std::abs(f.riem[d][g][a][b] - gauss[d][g][a][b]));
    return m;
}

double check_bianchi(const FrameSample& f) {
    double m = 0.0;
    for (int d = 0; d < 2; ++d)
        for (int g = 0; g < 2; ++g)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    m = std::max(m, std::abs(f.riem[d][g][a][b] + f.riem[d][a][b][g] +
                                             f.riem[d][b][g][a]));
    return m;
}

double riemann_commutator_scalar(const FrameSample& f, const Jet& psi) {
    TensorField p = TensorField::scalar(psi);
    TensorField dd = covariant_derivative(covariant_derivative(p, f), f);
    return std::abs(dd.at({0, 1}).value() - dd.at({1, 0}).value());
}

double riemann_commutator_vector(const FrameSample& f, const Jet psi_up[2]) {
    TensorField p({Slot::SurfUp}, f.order);
    for (int d = 0; d < 2; ++d) p.at({d}) = psi_up[d];
    TensorField dd = covariant_derivative(covariant_derivative(p, f), f);
    double m = 0.0;
    for (int d = 0; d < 2; ++d)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                double r = dd.at({a, b, d}).value() - dd.at({b, a, d}).value();
                for (int g = 0; g < 2; ++g) r -= f.riem[d][g][a][b] * psi_up[g].value();
                m = std::max(m, std::abs(r));
            }
    return m;
}

double riemann_commutator_covector(const FrameSample& f, const Jet psi_lo[2]) {
    TensorField p({Slot::SurfLo}, f.order);
    for (int d = 0; d < 2; ++d) p.at({d}) = psi_lo[d];
    TensorField dd = covariant_derivative(covariant_derivative(p, f), f);
    double m = 0.0;
    for (int d = 0; d < 2; ++d)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                double r = dd.at({a, b, d}).value() - dd.at({b, a, d}).value();
                for (int g = 0; g < 2; ++g) r += f.riem[g][d][a][b] * psi_lo[g].value();
                m = std::max(m, std::abs(r));
            }
    return m;
}

} // namespace cmslab
