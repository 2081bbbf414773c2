#include "cmslab/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "cmslab/tensorfield.hpp"

namespace cmslab {

namespace {

Var chart_var(int a) { return a == 0 ? Var::U : Var::V; }

int perm3(int i, int j, int k) { return (j - i) * (k - i) * (k - j) / 2; }

int perm2(int a, int b) { return b - a; }

double det3_values(const Jet m[3][3]) {
    double v[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) v[i][j] = m[i][j].value();
    return v[0][0] * (v[1][1] * v[2][2] - v[1][2] * v[2][1]) -
           v[0][1] * (v[1][0] * v[2][2] - v[1][2] * v[2][0]) +
           v[0][2] * (v[1][0] * v[2][1] - v[1][1] * v[2][0]);
}

/// Ambient components of the unit normal, both index positions.
void ambient_normal(const FrameSample& f, const AmbientFrame& amb, Jet n_lo[3], Jet n_up[3]) {
    for (int i = 0; i < 3; ++i) {
        Jet s = Jet::constant(0.0, f.order);
        for (int c = 0; c < 3; ++c) s = s + amb.basis[i][c] * f.N[c];
        n_lo[i] = s;
    }
    for (int i = 0; i < 3; ++i) {
        Jet s = Jet::constant(0.0, f.order);
        for (int j = 0; j < 3; ++j) s = s + amb.metric_inv[i][j] * n_lo[j];
        n_up[i] = s;
    }
}

/// Componentwise advective time derivative of the Cartesian velocity
/// components: the invariant derivative of the velocity as a pseudovector.
void velocity_dot(const CmsSample& c, Jet w[3]) {
    for (int comp = 0; comp < 3; ++comp) {
        Jet s = c.V[comp].dt();
        for (int a = 0; a < 2; ++a) s = s - c.Vsurf[a] * c.V[comp].derivative(chart_var(a));
        w[comp] = s;
    }
}

}  // namespace

TriVelocityCheck tri_velocity_check(const FrameSample& f, const CmsSample& c) {
    TriVelocityCheck out;
    const Jet zero = Jet::constant(0.0, f.order);

    for (int comp = 0; comp < 3; ++comp) {
        Jet r = c.V[comp] - c.C * f.N[comp];
        for (int a = 0; a < 2; ++a) r = r - c.Vsurf[a] * f.S[a][comp];
        out.decomposition = std::max(out.decomposition, std::fabs(r.value()));
    }

    Jet w[3];
    velocity_dot(c, w);
    Jet dotC = c.C.dt();
    Jet advect = zero;
    for (int a = 0; a < 2; ++a) {
        dotC = dotC - c.Vsurf[a] * c.C.derivative(chart_var(a));
        advect = advect + c.Vsurf[a] * c.gradC[a];
    }
    TensorField vf({Slot::SurfUp}, f.order);
    vf.flat(0) = c.Vsurf[0];
    vf.flat(1) = c.Vsurf[1];
    TensorField dv = inv_time_derivative(vf, f, c);

    for (int comp = 0; comp < 3; ++comp) {
        Jet want = f.N[comp] * (dotC + advect);
        for (int a = 0; a < 2; ++a)
            want = want + f.S[a][comp] * (dv.flat(a) - c.C * c.gradCup[a]);
        out.frame_split = std::max(out.frame_split, std::fabs((w[comp] - want).value()));
    }

    Jet nw = zero, sw[2] = {zero, zero};
    for (int comp = 0; comp < 3; ++comp) {
        nw = nw + f.N[comp] * w[comp];
        for (int a = 0; a < 2; ++a) sw[a] = sw[a] + f.Sup[a][comp] * w[comp];
    }
    out.projections = std::fabs((dotC - (nw - advect)).value());
    for (int a = 0; a < 2; ++a) {
        double r = std::fabs((dv.flat(a) - (sw[a] + c.C * c.gradCup[a])).value());
        out.projections = std::max(out.projections, r);
    }
    return out;
}

TriAcceleration tri_acceleration(const FrameSample& f, const CmsSample& c,
                                 const AmbientFrame& amb) {
    TriAcceleration out;
    const Jet zero = Jet::constant(0.0, f.order);

    for (int i = 0; i < 3; ++i) {
        Jet a = amb.vel[i].dt();
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) a = a + amb.vel[j] * amb.vel[k] * amb.gamma[i][j][k];
        out.A[i] = a;
    }

    Jet n_lo[3], n_up[3];
    ambient_normal(f, amb, n_lo, n_up);

    Jet advect = c.Vsurf[0] * c.gradC[0] + c.Vsurf[1] * c.gradC[1];
    Jet quad = zero;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) quad = quad + c.Vsurf[a] * c.Vsurf[b] * f.B[a][b];

    for (int i = 0; i < 3; ++i) {
        Jet drag = zero;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                drag = drag + c.Vsurf[a] * c.gammadot[b][a] * amb.shift[i][b];
        out.Atri[i] = out.A[i] - n_up[i] * (advect + quad) - drag;
    }

    Jet na = zero;
    for (int i = 0; i < 3; ++i) na = na + n_lo[i] * out.A[i];
    out.Ahat = na - 2.0 * advect - quad;

    for (int g = 0; g < 2; ++g) {
        Jet za = zero;
        for (int i = 0; i < 3; ++i) {
            Jet zgi = zero;
            for (int comp = 0; comp < 3; ++comp) zgi = zgi + f.Sup[g][comp] * amb.basis[i][comp];
            za = za + zgi * out.A[i];
        }
        Jet drag = c.Vsurf[0] * c.gammadot[g][0] + c.Vsurf[1] * c.gammadot[g][1];
        out.Atilde[g] = za - drag + c.C * c.gradCup[g];
    }
    return out;
}

double tri_acceleration_check(const FrameSample& f, const CmsSample& c,
                              const AmbientFrame& amb) {
    TriAcceleration k = tri_acceleration(f, c, amb);
    Jet n_lo[3], n_up[3];
    ambient_normal(f, amb, n_lo, n_up);
    Jet advect = c.Vsurf[0] * c.gradC[0] + c.Vsurf[1] * c.gradC[1];
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        Jet want = n_up[i] * (k.Ahat + advect);
        for (int g = 0; g < 2; ++g)
            want = want + amb.shift[i][g] * (k.Atilde[g] - c.C * c.gradCup[g]);
        worst = std::max(worst, std::fabs((k.Atri[i] - want).value()));
    }
    return worst;
}

double normal_shift_check(const FrameSample& f, const CmsSample& c, const AmbientFrame& amb) {
    TriAcceleration k = tri_acceleration(f, c, amb);
    Jet n_lo[3], n_up[3];
    ambient_normal(f, amb, n_lo, n_up);
    double v_lo[3];
    for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int m = 0; m < 3; ++m) s += amb.metric[j][m].value() * amb.vel[m].value();
        v_lo[j] = s;
    }
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        double pair = 0.0;
        for (int j = 0; j < 3; ++j)
            for (int a = 0; a < 2; ++a) {
                double nt = n_up[i].value() * amb.shift[j][a].value() -
                            amb.shift[i][a].value() * n_up[j].value();
                pair += nt * v_lo[j] * c.gradCup[a].value();
            }
        double r = k.Atri[i].value() - n_up[i].value() * k.Ahat.value() - pair;
        for (int g = 0; g < 2; ++g) r -= amb.shift[i][g].value() * k.Atilde[g].value();
        worst = std::max(worst, std::fabs(r));
    }
    return worst;
}

EpsilonPairing epsilon_pairing(const FrameSample& f, const AmbientFrame& amb) {
    EpsilonPairing out;
    Jet n_lo[3], n_up[3];
    ambient_normal(f, amb, n_lo, n_up);
    double nt[3][3][2];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int a = 0; a < 2; ++a)
                nt[i][j][a] = n_up[i].value() * amb.shift[j][a].value() -
                              amb.shift[i][a].value() * n_up[j].value();
    const double sqrt_amb = std::sqrt(det3_values(amb.metric));
    const double sqrt_surf = f.sqrt_det.value();
    for (int b = 0; b < 2; ++b)
        for (int k = 0; k < 3; ++k) {
            double zt = 0.0;
            for (int c = 0; c < 3; ++c) zt += f.Sup[b][c].value() * amb.basis[k][c].value();
            double bare = 0.0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    int p3 = perm3(i, j, k);
                    if (p3 == 0) continue;
                    for (int a = 0; a < 2; ++a) bare += 0.5 * p3 * perm2(a, b) * nt[i][j][a];
                }
            double weighted = bare * sqrt_amb / sqrt_surf;
            out.tensor_weighted = std::max(out.tensor_weighted, std::fabs(weighted - zt));
            out.bare_symbols = std::max(out.bare_symbols, std::fabs(bare - zt));
        }
    for (int a = 0; a < 2; ++a) {
        double s = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s += amb.metric[i][j].value() * nt[i][j][a];
        out.metric_annihilation = std::max(out.metric_annihilation, std::fabs(s));
    }
    return out;
}

EnergyReport surface_energy(const SurfaceSpec& spec, const GridSpec& grid, double t,
                            double rho, const std::array<Expr, 3>* force) {
    const QuadratureGrid q = build_quadrature(spec, grid, t);
    EnergyReport rep;
    rep.has_force = force != nullptr;
    double we_max = 0.0;

    auto kinetic = [rho](const FrameSample& f) {
        Jet v2 = Jet::constant(0.0, f.order);
        for (int c = 0; c < 3; ++c) {
            Jet vel = f.R[c].dt();
            v2 = v2 + vel * vel;
        }
        return 0.5 * rho * v2;
    };
    auto force_at = [force, &spec](const FrameSample& f, Jet alpha[3]) {
        std::map<std::string, Jet> bind{
            {"x", f.R[0]}, {"y", f.R[1]}, {"z", f.R[2]}};
        for (int c = 0; c < 3; ++c)
            alpha[c] = (*force)[c].eval_jet(f.u, f.v, f.t, f.order, spec.params, bind);
    };
    auto motion_residual = [force, &force_at](const FrameSample& f) {
        CmsSample c = cms_sample(f);
        AmbientFrame amb = build_ambient(AmbientKind::Cartesian, f);
        TriAcceleration k = tri_acceleration(f, c, amb);
        Jet va = Jet::constant(0.0, f.order);
        for (int comp = 0; comp < 3; ++comp) va = va + c.V[comp] * k.Atri[comp];
        Jet vt2 = c.Vsurf[0] * c.Vlo[0] + c.Vsurf[1] * c.Vlo[1];
        Jet geom = 0.5 * c.C * (f.Bmix[0][0] + f.Bmix[1][1]) * (c.C * c.C + vt2);
        Jet resid = va - geom;
        if (force) {
            Jet alpha[3];
            force_at(f, alpha);
            for (int comp = 0; comp < 3; ++comp) resid = resid - c.V[comp] * alpha[comp];
        }
        return std::pair<Jet, Jet>{va - geom, resid};
    };
    auto rate = [rho, &motion_residual, &we_max](const FrameSample& f) {
        auto [integrand, resid] = motion_residual(f);
        we_max = std::max(we_max, std::fabs(resid.value()));
        return rho * integrand;
    };
    auto residual_density = [rho, &motion_residual](const FrameSample& f) {
        return rho * motion_residual(f).second;
    };
    auto power = [rho, &force_at](const FrameSample& f) {
        Jet alpha[3];
        force_at(f, alpha);
        Jet s = Jet::constant(0.0, f.order);
        for (int c = 0; c < 3; ++c) s = s + f.R[c].dt() * alpha[c];
        return rho * s;
    };

    std::vector<std::function<Jet(const FrameSample&)>> densities{kinetic, rate, residual_density};
    if (force) densities.emplace_back(power);
    std::vector<double> vals = integrate_many(spec, q, t, densities, &rep.skipped);
    rep.kinetic = vals[0];
    rep.rate_formula = vals[1];
    rep.work_energy_integral = vals[2];
    if (force) rep.power = vals[3];
    rep.work_energy_max = we_max;

    const double h = 1e-3;
    double k_m2 = integrate(spec, q, t - 2.0 * h, kinetic);
    double k_m1 = integrate(spec, q, t - h, kinetic);
    double k_p1 = integrate(spec, q, t + h, kinetic);
    double k_p2 = integrate(spec, q, t + 2.0 * h, kinetic);
    rep.rate_fd = (k_m2 - 8.0 * k_m1 + 8.0 * k_p1 - k_p2) / (12.0 * h);
    return rep;
}

}  // namespace cmslab
