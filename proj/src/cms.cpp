#include "cmslab/cms.hpp"

#include <cmath>

namespace cmslab {

namespace {

Jet dot3(const Jet a[3], const Jet b[3]) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

} // namespace

CmsSample cms_sample(const FrameSample& f) {
    CmsSample c;
    for (int i = 0; i < 3; ++i) c.V[i] = f.R[i].dt();
    c.C = dot3(f.N, c.V);
    for (int a = 0; a < 2; ++a) {
        c.Vsurf[a] = dot3(f.Sup[a], c.V);
        c.Vlo[a] = dot3(f.S[a], c.V);
    }

    TensorField vup({Slot::SurfUp}, f.order);
    TensorField vlo({Slot::SurfLo}, f.order);
    for (int a = 0; a < 2; ++a) {
        vup.at({a}) = c.Vsurf[a];
        vlo.at({a}) = c.Vlo[a];
    }
    TensorField dvup = covariant_derivative(vup, f);
    TensorField dvlo = covariant_derivative(vlo, f);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            c.gammadot[a][b] = dvup.at({b, a}) - c.C * f.Bmix[a][b];
            c.K[a][b] = dvlo.at({a, b}) + dvlo.at({b, a}) - 2.0 * (c.C * f.B[a][b]);
        }
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Jet s = Jet::constant(0.0, f.order);
            for (int g = 0; g < 2; ++g)
                for (int d = 0; d < 2; ++d)
                    s = s + f.metric_inv[a][g] * f.metric_inv[b][d] * c.K[g][d];
            c.Kup[a][b] = s;
        }
    for (int a = 0; a < 2; ++a)
        c.gradC[a] = c.C.derivative(a == 0 ? Var::U : Var::V);
    for (int a = 0; a < 2; ++a)
        c.gradCup[a] = f.metric_inv[a][0] * c.gradC[0] + f.metric_inv[a][1] * c.gradC[1];
    return c;
}

TensorField inv_time_derivative(const TensorField& tf, const FrameSample& f, const CmsSample& c,
                                const AmbientFrame* amb) {
    TensorField cov = covariant_derivative(tf, f, amb); // validates ambient slots
    TensorField r = tf;
    const int n = tf.size();
    const auto& sig = tf.signature();
    for (int i = 0; i < n; ++i) {
        Jet acc = tf.flat(i).dt();
        for (int g = 0; g < 2; ++g) acc = acc - c.Vsurf[g] * cov.flat(g * n + i);
        for (int k = 0; k < tf.rank(); ++k) {
            const Slot s = sig[static_cast<std::size_t>(k)];
            if (s == Slot::Comp) continue;
            const int dim = slot_dim(s);
            const int st = tf.stride(k);
            const int own = (i / st) % dim;
            const int base = i - own * st;
            for (int e = 0; e < dim; ++e) {
                const Jet& other = tf.flat(base + e * st);
                switch (s) {
                    case Slot::SurfUp:
                        acc = acc + c.gammadot[own][e] * other;
                        break;
                    case Slot::SurfLo:
                        acc = acc - c.gammadot[e][own] * other;
                        break;
                    case Slot::AmbUp:
                        for (int m = 0; m < 3; ++m)
                            acc = acc + amb->vel[m] * amb->gamma[own][m][e] * other;
                        break;
                    case Slot::AmbLo:
                        for (int m = 0; m < 3; ++m)
                            acc = acc - amb->vel[m] * amb->gamma[e][m][own] * other;
                        break;
                    case Slot::Comp:
                        break;
                }
            }
        }
        r.flat(i) = acc;
    }
    return r;
}

double metric_dot_two_ways(const FrameSample& f, const CmsSample& c) {
    double m = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            m = std::max(m, std::abs(f.metric[a][b].dt().value() - c.K[a][b].value()));
            m = std::max(m, std::abs(f.metric_inv[a][b].dt().value() + c.Kup[a][b].value()));
        }
    return m;
}

std::vector<std::pair<std::string, double>> frame_derivative_table(const FrameSample& f,
                                                                   const CmsSample& c,
                                                                   const AmbientFrame* amb) {
    std::vector<std::pair<std::string, double>> rows;
    const int K = f.order;

    auto push = [&](const char* label, const TensorField& field, const TensorField& expect,
                    const AmbientFrame* a) {
        TensorField dot = inv_time_derivative(field, f, c, a);
        rows.emplace_back(label, max_abs_value(dot - expect));
    };

    {
        TensorField s({Slot::SurfLo, Slot::Comp}, K), want({Slot::SurfLo, Slot::Comp}, K);
        for (int a = 0; a < 2; ++a)
            for (int i = 0; i < 3; ++i) {
                s.at({a, i}) = f.S[a][i];
                want.at({a, i}) = f.N[i] * c.gradC[a];
            }
        push("tangent-basis", s, want, nullptr);
    }
    {
        TensorField s({Slot::SurfUp, Slot::Comp}, K), want({Slot::SurfUp, Slot::Comp}, K);
        for (int a = 0; a < 2; ++a)
            for (int i = 0; i < 3; ++i) {
                s.at({a, i}) = f.Sup[a][i];
                want.at({a, i}) = f.N[i] * c.gradCup[a];
            }
        push("dual-tangent-basis", s, want, nullptr);
    }
    {
        TensorField nf({Slot::Comp}, K), want({Slot::Comp}, K);
        for (int i = 0; i < 3; ++i) {
            nf.at({i}) = f.N[i];
            Jet w = Jet::constant(0.0, K);
            for (int a = 0; a < 2; ++a) w = w - f.Sup[a][i] * c.gradC[a];
            want.at({i}) = w;
        }
        push("normal", nf, want, nullptr);
    }
    {
        TensorField b({Slot::SurfUp, Slot::SurfLo}, K), want({Slot::SurfUp, Slot::SurfLo}, K);
        TensorField gup({Slot::SurfUp}, K);
        for (int a = 0; a < 2; ++a) gup.at({a}) = c.gradCup[a];
        TensorField ddc = covariant_derivative(gup, f);
        for (int a = 0; a < 2; ++a)
            for (int g = 0; g < 2; ++g) {
                b.at({a, g}) = f.Bmix[a][g];
                Jet w = ddc.at({g, a});
                for (int e = 0; e < 2; ++e) w = w + c.C * f.Bmix[a][e] * f.Bmix[e][g];
                want.at({a, g}) = w;
            }
        push("mixed-curvature", b, want, nullptr);
    }
    {
        TensorField m({Slot::SurfLo, Slot::SurfLo}, K), z({Slot::SurfLo, Slot::SurfLo}, K);
        TensorField mi({Slot::SurfUp, Slot::SurfUp}, K), zu({Slot::SurfUp, Slot::SurfUp}, K);
        TensorField el({Slot::SurfLo, Slot::SurfLo}, K);
        TensorField eu({Slot::SurfUp, Slot::SurfUp}, K);
        TensorField dl({Slot::SurfUp, Slot::SurfLo}, K), zd({Slot::SurfUp, Slot::SurfLo}, K);
        for (int a = 0; a < 2; ++a)
            for (int g = 0; g < 2; ++g) {
                m.at({a, g}) = f.metric[a][g];
                mi.at({a, g}) = f.metric_inv[a][g];
                el.at({a, g}) = f.eps_lo[a][g];
                eu.at({a, g}) = f.eps_up[a][g];
                dl.at({a, g}) = Jet::constant(a == g ? 1.0 : 0.0, K);
            }
        push("metric", m, z, nullptr);
        push("inverse-metric", mi, zu, nullptr);
        push("area-tensor", el, z, nullptr);
        push("dual-area-tensor", eu, zu, nullptr);
        push("kronecker", dl, zd, nullptr);
    }
    if (amb != nullptr) {
        TensorField zi({Slot::AmbLo, Slot::Comp}, K), wz({Slot::AmbLo, Slot::Comp}, K);
        TensorField zij({Slot::AmbLo, Slot::AmbLo}, K), wm({Slot::AmbLo, Slot::AmbLo}, K);
        for (int i = 0; i < 3; ++i) {
            for (int cc = 0; cc < 3; ++cc) zi.at({i, cc}) = amb->basis[i][cc];
            for (int j = 0; j < 3; ++j) zij.at({i, j}) = amb->metric[i][j];
        }
        push("ambient-basis", zi, wz, amb);
        push("ambient-metric", zij, wm, amb);
    }
    return rows;
}

double second_order_scalar(const CmsSample& c, const Jet& psi) {
    // closed form in plain chart partials
    const double ptt = psi.partial({0, 0, 2});
    const double pta[2] = {psi.partial({1, 0, 1}), psi.partial({0, 1, 1})};
    double pa[2], pab[2][2];
    pa[0] = psi.partial({1, 0, 0});
    pa[1] = psi.partial({0, 1, 0});
    pab[0][0] = psi.partial({2, 0, 0});
    pab[0][1] = psi.partial({1, 1, 0});
    pab[1][0] = pab[0][1];
    pab[1][1] = psi.partial({0, 2, 0});

    double vv[2], vt[2], dv[2][2];
    for (int a = 0; a < 2; ++a) {
        vv[a] = c.Vsurf[a].value();
        vt[a] = c.Vsurf[a].dt().value();
        for (int b = 0; b < 2; ++b)
            dv[b][a] = c.Vsurf[a].derivative(b == 0 ? Var::U : Var::V).value();
    }
    double closed = ptt;
    for (int a = 0; a < 2; ++a) {
        double adv = vt[a];
        for (int b = 0; b < 2; ++b) adv -= vv[b] * dv[b][a];
        closed -= adv * pa[a];
        double mixed = 2.0 * pta[a];
        for (int b = 0; b < 2; ++b) mixed -= vv[b] * pab[b][a];
        closed -= vv[a] * mixed;
    }

    // the operator applied twice
    Jet d1 = psi.dt() - c.Vsurf[0] * psi.derivative(Var::U) - c.Vsurf[1] * psi.derivative(Var::V);
    double d2 = d1.dt().value() - c.Vsurf[0].value() * d1.derivative(Var::U).value() -
                c.Vsurf[1].value() * d1.derivative(Var::V).value();
    return std::abs(closed - d2);
}

double semi_commutation_scalar(const FrameSample& f, const CmsSample& c, const Jet& psi) {
    TensorField grad = covariant_derivative(TensorField::scalar(psi), f);
    TensorField dot_grad = inv_time_derivative(grad, f, c);

    Jet d1 = psi.dt() - c.Vsurf[0] * psi.derivative(Var::U) - c.Vsurf[1] * psi.derivative(Var::V);
    TensorField grad_dot = covariant_derivative(TensorField::scalar(d1), f);

    double m = 0.0;
    for (int a = 0; a < 2; ++a) {
        double r = dot_grad.at({a}).value() - grad_dot.at({a}).value();
        for (int g = 0; g < 2; ++g)
            r -= c.C.value() * f.Bmix[g][a].value() * grad.at({g}).value();
        m = std::max(m, std::abs(r));
    }
    return m;
}

void temporal_curvature_def(const FrameSample& f, const CmsSample& c, double out[2][2][2]) {
    TensorField gd({Slot::SurfUp, Slot::SurfLo}, f.order);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) gd.at({a, b}) = c.gammadot[a][b];
    TensorField dgd = covariant_derivative(gd, f);
    for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a)
            for (int g = 0; g < 2; ++g) {
                double r = f.gamma[b][a][g].dt().value() - dgd.at({a, b, g}).value();
                for (int d = 0; d < 2; ++d) r += f.riem[b][g][a][d] * c.Vsurf[d].value();
                out[b][a][g] = r;
            }
}

void temporal_curvature_reduced(const FrameSample& f, const CmsSample& c, double out[2][2][2]) {
    for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a)
            for (int g = 0; g < 2; ++g)
                out[b][a][g] = f.B[a][g].value() * c.gradCup[b].value() -
                               f.Bmix[b][a].value() * c.gradC[g].value();
}

namespace {

double commutator_residual(const FrameSample& f, const CmsSample& c, const Jet psi[2],
                           bool upper) {
    const Slot slot = upper ? Slot::SurfUp : Slot::SurfLo;
    TensorField p({slot}, f.order);
    for (int d = 0; d < 2; ++d) p.at({d}) = psi[d];

    TensorField grad = covariant_derivative(p, f);      // {SurfLo, slot}
    TensorField dot_grad = inv_time_derivative(grad, f, c);
    TensorField grad_dot = covariant_derivative(inv_time_derivative(p, f, c), f);

    double rt[2][2][2];
    temporal_curvature_reduced(f, c, rt);

    double m = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            double r = dot_grad.at({a, b}).value() - grad_dot.at({a, b}).value();
            for (int g = 0; g < 2; ++g)
                r -= c.C.value() * f.Bmix[g][a].value() * grad.at({g, b}).value();
            for (int g = 0; g < 2; ++g) {
                if (upper)
                    r -= rt[b][a][g] * psi[g].value();
                else
                    r += rt[g][a][b] * psi[g].value();
            }
            m = std::max(m, std::abs(r));
        }
    return m;
}

} // namespace

double commutator_vector_check(const FrameSample& f, const CmsSample& c, const Jet psi_up[2]) {
    return commutator_residual(f, c, psi_up, true);
}

double commutator_covector_check(const FrameSample& f, const CmsSample& c, const Jet psi_lo[2]) {
    return commutator_residual(f, c, psi_lo, false);
}

double dt_christoffel_two_ways(const FrameSample& f, const CmsSample& c) {
    const int K = f.order;
    TensorField gd({Slot::SurfUp, Slot::SurfLo}, K);
    TensorField cb_lo({Slot::SurfLo, Slot::SurfLo}, K);
    TensorField cb_mix({Slot::SurfUp, Slot::SurfLo}, K);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            gd.at({a, b}) = c.gammadot[a][b];
            cb_lo.at({a, b}) = c.C * f.B[a][b];
            cb_mix.at({a, b}) = c.C * f.Bmix[a][b];
        }
    TensorField dgd = covariant_derivative(gd, f);
    TensorField dcb_lo = covariant_derivative(cb_lo, f);
    TensorField dcb_mix = covariant_derivative(cb_mix, f);

    double m = 0.0;
    for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a)
            for (int g = 0; g < 2; ++g) {
                double rhs = dgd.at({a, b, g}).value();
                for (int e = 0; e < 2; ++e) rhs -= c.Vsurf[e].value() * f.riem[b][g][a][e];
                for (int d = 0; d < 2; ++d)
                    rhs += f.metric_inv[b][d].value() * dcb_lo.at({d, a, g}).value();
                rhs -= dcb_mix.at({g, b, a}).value();
                m = std::max(m, std::abs(f.gamma[b][a][g].dt().value() - rhs));
            }
    return m;
}

TraceScalar trace_and_scalar(const FrameSample& f, const CmsSample& c) {
    double rd[2][2][2];
    temporal_curvature_def(f, c, rd);
    TraceScalar out;
    double tr[2];
    for (int a = 0; a < 2; ++a) {
        tr[a] = rd[0][a][0] + rd[1][a][1];
        out.trace_max = std::max(out.trace_max, std::abs(tr[a]));
    }
    double radicand = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) radicand += f.metric_inv[a][b].value() * tr[a] * tr[b];
    if (radicand < -1e-14) throw Error("temporal curvature scalar has a negative radicand");
    out.delta = std::sqrt(std::max(radicand, 0.0));
    return out;
}

double ambient_temporal_curvature(const FrameSample& f, const AmbientFrame& amb) {
    const int K = f.order;
    TensorField w({Slot::AmbUp, Slot::AmbLo}, K);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            Jet acc = Jet::constant(0.0, K);
            for (int j = 0; j < 3; ++j) acc = acc + amb.vel[j] * amb.gamma[i][j][k];
            w.at({i, k}) = acc;
        }
    TensorField dw = covariant_derivative(w, f, &amb);

    double m = 0.0;
    for (int al = 0; al < 2; ++al)
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) {
                Jet macc = Jet::constant(0.0, K);
                for (int j = 0; j < 3; ++j) macc = macc + amb.shift[j][al] * amb.gamma[i][j][k];
                m = std::max(m, std::abs(macc.dt().value() - dw.at({al, i, k}).value()));
            }
    return m;
}

void frame_commutation_projections(const FrameSample& f, const CmsSample& c, double out[3]) {
    const int K = f.order;
    TensorField b({Slot::SurfLo, Slot::SurfLo}, K);
    for (int a = 0; a < 2; ++a)
        for (int g = 0; g < 2; ++g) b.at({a, g}) = f.B[a][g];
    TensorField bdot = inv_time_derivative(b, f, c);
    TensorField ddc = covariant_derivative(covariant_derivative(TensorField::scalar(c.C), f), f);

    out[0] = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int g = 0; g < 2; ++g) {
            double r = bdot.at({a, g}).value() - ddc.at({a, g}).value();
            for (int e = 0; e < 2; ++e)
                r -= c.C.value() * f.Bmix[e][a].value() * f.B[e][g].value();
            out[0] = std::max(out[0], std::abs(r));
        }

    double rd[2][2][2], rr[2][2][2];
    temporal_curvature_def(f, c, rd);
    temporal_curvature_reduced(f, c, rr);
    out[1] = 0.0;
    for (int g = 0; g < 2; ++g)
        for (int a = 0; a < 2; ++a)
            for (int be = 0; be < 2; ++be)
                out[1] = std::max(out[1], std::abs(rd[g][a][be] - rr[g][a][be]));

    out[2] = 0.0;
    for (int a = 0; a < 2; ++a) {
        double r = 0.0;
        for (int g = 0; g < 2; ++g)
            r += f.B[a][g].value() * c.gradCup[g].value() -
                 f.Bmix[g][a].value() * c.gradC[g].value();
        out[2] = std::max(out[2], std::abs(r));
    }
}

} // namespace cmslab
