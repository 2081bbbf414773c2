#include "cmslab/ambient.hpp"

#include <string>

namespace cmslab {

const char* ambient_name(AmbientKind k) {
    switch (k) {
        case AmbientKind::Cartesian: return "cartesian";
        case AmbientKind::Cylindrical: return "cylindrical";
        default: return "spherical";
    }
}

AmbientFrame build_ambient(AmbientKind kind, const FrameSample& f) {
    AmbientFrame a;
    a.kind = kind;
    const int K = f.order;
    Jet zero = Jet::constant(0.0, K);
    Jet one = Jet::constant(1.0, K);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) a.gamma[i][j][k] = zero;
            a.metric[i][j] = (i == j) ? one : zero;
            a.metric_inv[i][j] = (i == j) ? one : zero;
            a.basis[i][j] = (i == j) ? one : zero;
        }

    const Jet &x = f.R[0], &y = f.R[1], &z = f.R[2];

    if (kind == AmbientKind::Cartesian) {
        for (int i = 0; i < 3; ++i) a.coord[i] = f.R[i];
    } else {
        Jet rho2 = x * x + y * y;
        if (rho2.value() < 1e-18)
            throw Error(std::string(ambient_name(kind)) +
                        " ambient coordinates are degenerate on the z-axis at node (u=" +
                        std::to_string(f.u) + ", v=" + std::to_string(f.v) +
                        ", t=" + std::to_string(f.t) + ")");
        Jet rho = sqrt(rho2);
        Jet phi = atan2(y, x);
        if (kind == AmbientKind::Cylindrical) {
            a.coord[0] = rho;
            a.coord[1] = phi;
            a.coord[2] = z;
            a.gamma[0][1][1] = -rho;               // rho_phiphi
            a.gamma[1][0][1] = 1.0 / rho;          // phi_rhophi
            a.gamma[1][1][0] = a.gamma[1][0][1];
            a.metric[1][1] = rho2;
            a.metric_inv[1][1] = 1.0 / rho2;
            a.basis[0][0] = cos(phi);
            a.basis[0][1] = sin(phi);
            a.basis[1][0] = -rho * a.basis[0][1];
            a.basis[1][1] = rho * a.basis[0][0];
        } else {
            Jet r = sqrt(rho2 + z * z);
            a.coord[0] = r;
            a.coord[1] = atan2(rho, z);            // polar angle
            a.coord[2] = phi;
            a.gamma[0][1][1] = -r;                 // r_thetatheta
            a.gamma[0][2][2] = -rho2 / r;          // r_phiphi = -r sin^2
            a.gamma[1][0][1] = 1.0 / r;            // theta_rtheta
            a.gamma[1][1][0] = a.gamma[1][0][1];
            a.gamma[1][2][2] = -rho * z / (r * r); // theta_phiphi = -sin cos
            a.gamma[2][0][2] = 1.0 / r;            // phi_rphi
            a.gamma[2][2][0] = a.gamma[2][0][2];
            a.gamma[2][1][2] = z / rho;            // phi_thetaphi = cot
            a.gamma[2][2][1] = a.gamma[2][1][2];
            a.metric[1][1] = r * r;
            a.metric[2][2] = rho2;                 // r^2 sin^2
            a.metric_inv[1][1] = 1.0 / a.metric[1][1];
            a.metric_inv[2][2] = 1.0 / rho2;
            a.basis[0][0] = x / r;
            a.basis[0][1] = y / r;
            a.basis[0][2] = z / r;
            a.basis[1][0] = z * x / rho;
            a.basis[1][1] = z * y / rho;
            a.basis[1][2] = -rho;
            a.basis[2][0] = -y;
            a.basis[2][1] = x;
            a.basis[2][2] = zero;
        }
    }

    for (int i = 0; i < 3; ++i) {
        a.vel[i] = a.coord[i].dt();
        for (int al = 0; al < 2; ++al)
            a.shift[i][al] = a.coord[i].derivative(al == 0 ? Var::U : Var::V);
    }
    return a;
}

} // namespace cmslab
