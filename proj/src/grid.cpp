#include "cmslab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace cmslab {

namespace {

bool frame_exists(const SurfaceSpec& s, double u, double v, double t) {
    try {
        sample_frame(s, u, v, t, 2);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

GridAxis build_axis(const SurfaceSpec& s, const GridSpec& g, double t, bool udir) {
    const Interval& iv = udir ? s.u : s.v;
    const Interval& other = udir ? s.v : s.u;
    const int n = udir ? g.nu : g.nv;
    GridAxis ax;
    ax.periodic = iv.periodic;
    ax.lo = iv.lo;
    ax.hi = iv.hi;
    ax.x.resize(static_cast<std::size_t>(n));
    if (iv.periodic) {
        ax.h = (iv.hi - iv.lo) / n;
        for (int i = 0; i < n; ++i) ax.x[static_cast<std::size_t>(i)] = iv.lo + ax.h * i;
        return ax;
    }
    const double mid = 0.5 * (other.lo + other.hi);
    auto ok = [&](double c) { return udir ? frame_exists(s, c, mid, t) : frame_exists(s, mid, c, t); };
    if (!ok(iv.lo)) {
        ax.inset_lo = true;
        ax.lo += g.pole_offset;
    }
    if (!ok(iv.hi)) {
        ax.inset_hi = true;
        ax.hi -= g.pole_offset;
    }
    ax.h = (ax.hi - ax.lo) / (n - 1);
    for (int i = 0; i < n; ++i) ax.x[static_cast<std::size_t>(i)] = ax.lo + ax.h * i;
    ax.x[static_cast<std::size_t>(n - 1)] = ax.hi;
    return ax;
}

}  // namespace

QuadratureGrid build_quadrature(const SurfaceSpec& spec, const GridSpec& grid, double t) {
    if (grid.nu < 4 || grid.nv < 4) throw Error("grid needs at least 4 nodes per direction");
    if (grid.order < 3 || grid.order > kMaxOrder) throw Error("grid jet order must be 3 or 4");
    if (!(grid.pole_offset > 0.0)) throw Error("pole offset must be positive");
    const double span = std::min(spec.u.hi - spec.u.lo, spec.v.hi - spec.v.lo);
    if (!(grid.pole_offset * 4.0 < span)) throw Error("pole offset too large for the chart");
    QuadratureGrid q;
    q.order = grid.order;
    q.u = build_axis(spec, grid, t, true);
    q.v = build_axis(spec, grid, t, false);
    return q;
}

std::vector<double> integrate_many(const SurfaceSpec& spec, const QuadratureGrid& q, double t,
                                   const std::vector<std::function<Jet(const FrameSample&)>>& densities,
                                   int* skipped) {
    const std::size_t m = densities.size();
    std::vector<double> sum(m, 0.0), corr(m, 0.0);
    const int nu = static_cast<int>(q.u.x.size());
    const int nv = static_cast<int>(q.v.x.size());
    const double cu = q.u.h * q.u.h / 12.0;
    const double cv = q.v.h * q.v.h / 12.0;
    int skip = 0;
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            std::optional<FrameSample> f;
            try {
                f.emplace(sample_frame(spec, q.u.x[static_cast<std::size_t>(i)],
                                       q.v.x[static_cast<std::size_t>(j)], t, q.order));
            } catch (const std::exception&) {
                ++skip;
                continue;
            }
            const double wu = q.u.weight(i);
            const double wv = q.v.weight(j);
            for (std::size_t k = 0; k < m; ++k) {
                Jet g = densities[k](*f) * f->sqrt_det;
                sum[k] += wu * wv * g.value();
                if (!q.u.periodic) {
                    if (i == 0) corr[k] += cu * wv * g.derivative(Var::U).value();
                    if (i == nu - 1) corr[k] -= cu * wv * g.derivative(Var::U).value();
                }
                if (!q.v.periodic) {
                    if (j == 0) corr[k] += cv * wu * g.derivative(Var::V).value();
                    if (j == nv - 1) corr[k] -= cv * wu * g.derivative(Var::V).value();
                }
            }
        }
    }
    for (std::size_t k = 0; k < m; ++k) sum[k] += corr[k];
    if (skipped) *skipped = skip;
    return sum;
}

double integrate(const SurfaceSpec& spec, const QuadratureGrid& q, double t,
                 const std::function<Jet(const FrameSample&)>& density, int* skipped) {
    return integrate_many(spec, q, t, {density}, skipped)[0];
}

}  // namespace cmslab
