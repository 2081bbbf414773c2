#include "cmslab/jet.hpp"

#include <cmath>

namespace cmslab {

namespace {

constexpr int kCoeffCount[kMaxOrder + 2] = {1, 4, 10, 20, 35, 35};

struct Tables {
    MultiIndex index[35];
    int position[kMaxOrder + 1][kMaxOrder + 1][kMaxOrder + 1]; // [iu][iv][it]
    int product[35][35];          // position of index sum, -1 past kMaxOrder
    double factorial_prod[35];    // iu!*iv!*it! per position
    int degree[35];
    int count_below_degree[kMaxOrder + 2]; // positions with degree < d

    Tables() {
        int pos = 0;
        for (int d = 0; d <= kMaxOrder; ++d) {
            count_below_degree[d] = pos;
            for (int iu = d; iu >= 0; --iu)
                for (int iv = d - iu; iv >= 0; --iv) {
                    int it = d - iu - iv;
                    index[pos] = {iu, iv, it};
                    position[iu][iv][it] = pos;
                    degree[pos] = d;
                    ++pos;
                }
        }
        count_below_degree[kMaxOrder + 1] = pos;
        auto fact = [](int n) {
            double f = 1;
            for (int k = 2; k <= n; ++k) f *= k;
            return f;
        };
        for (int i = 0; i < 35; ++i) {
            const MultiIndex& m = index[i];
            factorial_prod[i] = fact(m.iu) * fact(m.iv) * fact(m.it);
            for (int j = 0; j < 35; ++j) {
                int du = m.iu + index[j].iu, dv = m.iv + index[j].iv, dt = m.it + index[j].it;
                product[i][j] = (du + dv + dt <= kMaxOrder) ? position[du][dv][dt] : -1;
            }
        }
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

void check_order(int order) {
    if (order < 0 || order > kMaxOrder)
        throw Error("jet order must lie in [0, " + std::to_string(kMaxOrder) + "], got " +
                    std::to_string(order));
}

} // namespace

int coeff_count(int order) {
    check_order(order);
    return kCoeffCount[order];
}

const MultiIndex& index_at(int pos) { return tables().index[pos]; }

int position_of(int iu, int iv, int it) {
    if (iu < 0 || iv < 0 || it < 0) return -1;
    if (iu + iv + it > kMaxOrder) return -1;
    return tables().position[iu][iv][it];
}

Jet Jet::constant(double x, int order) {
    check_order(order);
    if (!std::isfinite(x)) throw Error("jet constant must be finite");
    Jet j;
    j.order_ = order;
    j.valid_ = order;
    j.c_[0] = x;
    return j;
}

Jet Jet::variable(Var which, double point, int order) {
    check_order(order);
    if (order < 1) throw Error("jet variable needs order >= 1");
    if (!std::isfinite(point)) throw Error("jet variable point must be finite");
    Jet j;
    j.order_ = order;
    j.valid_ = order;
    j.c_[0] = point;
    switch (which) {
        case Var::U: j.c_[position_of(1, 0, 0)] = 1.0; break;
        case Var::V: j.c_[position_of(0, 1, 0)] = 1.0; break;
        case Var::T: j.c_[position_of(0, 0, 1)] = 1.0; break;
    }
    return j;
}

double Jet::coeff(const MultiIndex& m) const {
    int pos = position_of(m.iu, m.iv, m.it);
    if (pos < 0 || m.total() > order_)
        throw Error("jet coefficient index exceeds order " + std::to_string(order_));
    return c_[pos];
}

double Jet::partial(const MultiIndex& m) const {
    int pos = position_of(m.iu, m.iv, m.it);
    if (pos < 0 || m.total() > order_)
        throw Error("jet partial index exceeds order " + std::to_string(order_));
    if (m.total() > valid_)
        throw Error("jet partial of total degree " + std::to_string(m.total()) +
                    " exceeds valid depth " + std::to_string(valid_));
    return c_[pos] * tables().factorial_prod[pos];
}

Jet Jet::derivative(Var which) const {
    if (valid_ < 1) throw Error("jet derivative exhausts valid depth");
    const Tables& tb = tables();
    Jet r;
    r.order_ = order_;
    r.valid_ = valid_ - 1;
    int n = kCoeffCount[order_];
    for (int pos = 0; pos < n; ++pos) {
        const MultiIndex& m = tb.index[pos];
        if (tb.degree[pos] >= order_) break; // shifted source would exceed storage
        int src, mult;
        switch (which) {
            case Var::U: src = tb.position[m.iu + 1][m.iv][m.it]; mult = m.iu + 1; break;
            case Var::V: src = tb.position[m.iu][m.iv + 1][m.it]; mult = m.iv + 1; break;
            default:     src = tb.position[m.iu][m.iv][m.it + 1]; mult = m.it + 1; break;
        }
        r.c_[pos] = mult * c_[src];
    }
    return r;
}

void Jet::require_same_order(const Jet& b) const {
    if (order_ != b.order_)
        throw Error("jet order mismatch: " + std::to_string(order_) + " vs " +
                    std::to_string(b.order_));
}

Jet Jet::operator-() const {
    Jet r = *this;
    int n = kCoeffCount[order_];
    for (int i = 0; i < n; ++i) r.c_[i] = -r.c_[i];
    return r;
}

Jet operator+(const Jet& a, const Jet& b) {
    a.require_same_order(b);
    Jet r = a;
    r.valid_ = std::min(a.valid_, b.valid_);
    int n = kCoeffCount[a.order_];
    for (int i = 0; i < n; ++i) r.c_[i] += b.c_[i];
    return r;
}

Jet operator-(const Jet& a, const Jet& b) {
    a.require_same_order(b);
    Jet r = a;
    r.valid_ = std::min(a.valid_, b.valid_);
    int n = kCoeffCount[a.order_];
    for (int i = 0; i < n; ++i) r.c_[i] -= b.c_[i];
    return r;
}

Jet operator*(const Jet& a, const Jet& b) {
    a.require_same_order(b);
    const Tables& tb = tables();
    Jet r;
    r.order_ = a.order_;
    r.valid_ = std::min(a.valid_, b.valid_);
    int n = kCoeffCount[a.order_];
    for (int i = 0; i < n; ++i) {
        double ai = a.c_[i];
        if (ai == 0.0) continue;
        // graded layout: degrees are nondecreasing, so stop once the product
        // degree would exceed storage
        int jmax = tb.count_below_degree[a.order_ - tb.degree[i] + 1];
        const int* prod = tb.product[i];
        for (int j = 0; j < jmax; ++j) r.c_[prod[j]] += ai * b.c_[j];
    }
    return r;
}

Jet Jet::compose(std::span<const double> series) const {
    if ((int)series.size() != order_ + 1)
        throw Error("composition series length must be order+1");
    Jet dx = *this;
    dx.c_[0] = 0.0;
    Jet r = Jet::constant(series[order_], order_);
    for (int k = order_ - 1; k >= 0; --k) {
        r = r * dx;
        r.c_[0] += series[k];
    }
    r.valid_ = valid_;
    return r;
}

namespace {

// Taylor coefficients of 1/x about a (a != 0).
void recip_series(double a, int order, double* out) {
    double inv = 1.0 / a;
    double c = inv;
    for (int k = 0; k <= order; ++k) {
        out[k] = c;
        c *= -inv;
    }
}

} // namespace

Jet operator/(const Jet& a, const Jet& b) {
    a.require_same_order(b);
    if (b.value() == 0.0) throw Error("jet division by zero value");
    double series[kMaxOrder + 1];
    recip_series(b.value(), b.order_, series);
    Jet r = a * b.compose(std::span<const double>(series, b.order_ + 1));
    return r;
}

Jet operator+(const Jet& a, double s) { Jet r = a; r.c_[0] += s; return r; }
Jet operator-(const Jet& a, double s) { Jet r = a; r.c_[0] -= s; return r; }
Jet operator*(const Jet& a, double s) {
    Jet r = a;
    int n = kCoeffCount[a.order_];
    for (int i = 0; i < n; ++i) r.c_[i] *= s;
    return r;
}
Jet operator/(const Jet& a, double s) {
    if (s == 0.0) throw Error("jet division by zero value");
    return a * (1.0 / s);
}
Jet operator+(double s, const Jet& b) { return b + s; }
Jet operator-(double s, const Jet& b) { Jet r = -b; r.c_[0] += s; return r; }
Jet operator*(double s, const Jet& b) { return b * s; }
Jet operator/(double s, const Jet& b) {
    if (b.value() == 0.0) throw Error("jet division by zero value");
    double series[kMaxOrder + 1];
    recip_series(b.value(), b.order_, series);
    return Jet::constant(s, b.order_) * b.compose(std::span<const double>(series, b.order_ + 1));
}

bool Jet::finite() const {
    int n = kCoeffCount[order_];
    for (int i = 0; i < n; ++i)
        if (!std::isfinite(c_[i])) return false;
    return true;
}

double max_abs_diff(const Jet& a, const Jet& b) {
    a.require_same_order(b);
    int upto = kCoeffCount[std::min(a.valid_, b.valid_)];
    double m = 0.0;
    for (int i = 0; i < upto; ++i) m = std::max(m, std::abs(a.c_[i] - b.c_[i]));
    return m;
}

namespace {

double fact_d(int n) {
    double f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

} // namespace

Jet sin(const Jet& a) {
    double s = std::sin(a.value()), c = std::cos(a.value());
    double cycle[4] = {s, c, -s, -c};
    double series[kMaxOrder + 1];
    for (int k = 0; k <= a.order(); ++k) series[k] = cycle[k % 4] / fact_d(k);
    return a.compose(std::span<const double>(series, a.order() + 1));
}

Jet cos(const Jet& a) {
    double s = std::sin(a.value()), c = std::cos(a.value());
    double cycle[4] = {c, -s, -c, s};
    double series[kMaxOrder + 1];
    for (int k = 0; k <= a.order(); ++k) series[k] = cycle[k % 4] / fact_d(k);
    return a.compose(std::span<const double>(series, a.order() + 1));
}

Jet tan(const Jet& a) {
    // y' = 1 + y^2 gives (k+1) y_{k+1} = [k == 0] + sum_i y_i y_{k-i}
    double y[kMaxOrder + 1];
    y[0] = std::tan(a.value());
    for (int k = 0; k < a.order(); ++k) {
        double conv = (k == 0) ? 1.0 : 0.0;
        for (int i = 0; i <= k; ++i) conv += y[i] * y[k - i];
        y[k + 1] = conv / (k + 1);
    }
    return a.compose(std::span<const double>(y, a.order() + 1));
}

Jet exp(const Jet& a) {
    double e = std::exp(a.value());
    double series[kMaxOrder + 1];
    for (int k = 0; k <= a.order(); ++k) series[k] = e / fact_d(k);
    return a.compose(std::span<const double>(series, a.order() + 1));
}

Jet log(const Jet& a) {
    if (!(a.value() > 0.0)) throw Error("jet log requires a positive value");
    double series[kMaxOrder + 1];
    series[0] = std::log(a.value());
    double ia = 1.0 / a.value();
    double p = ia;
    for (int k = 1; k <= a.order(); ++k) {
        series[k] = ((k % 2) ? p : -p) / k;
        p *= ia;
    }
    return a.compose(std::span<const double>(series, a.order() + 1));
}

Jet sqrt(const Jet& a) {
    if (!(a.value() > 0.0)) throw Error("jet sqrt requires a positive value");
    return pow(a, 0.5);
}

Jet sinh(const Jet& a) {
    double s = std::sinh(a.value()), c = std::cosh(a.value());
    double series[kMaxOrder + 1];
    for (int k = 0; k <= a.order(); ++k) series[k] = ((k % 2) ? c : s) / fact_d(k);
    return a.compose(std::span<const double>(series, a.order() + 1));
}

Jet cosh(const Jet& a) {
    double s = std::sinh(a.value()), c = std::cosh(a.value());
    double series[kMaxOrder + 1];
    for (int k = 0; k <= a.order(); ++k) series[k] = ((k % 2) ? s : c) / fact_d(k);
    return a.compose(std::span<const double>(series, a.order() + 1));
}

Jet powi(const Jet& a, long long n) {
    if (n < 0) {
        if (a.value() == 0.0) throw Error("jet negative power of zero value");
        return 1.0 / powi(a, -n);
    }
    Jet r = Jet::constant(1.0, a.order());
    Jet base = a;
    while (n > 0) {
        if (n & 1) r = r * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return r;
}

Jet pow(const Jet& a, double p) {
    if (double ip; std::modf(p, &ip) == 0.0 && std::abs(p) < 64)
        return powi(a, (long long)p);
    if (!(a.value() > 0.0)) throw Error("jet pow requires a positive base value");
    double series[kMaxOrder + 1];
    double binom = 1.0;
    for (int k = 0; k <= a.order(); ++k) {
        series[k] = binom * std::pow(a.value(), p - k);
        binom *= (p - k) / (k + 1);
    }
    return a.compose(std::span<const double>(series, a.order() + 1));
}

namespace {

// Taylor coefficients of atan about a.
void atan_series(double a, int order, double* out) {
    out[0] = std::atan(a);
    if (order == 0) return;
    // derivative 1/(1+x^2): reciprocal series of w = (1+a^2) + 2a dx + dx^2
    double w[kMaxOrder + 1] = {1.0 + a * a, 2.0 * a, 1.0, 0.0, 0.0};
    double v[kMaxOrder + 1];
    v[0] = 1.0 / w[0];
    for (int k = 1; k <= order - 1; ++k) {
        double s = 0.0;
        for (int i = 1; i <= k; ++i) s += w[i] * v[k - i];
        v[k] = -s / w[0];
    }
    for (int k = 1; k <= order; ++k) out[k] = v[k - 1] / k;
}

} // namespace

Jet atan2(const Jet& y, const Jet& x) {
    double x0 = x.value(), y0 = y.value();
    if (x0 * x0 + y0 * y0 == 0.0) throw Error("jet atan2 at the coordinate origin");
    // rotate by -theta0 so the increment stays on the principal branch
    double theta0 = std::atan2(y0, x0);
    Jet num = y * x0 - x * y0;   // value exactly 0
    Jet den = x * x0 + y * y0;   // value x0^2 + y0^2 > 0
    Jet w = num / den;
    double series[kMaxOrder + 1];
    atan_series(0.0, w.order(), series);
    Jet r = w.compose(std::span<const double>(series, w.order() + 1));
    return r + theta0;
}

} // namespace cmslab
