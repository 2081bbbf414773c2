#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>

namespace cmslab {

/// Error type for all domain/usage failures in the numerical core.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Derivative orders per chart variable. total() must not exceed the jet order.
struct MultiIndex {
    int iu = 0;
    int iv = 0;
    int it = 0;
    int total() const { return iu + iv + it; }
    bool operator==(const MultiIndex&) const = default;
};

enum class Var { U, V, T };

/// Highest jet order the dense layout supports.
inline constexpr int kMaxOrder = 4;

/// Number of multi-indices with total degree <= order.
int coeff_count(int order);

/// Multi-index stored at a dense position (graded layout, shared by all orders).
const MultiIndex& index_at(int pos);

/// Dense position of (iu,iv,it), or -1 when the degree exceeds kMaxOrder.
int position_of(int iu, int iv, int it);

/// Truncated Taylor expansion of a scalar in (u, v, t) about an evaluation point.
///
/// Coefficients are Taylor coefficients (derivative / factorials) in a dense
/// graded layout. `valid` tracks how many derivative orders are still exact:
/// differentiating consumes one order, so derived quantities carry fewer
/// trustworthy orders than the seeds they came from. Reading past `valid`
/// is an error, not a silent zero.
class Jet {
public:
    Jet() { c_.fill(0.0); }

    static Jet constant(double x, int order);
    static Jet variable(Var which, double point, int order);

    int order() const { return order_; }
    int valid() const { return valid_; }
    double value() const { return c_[0]; }

    /// Raw Taylor coefficient (no factorial scaling).
    double coeff(const MultiIndex& m) const;

    /// True partial derivative value: coefficient times iu!*iv!*it!.
    double partial(const MultiIndex& m) const;

    /// Derivative jets. One order of validity is consumed.
    Jet du() const { return derivative(Var::U); }
    Jet dv() const { return derivative(Var::V); }
    Jet dt() const { return derivative(Var::T); }
    Jet derivative(Var which) const;

    Jet operator-() const;
    friend Jet operator+(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a, const Jet& b);
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);

    friend Jet operator+(const Jet& a, double s);
    friend Jet operator-(const Jet& a, double s);
    friend Jet operator*(const Jet& a, double s);
    friend Jet operator/(const Jet& a, double s);
    friend Jet operator+(double s, const Jet& b);
    friend Jet operator-(double s, const Jet& b);
    friend Jet operator*(double s, const Jet& b);
    friend Jet operator/(double s, const Jet& b);

    /// Composite f(g) for univariate Taylor coefficients of f about g.value().
    /// `series` must have length order()+1.
    Jet compose(std::span<const double> series) const;

    bool finite() const;

    /// Max |difference| over the shared valid range; orders must match.
    friend double max_abs_diff(const Jet& a, const Jet& b);

private:
    void require_same_order(const Jet& b) const;

    int order_ = 0;
    int valid_ = 0;
    std::array<double, 35> c_{};
};

Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet tan(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sqrt(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);

/// Integer power by repeated multiplication; exact for any base when n >= 0.
Jet powi(const Jet& a, long long n);

/// Real power; requires a strictly positive base value.
Jet pow(const Jet& a, double p);

/// Branch-local atan2; requires x.value()^2 + y.value()^2 > 0.
Jet atan2(const Jet& y, const Jet& x);

} // namespace cmslab
