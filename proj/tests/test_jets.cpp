#include "doctest.h"

#include "cmslab/jet.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <vector>

using namespace cmslab;

namespace {

Jet U(double p, int K = 3) { return Jet::variable(Var::U, p, K); }
Jet V(double p, int K = 3) { return Jet::variable(Var::V, p, K); }
Jet T(double p, int K = 3) { return Jet::variable(Var::T, p, K); }

} // namespace

TEST_CASE("constant jets") {
    Jet c = Jet::constant(5.0, 3);
    CHECK(c.value() == 5.0);
    for (int pos = 1; pos < coeff_count(3); ++pos)
        CHECK(c.coeff(index_at(pos)) == 0.0);

    Jet z = Jet::constant(0.0, 0);
    CHECK(z.value() == 0.0);
    CHECK(z.order() == 0);

    // multiplicative identity
    Jet j = sin(U(0.7)) * exp(T(0.2));
    Jet one = Jet::constant(1.0, 3);
    CHECK(max_abs_diff(one * j, j) == 0.0);

    CHECK_THROWS_AS(Jet::constant(std::nan(""), 3), Error);
    CHECK_THROWS_AS(Jet::constant(1.0, 5), Error);
    CHECK_THROWS_AS(Jet::constant(1.0, -1), Error);
}

TEST_CASE("variable seeds") {
    Jet u = U(2.0);
    CHECK(u.value() == 2.0);
    CHECK(u.coeff({1, 0, 0}) == 1.0);
    CHECK(u.coeff({0, 1, 0}) == 0.0);
    CHECK(u.coeff({2, 0, 0}) == 0.0);

    Jet t2 = T(0.0) * T(0.0);
    CHECK(t2.coeff({0, 0, 2}) == 1.0);
    for (int pos = 0; pos < coeff_count(3); ++pos)
        if (!(index_at(pos) == MultiIndex{0, 0, 2}))
            CHECK(t2.coeff(index_at(pos)) == 0.0);

    CHECK_THROWS_AS(Jet::variable(Var::U, 1.0, 0), Error);
}

TEST_CASE("taylor series of elementary functions") {
    Jet s = sin(U(0.0));
    CHECK(s.value() == 0.0);
    CHECK(s.coeff({1, 0, 0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.coeff({2, 0, 0}) == 0.0);
    CHECK(s.coeff({3, 0, 0}) == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));

    Jet e = exp(T(0.0));
    CHECK(e.value() == 1.0);
    CHECK(e.coeff({0, 0, 1}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(e.coeff({0, 0, 2}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(e.coeff({0, 0, 3}) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("product rule and partial extraction") {
    Jet f = U(2.0) * V(3.0);
    CHECK(f.value() == 6.0);
    CHECK(f.partial({1, 0, 0}) == 3.0);
    CHECK(f.partial({0, 1, 0}) == 2.0);
    CHECK(f.partial({1, 1, 0}) == 1.0);
    CHECK(f.partial({0, 0, 0}) == 6.0);

    Jet t3 = powi(T(0.0), 3);
    CHECK(t3.partial({0, 0, 3}) == 6.0);

    Jet g = powi(U(1.0), 2) * V(1.0);
    CHECK(g.partial({1, 1, 0}) == 2.0);

    CHECK_THROWS_AS(f.partial({2, 2, 0}), Error);
    CHECK_THROWS_AS(f.partial({4, 0, 0}), Error);
}

TEST_CASE("constant propagation through functions") {
    Jet four = Jet::constant(4.0, 3) + 0.0 * U(1.0);
    Jet two = sqrt(four);
    CHECK(two.value() == 2.0);
    for (int pos = 1; pos < coeff_count(3); ++pos)
        CHECK(two.coeff(index_at(pos)) == 0.0);
}

TEST_CASE("arithmetic preconditions") {
    CHECK_THROWS_AS(U(1.0, 3) + U(1.0, 2), Error);
    CHECK_THROWS_AS(U(1.0) / (U(1.0) - 1.0), Error);
    CHECK_THROWS_AS(log(U(0.0)), Error);
    CHECK_THROWS_AS(log(U(-2.0)), Error);
    CHECK_THROWS_AS(sqrt(U(-1.0)), Error);
    CHECK_THROWS_AS(pow(U(-1.0), 0.5), Error);
    CHECK_THROWS_AS(powi(0.0 * U(1.0), -2), Error);
}

TEST_CASE("valid depth accounting") {
    Jet u = U(0.3);
    CHECK(u.valid() == 3);
    Jet du = u.du();
    CHECK(du.valid() == 2);
    CHECK(du.value() == 1.0);

    // combining consumes the weaker operand's depth
    Jet mixed = u * du;
    CHECK(mixed.valid() == 2);
    CHECK_THROWS_AS(mixed.partial({3, 0, 0}), Error);

    Jet f = sin(u).du().du().du();
    CHECK(f.valid() == 0);
    CHECK(f.value() == doctest::Approx(-std::cos(0.3)));
    CHECK_THROWS_AS(f.du(), Error);
}

TEST_CASE("derivative jets agree with coefficient shifts") {
    Jet f = sin(U(0.4)) * cos(V(-0.2)) + exp(0.5 * T(0.1));
    Jet fu = f.du();
    CHECK(fu.value() == doctest::Approx(f.partial({1, 0, 0})).epsilon(1e-15));
    CHECK(fu.partial({0, 1, 0}) == doctest::Approx(f.partial({1, 1, 0})).epsilon(1e-15));
    CHECK(fu.partial({0, 0, 1}) == doctest::Approx(f.partial({1, 0, 1})).epsilon(1e-15));
    Jet ft = f.dt();
    CHECK(ft.partial({0, 0, 1}) == doctest::Approx(f.partial({0, 0, 2})).epsilon(1e-15));
}

namespace {

// Monomial polynomials over dyadic points with small integer coefficients are
// exact in binary floating point, so the jet must reproduce hand
// differentiation bit for bit.
struct Monomial {
    double c;
    int pu, pv, pt;
};

double eval_poly_partial(const std::vector<Monomial>& poly, MultiIndex m, double u, double v,
                         double t) {
    auto dpow = [](double x, int p, int d) {
        double f = 1.0;
        for (int k = 0; k < d; ++k) f *= (p - k);
        if (f == 0.0) return 0.0;
        double r = f;
        for (int k = 0; k < p - d; ++k) r *= x;
        return r;
    };
    double s = 0.0;
    for (const Monomial& mo : poly) {
        if (mo.pu < m.iu || mo.pv < m.iv || mo.pt < m.it) continue;
        s += mo.c * dpow(u, mo.pu, m.iu) * dpow(v, mo.pv, m.iv) * dpow(t, mo.pt, m.it);
    }
    return s;
}

} // namespace

TEST_CASE("polynomial jets are exact against hand differentiation") {
    std::mt19937 rng(20260816);
    std::uniform_int_distribution<int> coeff(-8, 8);
    const double pts[3] = {0.5, 0.25, 2.0}; // dyadic: all arithmetic exact
    for (int order = 1; order <= 4; ++order) {
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<Monomial> poly;
            Jet ju = U(pts[0], order), jv = V(pts[1], order), jt = T(pts[2], order);
            Jet f = Jet::constant(0.0, order);
            std::uniform_int_distribution<int> deg(0, order);
            for (int k = 0; k < 6; ++k) {
                int pu = deg(rng), pv = deg(rng), pt = deg(rng);
                if (pu + pv + pt > order) continue;
                double c = coeff(rng);
                poly.push_back({c, pu, pv, pt});
                f = f + c * powi(ju, pu) * powi(jv, pv) * powi(jt, pt);
            }
            for (int pos = 0; pos < coeff_count(order); ++pos) {
                MultiIndex m = index_at(pos);
                double want = eval_poly_partial(poly, m, pts[0], pts[1], pts[2]);
                CHECK(f.partial(m) == want);
            }
        }
    }
}

TEST_CASE("ring axioms on random jets") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> pt(-1.0, 1.0);
    std::uniform_real_distribution<double> sc(-2.0, 2.0);
    auto random_jet = [&](int order) {
        Jet u = U(pt(rng), order), v = V(pt(rng), order), t = T(pt(rng), order);
        return sc(rng) * sin(u + 0.5 * v) + sc(rng) * exp(0.3 * t) * cos(v) +
               sc(rng) * u * v * t + sc(rng);
    };
    for (int order : {3, 4}) {
        for (int trial = 0; trial < 50; ++trial) {
            Jet a = random_jet(order), b = random_jet(order), c = random_jet(order);
            CHECK(max_abs_diff((a + b) * c, a * c + b * c) < 1e-14);
            CHECK(max_abs_diff(a * b, b * a) < 1e-14);
            CHECK(max_abs_diff((a * b) * c, a * (b * c)) < 1e-13);
            CHECK(max_abs_diff(a + (b + c), (a + b) + c) < 1e-14);
            CHECK(max_abs_diff(a - a, Jet::constant(0.0, order)) == 0.0);
        }
    }
}

TEST_CASE("division and reciprocal round trips") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> pt(-1.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        Jet a = sin(U(pt(rng))) + 2.0 * cos(V(pt(rng))) + 4.0;
        Jet b = exp(0.4 * T(pt(rng))) + 1.0;
        Jet q = a / b;
        CHECK(max_abs_diff(q * b, a) < 1e-13);
        Jet r = 1.0 / b;
        CHECK(max_abs_diff(r * b, Jet::constant(1.0, 3)) < 1e-14);
    }
}

TEST_CASE("integer and real powers agree where both apply") {
    Jet a = 1.5 + sin(U(0.3)) * cos(T(-0.2));
    CHECK(max_abs_diff(powi(a, 3), a * a * a) < 1e-14);
    CHECK(max_abs_diff(pow(a, 3.0), powi(a, 3)) == 0.0);
    CHECK(max_abs_diff(pow(a, 2.5) * pow(a, -2.5), Jet::constant(1.0, 3)) < 1e-13);
    CHECK(max_abs_diff(sqrt(a) * sqrt(a), a) < 1e-14);
    CHECK(max_abs_diff(powi(a, -2) * a * a, Jet::constant(1.0, 3)) < 1e-13);
}

TEST_CASE("hyperbolics, tan and atan2") {
    Jet x = 0.4 + 0.3 * U(0.2);
    CHECK(max_abs_diff(cosh(x) * cosh(x) - sinh(x) * sinh(x), Jet::constant(1.0, 3)) < 1e-13);
    CHECK(max_abs_diff(tan(x) * cos(x), sin(x)) < 1e-13);

    // atan2 must invert the polar map
    Jet r = 2.0 + 0.5 * sin(U(0.3)) + 0.25 * T(-0.4);
    Jet th = 0.7 + 0.3 * cos(V(0.9));
    Jet xx = r * cos(th), yy = r * sin(th);
    CHECK(max_abs_diff(atan2(yy, xx), th) < 1e-12);
    CHECK(max_abs_diff(sqrt(xx * xx + yy * yy), r) < 1e-12);
    CHECK_THROWS_AS(atan2(0.0 * x, 0.0 * x), Error);

    // quadrant handling
    Jet mx = -1.0 + 0.1 * U(0.0);
    Jet py = 0.5 + 0.1 * V(0.0);
    CHECK(atan2(py, mx).value() == doctest::Approx(std::atan2(0.5, -1.0)).epsilon(1e-15));
}

namespace {

struct FdFamily {
    std::function<Jet(const Jet&, const Jet&, const Jet&)> jet;
    std::function<long double(long double, long double, long double)> real;
};

// hand-written mirrors: the long-double path shares nothing with Jet
std::vector<FdFamily> fd_families() {
    return {
        {[](const Jet& u, const Jet& v, const Jet& t) { return sin(u * v) + exp(0.5 * t); },
         [](long double u, long double v, long double t) {
             return std::sin(u * v) + std::exp(0.5L * t);
         }},
        {[](const Jet& u, const Jet& v, const Jet& t) {
             return cos(u + 2.0 * v) * sinh(0.3 * t) + u * u;
         },
         [](long double u, long double v, long double t) {
             return std::cos(u + 2.0L * v) * std::sinh(0.3L * t) + u * u;
         }},
        {[](const Jet& u, const Jet& v, const Jet& t) {
             return sqrt(2.0 + sin(u)) * log(2.0 + cos(v * t));
         },
         [](long double u, long double v, long double t) {
             return std::sqrt(2.0L + std::sin(u)) * std::log(2.0L + std::cos(v * t));
         }},
        {[](const Jet& u, const Jet& v, const Jet& t) {
             return tan(0.4 * sin(u + v)) / (2.0 + cos(t));
         },
         [](long double u, long double v, long double t) {
             return std::tan(0.4L * std::sin(u + v)) / (2.0L + std::cos(t));
         }},
        {[](const Jet& u, const Jet& v, const Jet& t) {
             return pow(2.0 + sin(u * t), 1.5) - cosh(0.5 * v);
         },
         [](long double u, long double v, long double t) {
             return std::pow(2.0L + std::sin(u * t), 1.5L) - std::cosh(0.5L * v);
         }},
    };
}

} // namespace

TEST_CASE("first and second partials match central finite differences") {
    const long double h = 1e-5L;
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> pt(-1.2, 1.2);
    auto rel = [](double a, long double b) {
        long double scale =
            std::max<long double>({1.0L, std::fabs((long double)a), std::fabs(b)});
        return (double)(std::fabs((long double)a - b) / scale);
    };
    for (const FdFamily& fam : fd_families()) {
        for (int trial = 0; trial < 8; ++trial) {
            double u0 = pt(rng), v0 = pt(rng), t0 = pt(rng);
            Jet f = fam.jet(U(u0), V(v0), T(t0));
            auto g = [&](long double du, long double dv, long double dt) {
                return fam.real(u0 + du, v0 + dv, t0 + dt);
            };
            // first order, one variable at a time
            long double fd_u = (g(h, 0, 0) - g(-h, 0, 0)) / (2 * h);
            long double fd_v = (g(0, h, 0) - g(0, -h, 0)) / (2 * h);
            long double fd_t = (g(0, 0, h) - g(0, 0, -h)) / (2 * h);
            CHECK(rel(f.partial({1, 0, 0}), fd_u) < 1e-6);
            CHECK(rel(f.partial({0, 1, 0}), fd_v) < 1e-6);
            CHECK(rel(f.partial({0, 0, 1}), fd_t) < 1e-6);
            // pure second order
            long double fd_uu = (g(h, 0, 0) - 2 * g(0, 0, 0) + g(-h, 0, 0)) / (h * h);
            long double fd_tt = (g(0, 0, h) - 2 * g(0, 0, 0) + g(0, 0, -h)) / (h * h);
            CHECK(rel(f.partial({2, 0, 0}), fd_uu) < 1e-6);
            CHECK(rel(f.partial({0, 0, 2}), fd_tt) < 1e-6);
            // mixed second order
            long double fd_uv =
                (g(h, h, 0) - g(h, -h, 0) - g(-h, h, 0) + g(-h, -h, 0)) / (4 * h * h);
            long double fd_ut =
                (g(h, 0, h) - g(h, 0, -h) - g(-h, 0, h) + g(-h, 0, -h)) / (4 * h * h);
            CHECK(rel(f.partial({1, 1, 0}), fd_uv) < 1e-6);
            CHECK(rel(f.partial({1, 0, 1}), fd_ut) < 1e-6);
        }
    }
}

TEST_CASE("order-4 jets carry third and fourth derivatives") {
    Jet f = sin(U(0.3, 4)) * exp(0.5 * T(0.1, 4));
    // d^3/du^3 = -cos(u) e^{t/2}; d^4/du^3 dt = -cos(u) e^{t/2}/2
    double want3 = -std::cos(0.3) * std::exp(0.05);
    CHECK(f.partial({3, 0, 0}) == doctest::Approx(want3).epsilon(1e-14));
    CHECK(f.partial({3, 0, 1}) == doctest::Approx(want3 * 0.5).epsilon(1e-14));
    CHECK(f.partial({4, 0, 0}) == doctest::Approx(std::sin(0.3) * std::exp(0.05)).epsilon(1e-14));
}
