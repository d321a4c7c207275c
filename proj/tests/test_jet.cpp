#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "surflap/expr.hpp"
#include "surflap/fd.hpp"
#include "surflap/jet.hpp"

using namespace surflap;

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TEST_CASE("jet_lift of sin(t) at 0 reproduces the sine series") {
    Jet j = jet_lift(parse_expr("sin(t)"), {{"t", 0.0}}, 3);
    CHECK(j.value() == doctest::Approx(0.0));
    CHECK(j.d(0) == doctest::Approx(1.0));
    CHECK(j.d(0, 0) == doctest::Approx(0.0));
    CHECK(j.d(0, 0, 0) == doctest::Approx(-1.0));
}

TEST_CASE("jet_lift of t*t at 2") {
    Jet j = jet_lift(parse_expr("t*t"), {{"t", 2.0}}, 2);
    CHECK(j.value() == 4.0);
    CHECK(j.d(0) == 4.0);
    CHECK(j.d(0, 0) == 2.0);
}

TEST_CASE("jet_lift of the ellipse speed matches a finite-difference oracle") {
    const double t0 = M_PI / 3.0;
    const Expr e = parse_expr("sqrt(4*cos(t)^2+sin(t)^2)");
    ScalarFunction f = [&](std::span<const double> x) { return evaluate(e, {{"t", x[0]}}); };
    const double p[] = {t0}, dir[] = {1.0};
    const FdEstimate fd = fd_directional(f, p, dir, 1);
    // frozen from the oracle run above: -3 sin(pi/3) cos(pi/3) / sqrt(1.75)
    const double expected_slope = -0.98198050606196585;
    CHECK(fd.value == doctest::Approx(expected_slope).epsilon(1e-9));

    Jet j = jet_lift(e, {{"t", t0}}, 1);
    CHECK(j.value() == doctest::Approx(std::sqrt(1.75)).epsilon(1e-15));
    CHECK(j.d(0) == doctest::Approx(expected_slope).epsilon(1e-12));
}

TEST_CASE("multivariate product rule and mixed partials") {
    // f = x^2 y + sin(x y) z at (0.3, -1.2, 2.0)
    const double x0 = 0.3, y0 = -1.2, z0 = 2.0;
    Jet x = Jet::variable(3, 3, 0, x0), y = Jet::variable(3, 3, 1, y0), z = Jet::variable(3, 3, 2, z0);
    Jet f = x * x * y + sin(x * y) * z;
    const double xy = x0 * y0;
    CHECK(f.value() == doctest::Approx(x0 * x0 * y0 + std::sin(xy) * z0));
    CHECK(f.d(0) == doctest::Approx(2 * x0 * y0 + std::cos(xy) * y0 * z0));
    CHECK(f.d(0, 1) == doctest::Approx(2 * x0 + (std::cos(xy) - xy * std::sin(xy)) * z0));
    CHECK(f.d(1, 0) == doctest::Approx(f.d(0, 1)));
    CHECK(f.d(0, 1, 2) == doctest::Approx(std::cos(xy) - xy * std::sin(xy)));
    CHECK(f.d(2, 2) == doctest::Approx(0.0));
    CHECK(f.d(0, 0, 0) == doctest::Approx(-std::cos(xy) * y0 * y0 * y0 * z0));
}

TEST_CASE("derivative lowers the order and matches the partials") {
    Jet x = Jet::variable(2, 3, 0, 0.7), y = Jet::variable(2, 3, 1, 1.1);
    Jet f = exp(x) * y * y;
    Jet fx = f.derivative(0);
    CHECK(fx.order() == 2);
    CHECK(fx.value() == doctest::Approx(f.d(0)));
    CHECK(fx.d(1) == doctest::Approx(f.d(0, 1)));
    CHECK(fx.d(0, 1) == doctest::Approx(f.d(0, 0, 1)));
}

TEST_CASE("mixed orders truncate to the lower order") {
    Jet a = Jet::variable(1, 3, 0, 1.0), b = Jet::variable(1, 1, 0, 1.0);
    CHECK((a * b).order() == 1);
    CHECK((a + b).order() == 1);
    CHECK((a * 2.0).order() == 3);
}

TEST_CASE("domain errors") {
    Jet x = Jet::variable(1, 2, 0, -1.0);
    CHECK_THROWS_AS(sqrt(x), DomainError);
    CHECK_THROWS_AS(log(x), DomainError);
    CHECK_THROWS_AS(1.0 / (x + 1.0), DomainError);
    CHECK_THROWS_AS(Jet::variable(2, 1, 0, 0.0) + Jet::variable(3, 1, 0, 0.0), DomainError);
    CHECK_THROWS_AS(Jet(5, 1), DomainError);
    CHECK_THROWS_AS(Jet(1, 4), DomainError);
    CHECK_THROWS_AS(jet_lift(parse_expr("sqrt(t)"), {{"t", -0.5}}, 1), DomainError);
    CHECK_THROWS_AS(jet_lift(parse_expr("1/t"), {{"t", 0.0}}, 1), DomainError);
    CHECK_THROWS_AS(jet_lift(parse_expr("t*s"), {{"t", 0.0}}, 1), UnboundVariable);
}

TEST_CASE("composition and integration of univariate jets") {
    // exp(sin(s)) at s = 0.4 through compose()
    const double s0 = 0.4;
    Jet s = Jet::variable(1, 3, 0, s0);
    Jet inner = sin(s);
    Jet outer = exp(Jet::variable(1, 3, 0, inner.value()));
    Jet composed = compose(outer, inner);
    Jet direct = exp(sin(s));
    for (int k = 0; k <= 3; ++k) CHECK(composed.coeff(k) == doctest::Approx(direct.coeff(k)).epsilon(1e-14));

    Jet c = cos(s).truncated(2);
    Jet integral = integrate_univariate(c, 3);
    Jet sine = sin(s) - std::sin(s0);
    for (int k = 0; k <= 3; ++k) CHECK(integral.coeff(k) == doctest::Approx(sine.coeff(k)).epsilon(1e-14));
}

TEST_CASE("pow with integer and real exponents") {
    Jet x = Jet::variable(1, 3, 0, 1.7);
    Jet a = pow(x, 3);
    CHECK(a.d(0, 0, 0) == doctest::Approx(6.0));
    Jet b = pow(x, -2);
    CHECK(b.d(0) == doctest::Approx(-2.0 / (1.7 * 1.7 * 1.7)));
    Jet c = pow(x, 2.5);
    CHECK(c.d(0, 0) == doctest::Approx(2.5 * 1.5 * std::pow(1.7, 0.5)));
}

TEST_CASE("property: jet derivatives agree with the finite-difference oracle") {
    std::mt19937_64 rng(20240611);
    const char* exprs[] = {"sin(t)", "cos(t)", "exp(t)", "sqrt(t)", "t^3", "1/t", "t*t - 3*t",
                           "sqrt(1 + sin(t)^2)", "exp(cos(t))/t"};
    for (const char* text : exprs) {
        const Expr e = parse_expr(text);
        for (int trial = 0; trial < 20; ++trial) {
            const double t0 = uniform(rng, 0.3, 2.5);
            ScalarFunction f = [&](std::span<const double> x) { return evaluate(e, {{"t", x[0]}}); };
            const double p[] = {t0}, dir[] = {1.0};
            const Jet j = jet_lift(e, {{"t", t0}}, 2);
            for (int order = 1; order <= 2; ++order) {
                const double jd = order == 1 ? j.d(0) : j.d(0, 0);
                const double fd = fd_directional(f, p, dir, order).value;
                const double tol = std::max(1e-6, 1e-4 * std::abs(jd));
                INFO(text << " t=" << t0 << " order " << order);
                CHECK(std::abs(jd - fd) <= tol);
            }
        }
    }
}

TEST_CASE("property: + and * commute and associate for a fixed operand order") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Jet x = Jet::variable(3, 3, 0, uniform(rng, -1, 1));
        Jet y = Jet::variable(3, 3, 1, uniform(rng, -1, 1));
        Jet z = Jet::variable(3, 3, 2, uniform(rng, -1, 1));
        Jet a = sin(x) + y, b = exp(y * z), c = cos(z) - x;
        Jet s1 = a + b, s2 = b + a;
        Jet p1 = a * b, p2 = b * a;
        Jet q1 = (a * b) * c, q2 = a * (b * c);
        Jet r1 = (a + b) + c, r2 = a + (b + c);
        for (int k = 0; k < s1.size(); ++k) {
            CHECK(s1.coeff(k) == s2.coeff(k));
            CHECK(p1.coeff(k) == p2.coeff(k));
            CHECK(q1.coeff(k) == doctest::Approx(q2.coeff(k)).epsilon(1e-14));
            CHECK(r1.coeff(k) == doctest::Approx(r2.coeff(k)).epsilon(1e-14));
        }
    }
}
