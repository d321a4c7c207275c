#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "surflap/curve.hpp"

using namespace surflap;

namespace {

// Composite Simpson on a fine grid; independent of the library quadrature.
double simpson_arc_length(const GeneratingCurve& c, double u0, double u1, int n = 20000) {
    auto speed = [&](double u) {
        const Jet a = jet_lift(c.a, {{"t", u}}, 1), b = jet_lift(c.b, {{"t", u}}, 1);
        return std::hypot(a.d(0), b.d(0));
    };
    const double h = (u1 - u0) / n;
    double sum = speed(u0) + speed(u1);
    for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * speed(u0 + i * h);
    return sum * h / 3.0;
}

}  // namespace

TEST_CASE("circle jets") {
    const UnitSpeedCurve c = circle_curve();
    const CurveJet j = curve_jet3(c, M_PI / 2);
    CHECK(j.a0() == doctest::Approx(1.0));
    CHECK(j.a1() == doctest::Approx(0.0));
    CHECK(j.a2() == doctest::Approx(-1.0));
    CHECK(j.a3() == doctest::Approx(0.0));
    const CurveJet q = curve_jet3(c, M_PI / 4);
    CHECK(q.a1() * q.a1() + q.b1() * q.b1() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.certified_tolerance() <= 1e-12);
    CHECK(transversality_f(c, 0.3) == doctest::Approx(1.0));
    const auto k = principal_curvatures_rev(c, 1.1);
    CHECK(k.k1 == doctest::Approx(-1.0));
    CHECK(k.k2 == doctest::Approx(-1.0));
    CHECK_THROWS_AS(curve_jet3(c, 4.0), OutOfDomain);
}

TEST_CASE("reparametrizing the circle is the identity") {
    const GeneratingCurve raw{parse_expr("sin(t)"), parse_expr("cos(t)"), 0.0, M_PI, "circle"};
    const UnitSpeedCurve c = arc_length_reparam(raw);
    CHECK(c.certified_tolerance() <= 1e-12);
    CHECK(c.t_max() == doctest::Approx(M_PI).epsilon(1e-14));
    for (double t : {0.2, 1.0, 2.5}) {
        CHECK(c.raw_parameter(t) == doctest::Approx(t).epsilon(1e-13));
        const CurveJet j = c.jet(t);
        CHECK(j.a0() == doctest::Approx(std::sin(t)).epsilon(1e-13));
        CHECK(j.b3() == doctest::Approx(std::sin(t)).epsilon(1e-12));
    }
}

TEST_CASE("ellipse arc length agrees with the Simpson oracle") {
    const UnitSpeedCurve c = ellipse_curve(2.0);
    CHECK(c.reparametrized());
    CHECK(c.certified_tolerance() <= 1e-9);
    for (double phi : {0.3, M_PI / 3, 1.9, 3.0}) {
        INFO("phi = " << phi);
        CHECK(c.arc_parameter(phi) == doctest::Approx(simpson_arc_length(c.raw(), 0.0, phi)).epsilon(1e-11));
        CHECK(c.raw_parameter(c.arc_parameter(phi)) == doctest::Approx(phi).epsilon(1e-12));
    }
    // midpoint in arc length
    const double s_mid = 0.5 * (c.t_min() + c.t_max());
    const CurveJet j = c.jet(s_mid);
    CHECK(std::abs(j.a1() * j.a1() + j.b1() * j.b1() - 1.0) <= 1e-9);
    CHECK(j.a0() == doctest::Approx(2.0).epsilon(1e-10));  // symmetric about phi = pi/2
}

TEST_CASE("ellipse principal curvatures match the closed forms") {
    const double a = 2.0, phi = M_PI / 3;
    const UnitSpeedCurve c = ellipse_curve(a);
    const double s = c.arc_parameter(phi);
    const double lambda = std::sqrt(1.75);
    const auto k = principal_curvatures_rev(c, s);
    CHECK(k.k1 == doctest::Approx(-a / std::pow(lambda, 3)).epsilon(1e-9));
    CHECK(k.k2 == doctest::Approx(-1.0 / (a * lambda)).epsilon(1e-9));
    CHECK(transversality_f(c, s) > 0.0);
}

TEST_CASE("reparametrized derivatives agree with a finite-difference oracle") {
    const UnitSpeedCurve c = oval_curve();
    for (double s : {0.4, 1.3, 2.6}) {
        const CurveJet j = c.jet(s);
        const double h = 1e-3;
        auto a_at = [&](double x) { return c.jet(x).a0(); };
        const double d1 = (a_at(s - 2 * h) - 8 * a_at(s - h) + 8 * a_at(s + h) - a_at(s + 2 * h)) / (12 * h);
        const double d2 = (-a_at(s - 2 * h) + 16 * a_at(s - h) - 30 * a_at(s) + 16 * a_at(s + h) - a_at(s + 2 * h)) /
                          (12 * h * h);
        auto a2_at = [&](double x) { return c.jet(x).a2(); };
        const double d3 = (a2_at(s + h) - a2_at(s - h)) / (2 * h);
        INFO("s = " << s);
        CHECK(j.a1() == doctest::Approx(d1).epsilon(1e-8));
        CHECK(j.a2() == doctest::Approx(d2).scale(1.0).epsilon(1e-6));
        CHECK(j.a3() == doctest::Approx(d3).scale(1.0).epsilon(1e-5));
    }
}

TEST_CASE("unit-speed differential identities along certified curves") {
    const UnitSpeedCurve curves[] = {circle_curve(), ellipse_curve(2.0), ellipse_curve(0.5), oval_curve()};
    for (const auto& c : curves) {
        const double tol = 10.0 * std::max(c.certified_tolerance(), 1e-16) + 1e-15;
        for (int i = 0; i < 25; ++i) {
            const double t = cutoff_min(c) + (cutoff_max(c) - cutoff_min(c)) * i / 24.0;
            const CurveJet j = c.jet(t);
            INFO(c.name() << " t = " << t);
            CHECK(std::abs(j.a1() * j.a2() + j.b1() * j.b2()) <= tol * (1 + std::abs(j.a2()) + std::abs(j.b2())));
            const double lhs = j.a1() * j.a3() + j.b1() * j.b3();
            const double rhs = -(j.a2() * j.a2() + j.b2() * j.b2());
            CHECK(std::abs(lhs - rhs) <= tol * (1 + std::abs(rhs) + std::abs(j.a3()) + std::abs(j.b3())));
        }
    }
}

TEST_CASE("torus-like profile") {
    const GeneratingCurve raw{parse_expr("sin(t)"), parse_expr("2 + cos(t)"), 0.05, 3.0, "torus"};
    const UnitSpeedCurve c = arc_length_reparam(raw);
    CHECK(c.certified_tolerance() <= 1e-9);
    CHECK(transversality_f(c, 1.0) == doctest::Approx(2 * std::cos(1.0) + 1).epsilon(1e-10));
    CHECK_THROWS_AS(transversality_f(c, 2.5), TransversalityViolation);
}

TEST_CASE("degenerate speed") {
    const GeneratingCurve raw{parse_expr("2 + t^3"), parse_expr("t^3"), -1.0, 1.0, "cusp"};
    CHECK_THROWS_AS(arc_length_reparam(raw), DegenerateSpeed);
}

TEST_CASE("curve files") {
    const UnitSpeedCurve c = parse_curve_json(
        R"j({"a_expr": "2*sin(t)", "b_expr": "cos(t)", "t_min": 0, "t_max": 3.141592653589793, "unit_speed": false})j");
    CHECK(c.reparametrized());
    CHECK(c.certified_tolerance() <= 1e-9);
    const UnitSpeedCurve u = parse_curve_json(
        R"j({"a_expr": "sin(t)", "b_expr": "cos(t)", "t_min": 0.1, "t_max": 3, "unit_speed": true})j");
    CHECK_FALSE(u.reparametrized());
    CHECK_THROWS_AS(parse_curve_json(R"j({"a_expr": "sin(t)"})j"), ConfigError);
    CHECK_THROWS_AS(parse_curve_json(R"j({"a_expr": "sin(t)", "b_expr": "cos(x)", "t_min": 0, "t_max": 1})j"),
                    ConfigError);
    CHECK_THROWS_AS(parse_curve_json(
                        R"j({"a_expr": "2*sin(t)", "b_expr": "cos(t)", "t_min": 0.1, "t_max": 3, "unit_speed": true})j"),
                    ConfigError);
    CHECK_THROWS_AS(parse_curve_json("{"), ConfigError);

    const auto path = std::filesystem::temp_directory_path() / "surflap_test_curve.json";
    {
        std::ofstream out(path);
        out << R"j({"a_expr": "sin(t)", "b_expr": "cos(t)", "t_min": 0, "t_max": 3.14, "unit_speed": true})j";
    }
    CHECK(load_curve_file(path).name() == "surflap_test_curve");
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_curve_file("/nonexistent/curve.json"), ConfigError);
}
