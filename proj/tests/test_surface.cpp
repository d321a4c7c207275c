#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "surflap/fd.hpp"
#include "surflap/surface.hpp"

using namespace surflap;

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double max_abs(const Vec3& v) { return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])}); }

}  // namespace

TEST_CASE("metric blocks") {
    const auto sphere = make_round_sphere();
    const auto m = metric_blocks(sphere, 1.0, 0.8);
    CHECK(m.g[0][0] == doctest::Approx(1.0));
    CHECK(m.g[0][1] == doctest::Approx(0.0).scale(1.0));
    CHECK(m.g[1][1] == doctest::Approx(1.0));
    CHECK(m.g[2][2] == doctest::Approx(std::sin(0.8) * std::sin(0.8)));

    const SurfaceOfRevolution surfaces[] = {sphere, make_ellipsoid(2.0), make_ellipsoid(0.5), make_oval()};
    std::mt19937_64 rng(3);
    for (const auto& s : surfaces) {
        for (int i = 0; i < 20; ++i) {
            const double rho = uniform(rng, 0.7, 1.4);
            const double t = uniform(rng, cutoff_min(s.curve), cutoff_max(s.curve));
            const auto mb = metric_blocks(s, rho, t);
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) {
                    double sum = 0.0;
                    for (int k = 0; k < 3; ++k) sum += mb.g[r][k] * mb.g_inv[k][c];
                    CHECK(std::abs(sum - (r == c ? 1.0 : 0.0)) <= 1e-10);
                }
        }
    }

    const auto e = make_ellipsoid(2.0);
    const double s = e.curve.arc_parameter(M_PI / 3);
    const auto me = metric_blocks(e, 1.0, s);
    CHECK(me.g_inv[0][0] == doctest::Approx(0.4375).epsilon(1e-10));
    const auto fp = frame_at(e, 1.0, s, 0.3);
    CHECK(fp.grad_rho_norm * fp.grad_rho_norm == doctest::Approx(0.4375).epsilon(1e-10));
}

TEST_CASE("frame on the sphere and orthonormality on the ellipsoid") {
    const auto fp = frame_at(make_round_sphere(), 1.0, M_PI / 2, 0.0);
    CHECK(max_abs(fp.p - Vec3{1, 0, 0}) <= 1e-15);
    CHECK(max_abs(fp.N - Vec3{1, 0, 0}) <= 1e-15);

    const auto e = make_ellipsoid(2.0);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const double rho = uniform(rng, 0.8, 1.2);
        const double t = uniform(rng, cutoff_min(e.curve), cutoff_max(e.curve));
        const auto f = frame_at(e, rho, t, uniform(rng, -M_PI, M_PI));
        const Vec3* E[3] = {&f.E1, &f.E2, &f.N};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) CHECK(std::abs(dot(*E[a], *E[b]) - (a == b)) <= 1e-10);
        // N agrees with E1 x E2 up to sign, and points along grad rho
        const Vec3 cross{f.E1[1] * f.E2[2] - f.E1[2] * f.E2[1], f.E1[2] * f.E2[0] - f.E1[0] * f.E2[2],
                         f.E1[0] * f.E2[1] - f.E1[1] * f.E2[0]};
        CHECK(std::abs(std::abs(dot(cross, f.N)) - 1.0) <= 1e-10);
        CHECK(dot(f.N, f.d_rho) > 0.0);
        const Vec3 rhs = (1.0 / f.grad_rho_norm) * f.N -
                         (f.rho * f.g_rho_t_inv / (f.grad_rho_norm * f.grad_rho_norm)) * f.E1;
        CHECK(max_abs(f.d_rho - rhs) <= 1e-10);
    }
    CHECK_THROWS_AS(frame_at(make_round_sphere(), 1.0, 0.0, 0.0), PoleDegeneracy);
}

TEST_CASE("structure constants") {
    const auto sphere = make_round_sphere();
    for (double t : {0.4, 1.2, 2.7}) {
        const auto sc = structure_constants_at(sphere, 1.0, t);
        CHECK(sc.c3_13 == doctest::Approx(0.0).scale(1.0));
        CHECK(sc.c1_13 == doctest::Approx(1.0));
        CHECK(sc.c2_23 == doctest::Approx(1.0));
        CHECK(sc.c2_12 == doctest::Approx(-std::cos(t) / std::sin(t)));
    }

    const SurfaceOfRevolution surfaces[] = {make_ellipsoid(2.0), make_ellipsoid(0.5), make_oval()};
    std::mt19937_64 rng(5);
    for (const auto& s : surfaces) {
        for (int i = 0; i < 10; ++i) {
            const double rho = uniform(rng, 0.8, 1.2);
            const double t = uniform(rng, cutoff_min(s.curve), cutoff_max(s.curve));
            const auto sc = structure_constants_at(s, rho, t);

            // E1(|grad rho|) / |grad rho| from chart jets
            const auto j = revolution_jets(s, rho, t, 0.0);
            const Jet grad_norm = 1.0 / j.f;
            CHECK(sc.c3_13 == doctest::Approx(grad_norm.d(1) / rho / grad_norm.value()).epsilon(1e-9));

            // [E2, N] = -N(E2^theta) d_theta, differenced in chart coordinates along N
            const auto cj = s.curve.jet(t);
            const double f = transversality_f(cj), q = cj.a0() * cj.a1() + cj.b0() * cj.b1();
            ScalarFunction e2_theta = [&](std::span<const double> x) {
                return 1.0 / (s.curve.jet(x[1]).a0() * x[0]);
            };
            const double p[] = {rho, t}, n_dir[] = {1.0 / f, -q / (f * rho)};
            const double n_e2 = fd_directional(e2_theta, p, n_dir, 1).value;
            CHECK(std::abs(-n_e2 * cj.a0() * rho - sc.c2_23) <= 1e-7);
        }
    }
}

TEST_CASE("Christoffel table") {
    const auto G = christoffel_at(structure_constants_at(make_round_sphere(), 1.0, 1.0));
    CHECK(G[2][0][0] == doctest::Approx(-1.0));

    const auto e = make_ellipsoid(2.0);
    for (double t : {0.5, 1.5, 2.5}) {
        const auto sc = structure_constants_at(e, 1.1, t);
        const auto c = sc.table();
        const auto g = christoffel_at(sc);
        CHECK(g[0][2][0] == 0.0);
        CHECK(g[1][2][1] == 0.0);
        CHECK(g[2][2][0] == doctest::Approx(c[2][2][0]));
        CHECK(g[0][2][2] == doctest::Approx(sc.c3_13));
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int k = 0; k < 3; ++k) {
                    CHECK(std::abs(g[k][a][b] - g[k][b][a] - c[k][a][b]) <= 1e-12);
                    CHECK(std::abs(g[b][k][a] + g[a][k][b]) <= 1e-12);
                }
        CHECK(c[1][0][2] == 0.0);
        CHECK(c[2][1][2] == 0.0);
    }
}

TEST_CASE("shape operator and curvatures") {
    const auto sphere = make_round_sphere();
    const auto fs = frame_at(sphere, 1.0, 1.0, 0.4);
    const Mat2 s = shape_operator(sphere, fs);
    CHECK(s[0][0] == doctest::Approx(-1.0));
    CHECK(s[1][1] == doctest::Approx(-1.0));
    CHECK(s[0][1] == doctest::Approx(0.0).scale(1.0));
    const auto cs = curvature_scalars(sphere, fs);
    CHECK(cs.H == doctest::Approx(-1.0));
    CHECK(cs.K == doctest::Approx(1.0));
    const Vec3 v{0.3, -1.2, 0.0};
    CHECK(max_abs(ricci_apply(sphere, fs, v) - v) <= 1e-12);
    CHECK(second_fund_form(sphere, fs, {1, 0, 0}, {1, 0, 0}) == doctest::Approx(-1.0));
    CHECK(second_fund_form(sphere, fs, {1, 0, 0}, {0, 1, 0}) == 0.0);

    const auto e = make_ellipsoid(2.0);
    const double lambda = std::sqrt(1.75);
    const auto fe = frame_at(e, 1.0, e.curve.arc_parameter(M_PI / 3), 0.0);
    const Mat2 se = shape_operator(e, fe);
    CHECK(se[0][0] == doctest::Approx(-2.0 / std::pow(lambda, 3)).epsilon(1e-9));
    CHECK(se[1][1] == doctest::Approx(-1.0 / (2.0 * lambda)).epsilon(1e-9));
    CHECK(curvature_scalars(e, fe).K == doctest::Approx(1.0 / std::pow(lambda, 4)).epsilon(1e-9));
    const auto ce = curvature_scalars(e, fe);
    const auto re = ricci_apply(e, fe, {1, 0, 0});
    const double k1 = se[0][0];
    CHECK(re[0] == doctest::Approx(2 * ce.H * k1 - k1 * k1));
    CHECK(re[0] == doctest::Approx(ce.K));

    const SurfaceOfRevolution surfaces[] = {e, make_ellipsoid(0.5), make_oval()};
    std::mt19937_64 rng(9);
    for (const auto& sf : surfaces) {
        for (int i = 0; i < 20; ++i) {
            const double t = uniform(rng, cutoff_min(sf.curve), cutoff_max(sf.curve));
            const auto fp = frame_at(sf, 1.0, t, uniform(rng, -M_PI, M_PI));
            const Mat2 m = shape_operator(sf, fp);
            const double X[2] = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
            const double Y[2] = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
            double sXY = 0.0, XsY = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    sXY += m[a][b] * X[b] * Y[a];
                    XsY += X[a] * m[a][b] * Y[b];
                }
            CHECK(std::abs(sXY - XsY) <= 1e-10);
            const auto eig = shape_eigen(m);
            const auto k = principal_curvatures_rev(sf.curve, t);
            CHECK(std::abs(eig.k2 - k.k2) <= 1e-9);
            CHECK(std::abs(eig.k1 - k.k1) <= 1e-9);
            // intrinsic Gauss curvature of dt^2 + a^2 dtheta^2
            const auto cj = sf.curve.jet(t);
            CHECK(std::abs(curvature_scalars(sf, fp).K + cj.a2() / cj.a0()) <= 1e-8);
        }
    }
}

TEST_CASE("n-sphere closed forms") {
    const auto s3 = make_nsphere(3);
    CHECK(curvature_scalars(s3).H == -1.0);
    const auto r = ricci_apply({-1, -1, -1}, {1.0, 2.0, -0.5});
    CHECK(r[0] == doctest::Approx(2.0));
    CHECK(r[1] == doctest::Approx(4.0));
    CHECK(r[2] == doctest::Approx(-1.0));
}

TEST_CASE("surface specs") {
    CHECK(surface_from_spec("sphere").kind() == "sphere");
    CHECK(surface_from_spec("ellipsoid:2").kind() == "ellipsoid");
    CHECK(surface_from_spec("ellipsoid:2").name() == "ellipsoid:2");
    CHECK(surface_from_spec("oval").kind() == "revolution");
    CHECK(surface_from_spec("nsphere:3").dim() == 3);
    CHECK_THROWS_AS(surface_from_spec("nsphere:7"), ConfigError);
    CHECK_THROWS_AS(surface_from_spec("ellipsoid:-1"), ConfigError);
    CHECK_THROWS_AS(surface_from_spec("no_such_surface"), ConfigError);

    const auto dir = std::filesystem::temp_directory_path() / "surflap_surface_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "c.json") << R"j({"a_expr": "sin(t)", "b_expr": "cos(t)", "t_min": 0, "t_max": 3.14, "unit_speed": true})j";
        std::ofstream(dir / "s.json") << R"j({"kind": "revolution", "curve": "c.json"})j";
        std::ofstream(dir / "e.json") << R"j({"kind": "ellipsoid", "a": 0.5})j";
        std::ofstream(dir / "n.json") << R"j({"kind": "sphere", "n": 3, "radius": 2})j";
        std::ofstream(dir / "bad.json") << R"j({"kind": "torus"})j";
    }
    CHECK(surface_from_spec((dir / "s.json").string()).is_revolution());
    CHECK(surface_from_spec((dir / "s.json").string()).name() == "s");
    CHECK(surface_from_spec((dir / "e.json").string()).revolution().ellipsoid_a == 0.5);
    CHECK(surface_from_spec((dir / "n.json").string()).nsphere().r == 2.0);
    CHECK_THROWS_AS(surface_from_spec((dir / "bad.json").string()), ConfigError);
    std::filesystem::remove_all(dir);
}
