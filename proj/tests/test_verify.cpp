#include <doctest.h>

#include <json.hpp>
#include <set>

#include "surflap/errors.hpp"
#include "surflap/verify.hpp"

using namespace surflap;

TEST_CASE("catalog") {
    const auto& c = identity_catalog();
    CHECK(c.size() == 22);
    std::set<std::string> ids;
    for (const auto& i : c) ids.insert(i.id);
    CHECK(ids.size() == 22);
    CHECK(identity_info("THM1").admits("nsphere"));
    CHECK_FALSE(identity_info("THM2").admits("nsphere"));
    CHECK(identity_info("THM2").divfree_both);
    CHECK_THROWS_AS(identity_info("NOPE"), ConfigError);
}

TEST_CASE("sample points are seeded and stay inside the cutoff") {
    const Surface s = surface_from_spec("ellipsoid:2");
    const auto p = sample_points(s, 30, 7), q = sample_points(s, 30, 7), r = sample_points(s, 30, 8);
    const double lo = cutoff_min(s.revolution().curve), hi = cutoff_max(s.revolution().curve);
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(p[i].t == q[i].t);
        CHECK(p[i].theta == q[i].theta);
        CHECK(p[i].t >= lo);
        CHECK(p[i].t <= hi);
        CHECK(p[i].theta >= -M_PI);
        CHECK(p[i].theta < M_PI);
    }
    CHECK(p[0].t != r[0].t);
    CHECK_THROWS_AS(sample_points(s, 0, 1), ConfigError);
}

TEST_CASE("THM1 on the unit sphere") {
    const Surface s = surface_from_spec("sphere");
    const auto rep = run_check("THM1", s, resolve_field("azimuthal:1"), "homogeneous:1", sample_points(s, 50, 7));
    REQUIRE(rep.results.size() == 50);
    for (const auto& r : rep.results) {
        CHECK(r.residual <= 1e-8);
        CHECK(r.terms.size() == 5);
    }
    CHECK(rep.pass());
    // one oracle cross-check per run in jets mode
    REQUIRE(rep.oracle.size() == 1);
    CHECK(rep.oracle[0].engine == "fd");
    CHECK(rep.oracle[0].pass);
}

TEST_CASE("MAIN1 cancels exactly") {
    for (const char* spec : {"sphere", "ellipsoid:2", "oval"}) {
        const Surface s = surface_from_spec(spec);
        const auto rep = run_check("MAIN1", s, {}, "-", sample_points(s, 20, 3));
        for (const auto& r : rep.results) CHECK(r.residual == 0.0);
    }
}

TEST_CASE("ellipsoid closed forms") {
    const Surface s = surface_from_spec("ellipsoid:2");
    const auto pts = sample_points(s, 20, 1);
    for (const auto& r : run_check("ELLIPSOID_E2", s, {}, "-", pts).results) CHECK(r.residual <= 1e-12);
    for (const auto& r : run_check("ELLIPSOID_FORMS", s, {}, "-", pts).results) CHECK(r.residual <= 1e-9);
}

TEST_CASE("context violations") {
    const Surface sphere = surface_from_spec("sphere");
    const auto pts = sample_points(sphere, 3, 1);
    CHECK_THROWS_AS(run_check("THM2", sphere, resolve_field("mixed"), "homogeneous:1", pts), ContextViolation);
    CHECK_THROWS_AS(run_check("ELLIPSOID_E2", sphere, {}, "-", pts), ContextViolation);
    CHECK_THROWS_AS(run_check("BW", sphere, resolve_field("mixed"), "-", pts), ContextViolation);
    CHECK_THROWS_AS(run_check("SPHERE_THM1", sphere, resolve_field("azimuthal:1"), "normal-corrected:1", pts),
                    ContextViolation);
    const Surface n3 = surface_from_spec("nsphere:3");
    CHECK_THROWS_AS(run_check("THM1", n3, resolve_field("mixed"), "homogeneous:1", sample_points(n3, 2, 1)),
                    ContextViolation);
}

TEST_CASE("meridional fields with a corrected extension satisfy THM2") {
    const Surface s = surface_from_spec("ellipsoid:2");
    const FieldSpec f = resolve_field("stream:cos(t)*sin(theta)");
    const auto rep = run_check("THM2", s, f, "divfree", sample_points(s, 10, 4));
    CHECK(rep.pass());
    bool meridional = false;
    for (const auto& r : rep.results) {
        const auto& div = r.terms.back();
        CHECK(div.first == "divergence");
        CHECK(std::abs(div.second[1]) <= 1e-12);
        meridional = meridional || std::abs(r.terms[4].second[0]) > 1e-3;
    }
    CHECK(meridional);
}

TEST_CASE("n-sphere rows") {
    const Surface s = surface_from_spec("nsphere:3");
    const auto pts = sample_points(s, 5, 2);
    for (const char* f : {"killing", "conformal"}) {
        const auto rep = run_check("SPHERE_THM1", s, resolve_field(f), "homogeneous:2", pts, {Engine::Both});
        CHECK(rep.pass());
        CHECK(rep.results.size() == 10);
    }
}

TEST_CASE("report round trip") {
    SuiteConfig c;
    c.surfaces = {"sphere", "oval"};
    c.fields = {"azimuthal:sin(t)", "mixed"};
    c.extensions = {"homogeneous:0", "homogeneous:2"};
    c.identities = {"THM1", "COR1", "MAIN2_I1", "BW"};
    c.points = 4;
    c.seed = 11;
    const auto rep = run_suite(c);
    CHECK(rep.pass());
    CHECK(rep.skipped == 2);  // BW rejects the mixed field on both surfaces
    const std::string text = rep.to_json();
    CHECK(text == run_suite(c).to_json());
    const auto doc = nlohmann::json::parse(text);
    CHECK(doc["meta"]["seed"] == 11);
    REQUIRE(doc["results"].size() == rep.results.size());
    for (const auto& r : doc["results"]) {
        const auto lhs = r["lhs"].get<std::vector<double>>(), rhs = r["rhs"].get<std::vector<double>>();
        CHECK(residual_norm(lhs, rhs) == r["residual"].get<double>());
    }
    const auto rows = rep.summarize();
    CHECK(rows.front().id == "THM1");
    CHECK(rep.summary_csv().rfind("id,surface,engine,points,worst_residual,tol,pass\n", 0) == 0);
    CHECK(rep.plot_csv().rfind("identity,t,residual\n", 0) == 0);
}

TEST_CASE("empty identity list") {
    SuiteConfig c = default_config();
    c.identities.clear();
    const auto rep = run_suite(c);
    CHECK(rep.results.empty());
    CHECK(rep.pass());
}

TEST_CASE("config files") {
    const auto c = parse_config(
        "# suite\n"
        "surfaces = sphere, ellipsoid:2\n"
        "field = azimuthal:pow(sin(t), 2)\n"
        "field = mixed\n"
        "extension = homogeneous:1, custom:ext.json\n"
        "identities = THM1\n"
        "points = 7\n"
        "seed = 3\n"
        "engine = both\n"
        "tol = 1e-6\n",
        "/data");
    CHECK(c.surfaces == std::vector<std::string>{"sphere", "ellipsoid:2"});
    CHECK(c.fields == std::vector<std::string>{"azimuthal:pow(sin(t), 2)", "mixed"});
    CHECK(c.extensions == std::vector<std::string>{"homogeneous:1", "custom:/data/ext.json"});
    CHECK(c.points == 7);
    CHECK(c.seed == 3);
    CHECK(c.engine == Engine::Both);
    CHECK(c.tol == 1e-6);
    CHECK_THROWS_WITH_AS(parse_config("points = 3\ncolour = red\n"), "line 2: unknown key 'colour'", ConfigError);
    CHECK_THROWS_AS(parse_config("engine = warp\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("no equals sign\n"), ConfigError);
}
