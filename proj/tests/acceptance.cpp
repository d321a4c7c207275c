// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "surflap/errors.hpp"
#include "surflap/verify.hpp"

using namespace surflap;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int n, const std::string& what, bool ok, const std::string& detail) {
    std::printf("criterion %2d  %-4s  %s: %s\n", n, ok ? "PASS" : "FAIL", what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

struct Worst {
    double residual = 0.0;
    std::size_t rows = 0;
    bool all_pass = true;

    void add(const ResidualReport& rep) {
        for (const auto& r : rep.results) {
            residual = std::max(residual, r.residual);
            all_pass = all_pass && r.pass;
            ++rows;
        }
    }
};

const std::vector<std::string> kSurfaces = {"sphere", "ellipsoid:0.5", "ellipsoid:2", "oval"};
const std::vector<std::string> kFields = {"azimuthal:1", "azimuthal:sin(t)", "mixed"};
const std::vector<std::string> kHomogeneous = {"homogeneous:0", "homogeneous:1", "homogeneous:2"};

Worst matrix(const std::string& id, const std::vector<std::string>& surfaces, const std::vector<std::string>& fields,
             const std::vector<std::string>& extensions, int points) {
    Worst w;
    for (const auto& spec : surfaces) {
        const Surface s = surface_from_spec(spec);
        const auto pts = sample_points(s, points, 1);
        for (const auto& f : fields)
            for (const auto& e : extensions) w.add(run_check(id, s, resolve_field(f), e, pts));
    }
    return w;
}

void criterion_projected_laplacian(int n, const std::string& id) {
    const auto t0 = Clock::now();
    const Worst w = matrix(id, kSurfaces, kFields, kHomogeneous, 50);
    const double secs = seconds_since(t0);
    const bool ok = w.all_pass && w.residual <= 1e-8 && w.rows == 4 * 3 * 3 * 50 && secs <= 30.0;
    report(n, id + " on 4 surfaces x 3 fields x 3 extensions x 50 points", ok,
           "worst " + sci(w.residual) + " (limit 1e-8), " + std::to_string(w.rows) + " rows, " + sci(secs) + " s");
}

// Tangent fields that are divergence free on the surface.
const std::vector<std::string> kDivFree = {"azimuthal:1", "azimuthal:sin(t)", "stream:cos(t)*sin(theta)",
                                           "stream:sin(2*t)*cos(theta)+cos(t)"};

void criterion_divfree() {
    Worst w;
    for (const char* id : {"THM2", "COR2"}) {
        const auto part = matrix(id, {"sphere", "ellipsoid:2"}, kDivFree, {"divfree"}, 50);
        w.residual = std::max(w.residual, part.residual);
        w.rows += part.rows;
        w.all_pass = w.all_pass && part.all_pass;
    }
    report(3, "THM2 and COR2 with divergence-free pairs on sphere and ellipsoid:2", w.all_pass && w.residual <= 1e-7,
           "worst " + sci(w.residual) + " (limit 1e-7), " + std::to_string(w.rows) + " rows");
}

void criterion_sphere() {
    Worst w1;
    const Surface sphere = surface_from_spec("sphere");
    const auto pts = sample_points(sphere, 50, 1);
    for (const auto& f : kFields)
        for (const auto& e : kHomogeneous) w1.add(run_check("SPHERE_THM1", sphere, resolve_field(f), e, pts));
    for (const char* spec : {"nsphere:2", "nsphere:3"}) {
        const Surface s = surface_from_spec(spec);
        for (const char* f : {"killing", "conformal"})
            for (const auto& e : kHomogeneous)
                w1.add(run_check("SPHERE_THM1", s, resolve_field(f), e, sample_points(s, 50, 1)));
    }
    // the three extra terms sit after the two Laplacian components and must vanish one by one
    double extra = 0.0;
    Worst w2;
    for (const auto& f : kDivFree) {
        const auto rep = run_check("SPHERE_THM2", sphere, resolve_field(f), "divfree", pts);
        w2.add(rep);
        for (const auto& r : rep.results)
            for (std::size_t i = 2; i < r.lhs.size(); ++i) extra = std::max(extra, std::abs(r.lhs[i] - r.rhs[i]));
    }
    const bool ok = w1.all_pass && w1.residual <= 1e-9 && w2.all_pass && w2.residual <= 1e-10 && extra <= 1e-10;
    report(4, "sphere reductions", ok,
           "SPHERE_THM1 worst " + sci(w1.residual) + " (limit 1e-9, k = 0, 1, 2), SPHERE_THM2 worst " +
               sci(w2.residual) + ", extra terms " + sci(extra) + " (limit 1e-10)");
}

void criterion_ellipsoid() {
    Worst forms, e2;
    for (const char* spec : {"ellipsoid:0.5", "ellipsoid:2"}) {
        const Surface s = surface_from_spec(spec);
        const auto& curve = s.revolution().curve;
        std::vector<SamplePoint> grid;
        for (int i = 0; i < 100; ++i) {
            const double phi = 0.05 * M_PI + 0.9 * M_PI * i / 99.0;
            grid.push_back({curve.arc_parameter(phi), 0.3});
        }
        forms.add(run_check("ELLIPSOID_FORMS", s, {}, "-", grid));
        e2.add(run_check("ELLIPSOID_E2", s, {}, "-", grid));
    }
    const bool ok = forms.all_pass && forms.residual <= 1e-9 && e2.all_pass && e2.residual <= 1e-12;
    report(5, "ellipsoid closed forms on a 100-point polar-angle grid, a = 0.5 and 2", ok,
           "forms worst " + sci(forms.residual) + " (limit 1e-9), e2 worst " + sci(e2.residual) + " (limit 1e-12)");
}

void criterion_scalar() {
    bool ok = true;
    double main1 = 0.0, ratio = 0.0;
    for (const char* spec : {"sphere", "ellipsoid:2", "oval"}) {
        const Surface s = surface_from_spec(spec);
        const auto pts = sample_points(s, 50, 1);
        const double cert = s.revolution().curve.certified_tolerance();
        const double limit = 100.0 * std::max(cert, std::numeric_limits<double>::epsilon());
        for (const auto& r : run_check("MAIN1", s, {}, "-", pts).results) {
            main1 = std::max(main1, r.residual);
            ok = ok && r.residual == 0.0;
        }
        for (const char* id : {"MAIN2_I1", "MAIN2_I2"})
            for (const auto& r : run_check(id, s, {}, "-", pts).results) {
                ratio = std::max(ratio, r.residual / limit);
                ok = ok && r.pass && r.residual <= limit;
            }
    }
    report(6, "scalar identities on circle, ellipse and oval", ok,
           "MAIN1 worst " + sci(main1) + " (must be 0), MAIN2 worst at " + sci(ratio) +
               " of 100 x certificate");
}

std::string random_stream(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    const char* basis[] = {"cos(t)",
                           "sin(t)*cos(theta)",
                           "sin(t)*sin(theta)",
                           "cos(2*t)*cos(theta)",
                           "sin(2*t)*sin(2*theta)",
                           "cos(t)*sin(t)*cos(3*theta)"};
    std::string psi;
    char buf[64];
    for (const char* b : basis) {
        std::snprintf(buf, sizeof buf, "%s(%.17g)*%s", psi.empty() ? "" : "+", c(rng), b);
        psi += buf;
    }
    return "stream:" + psi;
}

void criterion_bw() {
    Worst w;
    std::mt19937_64 rng(2024);
    for (const auto& spec : kSurfaces) {
        const Surface s = surface_from_spec(spec);
        const auto pts = sample_points(s, 5, 1);
        for (int i = 0; i < 50; ++i) w.add(run_check("BW", s, resolve_field(random_stream(rng)), "-", pts));
    }
    report(7, "three Laplacian routes on 50 random co-closed 1-forms per surface", w.all_pass && w.residual <= 1e-8,
           "worst " + sci(w.residual) + " (limit 1e-8), " + std::to_string(w.rows) + " rows");
}

void criterion_oracle() {
    SuiteConfig c;
    c.surfaces = {"sphere", "ellipsoid:0.5", "ellipsoid:2", "oval", "nsphere:2", "nsphere:3"};
    c.fields = {"azimuthal:sin(t)", "mixed", "stream:cos(t)*sin(theta)", "killing", "conformal"};
    c.extensions = {"homogeneous:2", "divfree"};
    for (const auto& i : identity_catalog())
        if (i.fd_route) c.identities.push_back(i.id);
    c.points = 20;
    c.engine = Engine::Fd;
    const ResidualReport rep = run_suite(c);
    bool ok = rep.pass();
    double worst = 0.0;
    std::size_t rows = 0;
    for (const auto& r : rep.results)
        if (r.engine == "fd") {
            worst = std::max(worst, r.residual);
            ok = ok && r.residual <= 1e-5 * (1.0 + residual_norm(r.lhs, std::vector<double>(r.lhs.size(), 0.0)));
            ++rows;
        }
    // every route must have been exercised on every surface it admits
    for (const auto& id : c.identities)
        for (const auto& spec : c.surfaces) {
            const Surface s = surface_from_spec(spec);
            const IdentityInfo& info = identity_info(id);
            if (!info.admits(s.kind()) || (info.unit_sphere && !s.is_unit_sphere())) continue;
            const bool seen = std::any_of(rep.results.begin(), rep.results.end(), [&](const CheckResult& r) {
                return r.id == id && r.surface == s.name() && r.engine == "fd";
            });
            if (!seen) {
                ok = false;
                std::printf("  no finite-difference rows for %s on %s\n", id.c_str(), spec.c_str());
            }
        }
    report(8, "finite-difference oracle against the frame route, 20 points per surface", ok,
           "worst " + sci(worst) + " (limit 1e-5 relative), " + std::to_string(rows) + " rows over " +
               std::to_string(c.identities.size()) + " identities");
}

const std::vector<double>& term(const CheckResult& r, const std::string& name) {
    for (const auto& [n, v] : r.terms)
        if (n == name) return v;
    throw Error("missing term " + name);
}

void criterion_extension() {
    const Surface sphere = surface_from_spec("sphere");
    const auto pts = sample_points(sphere, 50, 1);
    double worst = 0.0, largest = 0.0;
    for (const char* f : {"azimuthal:1", "azimuthal:sin(t)", "mixed", "stream:cos(t)*sin(theta)"}) {
        const FieldSpec field = resolve_field(f);
        const auto r0 = run_check("THM1", sphere, field, "homogeneous:0", pts);
        const auto r1 = run_check("THM1", sphere, field, "homogeneous:1", pts);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const CheckResult &a = r0.results[i], &b = r1.results[i];
            std::vector<double> dl(2), dt(2, 0.0);
            for (int c = 0; c < 2; ++c) {
                dl[c] = a.lhs[c] - b.lhs[c];
                for (const char* name : {"nH[N,v]", "-D_N D_N v", "D_(D_N N) v"})
                    dt[c] += term(a, name)[c] - term(b, name)[c];
            }
            worst = std::max(worst, residual_norm(dl, dt));
            largest = std::max(largest, std::hypot(dl[0], dl[1]));
        }
    }
    report(9, "extension dependence on the unit sphere, degree 0 against degree 1", worst <= 1e-8 && largest >= 1e-3,
           "difference matches the extension terms to " + sci(worst) + " (limit 1e-8), largest difference " +
               sci(largest) + " (needs >= 1e-3)");
}

void criterion_determinism() {
    const SuiteConfig c = default_config();
    auto t0 = Clock::now();
    const std::string a = run_suite(c).to_json();
    const double secs = seconds_since(t0);
    const std::string b = run_suite(c).to_json();
    report(10, "default suite twice with one seed", a == b && secs <= 60.0,
           std::string(a == b ? "byte-identical" : "reports differ") + ", " + std::to_string(a.size()) +
               " bytes, one run " + sci(secs) + " s (limit 60 s)");
}

}  // namespace

int main() {
    const std::vector<void (*)()> steps = {
        [] { criterion_projected_laplacian(1, "THM1"); },
        [] { criterion_projected_laplacian(2, "COR1"); },
        criterion_divfree,
        criterion_sphere,
        criterion_ellipsoid,
        criterion_scalar,
        criterion_bw,
        criterion_oracle,
        criterion_extension,
        criterion_determinism,
    };
    for (std::size_t i = 0; i < steps.size(); ++i) {
        try {
            steps[i]();
        } catch (const std::exception& e) {
            report(static_cast<int>(i + 1), "aborted", false, e.what());
        }
    }
    std::printf("%s: %d of %zu criteria failed\n", failures ? "FAIL" : "PASS", failures, steps.size());
    return failures ? 1 : 0;
}
