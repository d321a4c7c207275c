#include "surflap/surface.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Dense>

#include "json.hpp"

namespace surflap {

double dot(const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }
double norm(const Vec3& x) { return std::sqrt(dot(x, x)); }
Vec3 operator+(const Vec3& x, const Vec3& y) { return {x[0] + y[0], x[1] + y[1], x[2] + y[2]}; }
Vec3 operator-(const Vec3& x, const Vec3& y) { return {x[0] - y[0], x[1] - y[1], x[2] - y[2]}; }
Vec3 operator*(double s, const Vec3& x) { return {s * x[0], s * x[1], s * x[2]}; }

const std::string& Surface::name() const {
    return is_revolution() ? revolution().name : nsphere().name;
}

std::string Surface::kind() const {
    if (!is_revolution()) return "nsphere";
    if (is_unit_sphere()) return "sphere";
    if (revolution().ellipsoid_a > 0.0) return "ellipsoid";
    return "revolution";
}

bool Surface::is_unit_sphere() const {
    return is_revolution() && revolution().sphere_radius == 1.0;
}

namespace {

std::string num(double v) { return Expr::number(v).to_string(); }

}  // namespace

SurfaceOfRevolution make_revolution(UnitSpeedCurve curve, std::string name) {
    SurfaceOfRevolution s;
    s.curve = std::move(curve);
    s.name = std::move(name);
    return s;
}

SurfaceOfRevolution make_round_sphere(double r) {
    if (!(r > 0.0)) throw DomainError("sphere radius must be positive");
    GeneratingCurve raw;
    if (r == 1.0) {
        raw = {parse_expr("sin(t)"), parse_expr("cos(t)"), 0.0, M_PI, "circle"};
    } else {
        const std::string rs = num(r);
        raw = {parse_expr(rs + " * sin(t / " + rs + ")"), parse_expr(rs + " * cos(t / " + rs + ")"), 0.0,
               M_PI * r, "circle:" + rs};
    }
    SurfaceOfRevolution s = make_revolution(UnitSpeedCurve::exact(raw), r == 1.0 ? "sphere" : "sphere:" + num(r));
    s.sphere_radius = r;
    return s;
}

SurfaceOfRevolution make_ellipsoid(double a) {
    SurfaceOfRevolution s = make_revolution(ellipse_curve(a), "ellipsoid:" + num(a));
    s.ellipsoid_a = a;
    if (a == 1.0) s.sphere_radius = 1.0;
    return s;
}

SurfaceOfRevolution make_oval() { return make_revolution(oval_curve(), "oval"); }

NSphere make_nsphere(int n, double r) {
    if (n < 2 || n > 3) throw DomainError("nsphere supports n = 2 or 3");
    if (!(r > 0.0)) throw DomainError("sphere radius must be positive");
    NSphere s{n, r, "nsphere:" + std::to_string(n)};
    if (r != 1.0) s.name += ":" + num(r);
    return s;
}

namespace {

double parse_number(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad " + what + " '" + text + "'");
    }
}

}  // namespace

Surface surface_from_spec(const std::string& spec) {
    if (spec == "sphere") return make_round_sphere(1.0);
    if (spec == "oval") return make_oval();
    if (spec.rfind("ellipsoid:", 0) == 0) {
        const double a = parse_number(spec.substr(10), "ellipsoid semi-axis");
        if (!(a > 0.0)) throw ConfigError("ellipsoid semi-axis must be positive");
        return make_ellipsoid(a);
    }
    if (spec.rfind("nsphere:", 0) == 0) {
        const double n = parse_number(spec.substr(8), "sphere dimension");
        if (n != 2.0 && n != 3.0) throw ConfigError("nsphere dimension must be 2 or 3");
        return make_nsphere(static_cast<int>(n));
    }
    const std::filesystem::path path(spec);
    std::ifstream in(path);
    if (!in) throw ConfigError("unknown surface '" + spec + "' (not a builtin or readable file)");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_surface_json(buf.str(), path.parent_path(), path.stem().string());
}

Surface parse_surface_json(const std::string& text, const std::filesystem::path& base_dir, const std::string& name) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(name + ": " + e.what());
    }
    try {
        const std::string kind = doc.at("kind").get<std::string>();
        const std::string label = doc.value("name", name);
        if (kind == "revolution") {
            const auto& c = doc.at("curve");
            UnitSpeedCurve curve = c.is_string() ? load_curve_file(base_dir / c.get<std::string>())
                                                 : parse_curve_json(c.dump(), label);
            return make_revolution(std::move(curve), label);
        }
        if (kind == "sphere") {
            const int n = doc.value("n", 2);
            const double r = doc.value("radius", 1.0);
            if (!(r > 0.0)) throw ConfigError(name + ": radius must be positive");
            if (n == 2) return make_round_sphere(r);
            if (n != 3) throw ConfigError(name + ": sphere dimension must be 2 or 3");
            return make_nsphere(n, r);
        }
        if (kind == "ellipsoid") {
            const double a = doc.at("a").get<double>();
            if (!(a > 0.0)) throw ConfigError(name + ": ellipsoid semi-axis must be positive");
            return make_ellipsoid(a);
        }
        throw ConfigError(name + ": unknown surface kind '" + kind + "'");
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(name + ": " + e.what());
    }
}

RevolutionJets revolution_jets(const CurveJet& cj, double rho, double t, double theta, int order) {
    RevolutionJets j;
    j.rho = Jet::variable(3, order, 0, rho);
    j.t = Jet::variable(3, order, 1, t);
    j.theta = Jet::variable(3, order, 2, theta);
    j.a = compose(cj.a, j.t);
    j.b = compose(cj.b, j.t);
    j.da = compose(cj.a.derivative(0), j.t);
    j.db = compose(cj.b.derivative(0), j.t);
    j.f = j.b * j.da - j.a * j.db;
    j.q = j.a * j.da + j.b * j.db;
    return j;
}

RevolutionJets revolution_jets(const SurfaceOfRevolution& s, double rho, double t, double theta, int order) {
    return revolution_jets(s.curve.jet(t), rho, t, theta, order);
}

MetricBlocks metric_blocks(const SurfaceOfRevolution& s, double rho, double t) {
    const CurveJet j = s.curve.jet(t);
    const double f = transversality_f(j);
    const double a = j.a0(), b = j.b0(), q = a * j.a1() + b * j.b1();
    MetricBlocks m{};
    m.g[0][0] = a * a + b * b;
    m.g[0][1] = m.g[1][0] = rho * q;
    m.g[1][1] = rho * rho;
    m.g[2][2] = rho * rho * a * a;
    m.g_inv[0][0] = 1.0 / (f * f);
    m.g_inv[0][1] = m.g_inv[1][0] = -q / (rho * f * f);
    m.g_inv[1][1] = (a * a + b * b) / (rho * rho * f * f);
    m.g_inv[2][2] = 1.0 / (rho * rho * a * a);
    return m;
}

FramePoint frame_at(const CurveJet& cj, double rho, double t, double theta) {
    const double a = cj.a0(), b = cj.b0();
    if (!(a > kPoleCutoff)) throw PoleDegeneracy("a(t) = " + std::to_string(a) + " at the axis");
    if (!(rho > 0.0)) throw OutOfDomain("rho must be positive");
    const double f = transversality_f(cj);
    const double c = std::cos(theta), s = std::sin(theta);
    FramePoint fp;
    fp.rho = rho;
    fp.t = t;
    fp.theta = theta;
    fp.a = a;
    fp.f = f;
    fp.p = {rho * a * c, rho * a * s, rho * b};
    fp.E1 = {cj.a1() * c, cj.a1() * s, cj.b1()};
    fp.E2 = {-s, c, 0.0};
    fp.N = {-cj.b1() * c, -cj.b1() * s, cj.a1()};
    fp.grad_rho_norm = 1.0 / f;
    fp.g_rho_t_inv = -(a * cj.a1() + b * cj.b1()) / (rho * f * f);
    fp.d_rho = {a * c, a * s, b};
    return fp;
}

FramePoint frame_at(const SurfaceOfRevolution& s, double rho, double t, double theta) {
    return frame_at(s.curve.jet(t), rho, t, theta);
}

std::array<Mat3, 3> StructureConstants::table() const {
    std::array<Mat3, 3> c{};
    auto set = [&](int g, int a, int b, double v) {
        c[g][a][b] = v;
        c[g][b][a] = -v;
    };
    set(2, 0, 2, c3_13);
    set(0, 0, 2, c1_13);
    set(1, 1, 2, c2_23);
    set(1, 0, 1, c2_12);
    return c;
}

StructureConstants structure_constants_at(const CurveJet& cj, double rho) {
    const double a = cj.a0(), b = cj.b0();
    if (!(a > kPoleCutoff)) throw PoleDegeneracy("a(t) = " + std::to_string(a) + " at the axis");
    const double f = transversality_f(cj);
    StructureConstants sc;
    sc.c3_13 = (a * cj.b2() - b * cj.a2()) / (rho * f);
    sc.c1_13 = -(cj.a2() * a + cj.b2() * b) / (rho * f);
    sc.c2_23 = -cj.b1() / (a * rho);
    sc.c2_12 = -cj.a1() / (a * rho);
    return sc;
}

StructureConstants structure_constants_at(const SurfaceOfRevolution& s, double rho, double t) {
    return structure_constants_at(s.curve.jet(t), rho);
}

ChristoffelTable christoffel_at(const StructureConstants& sc) {
    const auto c = sc.table();
    ChristoffelTable G{};
    for (int g = 0; g < 3; ++g)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) G[g][a][b] = 0.5 * (c[g][a][b] - c[b][a][g] - c[a][b][g]);
    return G;
}

Mat2 shape_operator(const SurfaceOfRevolution& s, const FramePoint& fp) {
    const CurveJet j = s.curve.jet(fp.t);
    const double c = std::cos(fp.theta), sn = std::sin(fp.theta);
    // derivatives of the Cartesian normal along E1 and E2
    const Vec3 dN1 = (1.0 / fp.rho) * Vec3{-j.b2() * c, -j.b2() * sn, j.a2()};
    const Vec3 dN2 = (1.0 / (fp.a * fp.rho)) * Vec3{j.b1() * sn, -j.b1() * c, 0.0};
    const Vec3* dN[2] = {&dN1, &dN2};
    const Vec3* E[2] = {&fp.E1, &fp.E2};
    Mat2 m{};
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) m[k][i] = -dot(*E[k], *dN[i]);
    return m;
}

Eigenpairs shape_eigen(const Mat2& s) {
    Eigen::Matrix2d m;
    m << s[0][0], 0.5 * (s[0][1] + s[1][0]), 0.5 * (s[0][1] + s[1][0]), s[1][1];
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(m);
    Eigen::Vector2d w = solver.eigenvalues();
    Eigen::Matrix2d v = solver.eigenvectors();
    int first = std::abs(v(0, 0)) >= std::abs(v(0, 1)) ? 0 : 1;
    Eigenpairs e;
    e.k1 = w(first);
    e.k2 = w(1 - first);
    e.v1 = {v(0, first), v(1, first)};
    e.v2 = {v(0, 1 - first), v(1, 1 - first)};
    return e;
}

CurvatureScalars curvature_scalars(const SurfaceOfRevolution& s, const FramePoint& fp) {
    const auto k = principal_curvatures_rev(s.curve.jet(fp.t));
    return {0.5 * (k.k1 + k.k2), k.k1 * k.k2};
}

CurvatureScalars curvature_scalars(const NSphere& s) { return {-1.0 / s.r, 1.0 / (s.r * s.r)}; }

std::vector<double> ricci_apply(const std::vector<double>& kappas, const std::vector<double>& v) {
    double nH = 0.0;
    for (double k : kappas) nH += k;
    std::vector<double> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) out[j] = (nH * kappas[j] - kappas[j] * kappas[j]) * v[j];
    return out;
}

Vec3 ricci_apply(const SurfaceOfRevolution& s, const FramePoint& fp, const Vec3& v) {
    const auto k = principal_curvatures_rev(s.curve.jet(fp.t));
    const auto r = ricci_apply({k.k1, k.k2}, {v[0], v[1]});
    return {r[0], r[1], 0.0};
}

double second_fund_form(const SurfaceOfRevolution& s, const FramePoint& fp, const Vec3& X, const Vec3& Y) {
    const auto k = principal_curvatures_rev(s.curve.jet(fp.t));
    return k.k1 * X[0] * Y[0] + k.k2 * X[1] * Y[1];
}

}  // namespace surflap
