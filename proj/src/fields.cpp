#include "surflap/fields.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace surflap {

namespace {

void require_variables(const Expr& e, std::initializer_list<const char*> allowed, const std::string& where) {
    for (const auto& v : e.free_variables()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return v == a; })) {
            throw UnboundVariable(where + ": variable '" + v + "' is not allowed here");
        }
    }
}

/// Index of the jet variable that `x` is, or DomainError.
int variable_index(const Jet& x) {
    int found = -1;
    for (int k = 1; k < x.size(); ++k) {
        if (x.coeff(k) == 0.0) continue;
        if (found >= 0 || k > x.nvars() || x.coeff(k) != 1.0) {
            throw DomainError("stream fields need t and theta to be plain jet variables");
        }
        found = k - 1;
    }
    if (found < 0) throw DomainError("stream fields need t and theta to be plain jet variables");
    return found;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

TangentField tangent_field(const std::string& v1, const std::string& v2, std::string name) {
    TangentField tf{parse_expr(v1), parse_expr(v2), std::nullopt, std::move(name)};
    require_variables(tf.v1, {"t", "theta"}, "tangent field");
    require_variables(tf.v2, {"t", "theta"}, "tangent field");
    if (tf.name.empty()) tf.name = "(" + tf.v1.to_string() + ", " + tf.v2.to_string() + ")";
    return tf;
}

TangentField azimuthal_field(const std::string& g) {
    TangentField tf = tangent_field("0", g);
    tf.name = "azimuthal:" + tf.v2.to_string();
    return tf;
}

TangentField stream_field(const std::string& psi, std::string name) {
    TangentField tf{Expr::number(0.0), Expr::number(0.0), parse_expr(psi), std::move(name)};
    require_variables(*tf.psi, {"t", "theta"}, "stream function");
    if (tf.name.empty()) tf.name = "stream:" + tf.psi->to_string();
    return tf;
}

std::string ExtensionStrategy::label() const {
    if (kind == Kind::Homogeneous) return "homogeneous:" + fmt(k);
    if (kind == Kind::NormalCorrected) return "normal-corrected:" + fmt(k);
    return "custom:(" + custom[0].to_string() + ", " + custom[1].to_string() + ", " + custom[2].to_string() + ")";
}

ExtensionStrategy homogeneous(double k) {
    ExtensionStrategy e;
    e.kind = ExtensionStrategy::Kind::Homogeneous;
    e.k = k;
    return e;
}

ExtensionStrategy normal_corrected(double k) {
    ExtensionStrategy e = homogeneous(k);
    e.kind = ExtensionStrategy::Kind::NormalCorrected;
    return e;
}

ExtensionStrategy custom_extension(const std::string& v1, const std::string& v2, const std::string& v3) {
    ExtensionStrategy e;
    e.kind = ExtensionStrategy::Kind::Custom;
    e.custom = {parse_expr(v1), parse_expr(v2), parse_expr(v3)};
    for (const auto& c : e.custom) require_variables(c, {"rho", "t", "theta"}, "custom extension");
    return e;
}

std::array<Jet, 2> tangent_jets(const TangentField& tf, const Jet& t, const Jet& theta, const Jet& a) {
    const Jet unit(t.nvars(), t.order(), 1.0);
    if (tf.psi) {
        if (t.order() > 2) throw DomainError("stream fields support jets of order <= 2");
        const int it = variable_index(t), ith = variable_index(theta);
        if (it == ith) throw DomainError("t and theta must be distinct jet variables");
        // lift psi one order higher, then differentiate back down
        const int n = t.nvars(), order = t.order() + 1;
        const Jet psi = evaluate<Jet>(
            *tf.psi, {{"t", Jet::variable(n, order, it, t.value())}, {"theta", Jet::variable(n, order, ith, theta.value())}},
            Jet(n, order, 1.0));
        return {-psi.derivative(ith) / a.truncated(t.order()), psi.derivative(it)};
    }
    return {evaluate<Jet>(tf.v1, {{"t", t}, {"theta", theta}}, unit),
            evaluate<Jet>(tf.v2, {{"t", t}, {"theta", theta}}, unit)};
}

std::array<Jet, 3> ambient_jets(const AmbientField& af, const RevolutionJets& j) {
    if (af.ext.kind == ExtensionStrategy::Kind::Custom) {
        const Bindings<Jet> env{{"rho", j.rho}, {"t", j.t}, {"theta", j.theta}};
        const Jet unit(j.rho.nvars(), j.rho.order(), 1.0);
        return {evaluate<Jet>(af.ext.custom[0], env, unit), evaluate<Jet>(af.ext.custom[1], env, unit),
                evaluate<Jet>(af.ext.custom[2], env, unit)};
    }
    const auto v = tangent_jets(af.base, j.t, j.theta, j.a);
    const Jet scale = af.ext.k == 0.0 ? Jet(j.rho.nvars(), j.rho.order(), 1.0) : pow(j.rho, af.ext.k);
    Jet v3(j.rho.nvars(), j.rho.order(), 0.0);
    if (af.ext.kind == ExtensionStrategy::Kind::NormalCorrected) {
        // f' v1 is one order short; the factor (rho - 1) makes the missing
        // top coefficients irrelevant, so pad with zeros
        const Jet g = j.f.derivative(1) * v[0];
        Jet padded(j.rho.nvars(), j.rho.order(), 0.0);
        for (int i = 0; i < g.size(); ++i) padded.coeff(i) = g.coeff(i);
        v3 = -(j.rho - 1.0) * padded;
    }
    return {scale * v[0], scale * v[1], v3};
}

Vec3 ambient_values(const AmbientField& af, const CurveJet& cj, double rho, double t, double theta) {
    const auto v = ambient_jets(af, revolution_jets(cj, rho, t, theta, 1));
    return {v[0].value(), v[1].value(), v[2].value()};
}

AmbientField extend(const SurfaceOfRevolution& s, const TangentField& tf, const ExtensionStrategy& strategy) {
    AmbientField af{tf, strategy};
    if (strategy.kind == ExtensionStrategy::Kind::Homogeneous) return af;
    std::mt19937_64 rng(0x5eed);
    const double lo = cutoff_min(s.curve), hi = cutoff_max(s.curve);
    for (int i = 0; i < 20; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double theta = -M_PI + 2 * M_PI * static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const CurveJet cj = s.curve.jet(t);
        const Vec3 ext = ambient_values(af, cj, 1.0, t, theta);
        const Vec3 base = ambient_values({tf, homogeneous(0.0)}, cj, 1.0, t, theta);
        const double r = std::max({std::abs(ext[0] - base[0]), std::abs(ext[1] - base[1]), std::abs(ext[2])});
        if (r > 1e-12) {
            throw RestrictionMismatch("extension " + strategy.label() + " does not restrict to " + tf.name +
                                      " (residual " + std::to_string(r) + " at t = " + std::to_string(t) + ")");
        }
    }
    return af;
}

std::string SphereField::name() const { return kind == SphereFieldKind::Killing ? "killing" : "conformal"; }
std::string SphereField::label() const { return name() + "/homogeneous:" + fmt(k); }

namespace {

template <class T>
std::vector<T> sphere_field(const NSphere& s, const SphereField& f, const std::vector<T>& x, const T& one) {
    const int m = s.n + 1;
    if (static_cast<int>(x.size()) != m) throw DomainError("point dimension does not match the sphere");
    T r2 = one * 0.0;
    for (const auto& xi : x) r2 = r2 + xi * xi;
    std::vector<T> v(m, one * 0.0);
    using std::pow;
    using std::sqrt;
    const T rho = sqrt(r2) / s.r;
    if (f.kind == SphereFieldKind::Killing) {
        // rotation in the (x1, x2) plane, plus (x3, x4) for n = 3; degree 1 in x
        for (int i = 0; i + 1 < m; i += 2) {
            v[i] = -x[i + 1];
            v[i + 1] = x[i];
        }
        const T scale = f.k == 1.0 ? one : pow(rho, f.k - 1.0);
        for (auto& c : v) c = c * scale;
    } else {
        // tangential part of the last axis; degree 0 in x
        const T ez = x[m - 1];
        for (int i = 0; i < m; ++i) v[i] = x[i] * (-ez / r2);
        v[m - 1] = v[m - 1] + one;
        const T scale = f.k == 0.0 ? one : pow(rho, f.k);
        for (auto& c : v) c = c * scale;
    }
    return v;
}

}  // namespace

std::vector<Jet> sphere_field_jets(const NSphere& s, const SphereField& f, const std::vector<Jet>& x) {
    return sphere_field<Jet>(s, f, x, Jet(x.at(0).nvars(), x.at(0).order(), 1.0));
}

std::vector<double> sphere_field_values(const NSphere& s, const SphereField& f, const std::vector<double>& x) {
    return sphere_field<double>(s, f, x, 1.0);
}

OneForm flat(const std::vector<double>& v) { return {v}; }
std::vector<double> sharp(const OneForm& w) { return w.c; }

double pairing(const OneForm& w, const std::vector<double>& X) {
    if (w.c.size() != X.size()) throw DomainError("pairing size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) s += w.c[i] * X[i];
    return s;
}

Vec3 project_tangent(const Vec3& v) { return {v[0], v[1], 0.0}; }

Vec3 project_tangent(const FramePoint& fp, const Vec3& v) { return v - dot(v, fp.N) * fp.N; }

OneForm pullback(const OneForm& w) {
    OneForm r = w;
    if (r.c.size() == 3) r.c[2] = 0.0;
    return r;
}

Vec3 to_cartesian(const FramePoint& fp, const Vec3& v) { return v[0] * fp.E1 + v[1] * fp.E2 + v[2] * fp.N; }

double divergence(const SurfaceOfRevolution& s, const AmbientField& af, Where where, double rho, double t,
                  double theta) {
    const CurveJet cj = s.curve.jet(t);
    const RevolutionJets j = revolution_jets(cj, rho, t, theta, 1);
    const auto v = ambient_jets(af, j);
    const double a = j.a.value(), f = j.f.value(), q = j.q.value();
    const StructureConstants sc = structure_constants_at(cj, rho);
    // E1 = d_t / rho, E2 = d_theta / (a rho), N = d_rho / f - q / (f rho) d_t
    const double e1v1 = v[0].d(1) / rho;
    const double e2v2 = v[1].d(2) / (a * rho);
    if (where == Where::Surface) {
        if (rho != 1.0) throw DomainError("surface divergence is evaluated on rho = 1");
        return e1v1 + e2v2 - sc.c2_12 * v[0].value();
    }
    const double nv3 = v[2].d(0) / f - q / (f * rho) * v[2].d(1);
    return e1v1 + e2v2 + nv3 + (-sc.c2_12 - sc.c3_13) * v[0].value() + (sc.c1_13 + sc.c2_23) * v[2].value();
}

namespace {

struct DivSamples {
    double surface = 0.0, ambient = 0.0, collar = 0.0;
};

DivSamples divergence_samples(const SurfaceOfRevolution& s, const AmbientField& af) {
    DivSamples d;
    const double lo = cutoff_min(s.curve), hi = cutoff_max(s.curve);
    constexpr int kT = 12;
    for (int i = 0; i < kT; ++i) {
        const double t = lo + (hi - lo) * (i + 0.5) / kT;
        const double theta = -M_PI + 2 * M_PI * (i + 0.25) / kT;
        d.surface = std::max(d.surface, std::abs(divergence(s, af, Where::Surface, 1.0, t, theta)));
        d.ambient = std::max(d.ambient, std::abs(divergence(s, af, Where::Ambient, 1.0, t, theta)));
        for (double rho : {0.9, 0.95, 1.05, 1.1}) {
            d.collar = std::max(d.collar, std::abs(divergence(s, af, Where::Ambient, rho, t, theta)));
        }
    }
    return d;
}

}  // namespace

DivFreePair make_divfree_pair(const SurfaceOfRevolution& s, const TangentField& tf) {
    constexpr double kTol = 1e-8;
    auto build = [&](const ExtensionStrategy& ext) {
        DivFreePair p;
        p.tangent = tf;
        p.k = ext.k;
        p.ambient = extend(s, tf, ext);
        const DivSamples d = divergence_samples(s, p.ambient);
        p.surface_residual = d.surface;
        p.ambient_residual = d.ambient;
        p.collar_residual = d.collar;
        return p;
    };
    DivFreePair p = build(homogeneous(1.0));
    if (p.surface_residual > kTol) {
        throw NoDivFreeExtension(tf.name + " is not divergence free on the surface (residual " +
                                 std::to_string(p.surface_residual) + ")");
    }
    if (p.ambient_residual <= kTol && p.collar_residual <= kTol) return p;
    // secant on the signed collar divergence as a function of the degree k
    auto signed_collar = [&](double k) {
        const AmbientField af = extend(s, tf, homogeneous(k));
        const double t = 0.5 * (cutoff_min(s.curve) + cutoff_max(s.curve));
        return divergence(s, af, Where::Ambient, 1.05, t, 0.3);
    };
    double k0 = 0.0, k1 = 2.0, r0 = signed_collar(k0), r1 = signed_collar(k1);
    for (int it = 0; it < 40 && std::abs(r1) > 1e-14 && r1 != r0; ++it) {
        const double k2 = k1 - r1 * (k1 - k0) / (r1 - r0);
        k0 = k1;
        r0 = r1;
        k1 = k2;
        r1 = signed_collar(k1);
    }
    if (std::isfinite(k1)) {
        p = build(homogeneous(k1));
        if (p.ambient_residual <= kTol && p.collar_residual <= kTol) return p;
    }
    // divergence free on S only; the collar residual records how far off it is
    p = build(normal_corrected(1.0));
    if (p.ambient_residual <= kTol) return p;
    throw NoDivFreeExtension("no extension of " + tf.name + " found that is divergence free on the surface");
}

DivFreePair make_divfree_pair(const SurfaceOfRevolution& s, const std::string& g) {
    return make_divfree_pair(s, azimuthal_field(g));
}

}  // namespace surflap
