#include "surflap/diffops.hpp"

#include <cmath>

#include <boost/math/tools/roots.hpp>

#include "surflap/fd.hpp"

namespace surflap {

std::vector<double> values(const Field& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].value();
    return out;
}

Field scale(const Jet& s, const Field& v) {
    Field out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
    return out;
}

Field operator+(const Field& x, const Field& y) {
    Field out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
    return out;
}

Field operator-(const Field& x, const Field& y) {
    Field out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
    return out;
}

namespace {

bool is_zero(const Jet& j) {
    for (int k = 0; k < j.size(); ++k)
        if (j.coeff(k) != 0.0) return false;
    return true;
}

}  // namespace

FrameContext FrameContext::revolution(const CurveJet& cj, double rho, double t, double theta, int order) {
    if (!(cj.a0() > kPoleCutoff)) throw PoleDegeneracy("a(t) = " + std::to_string(cj.a0()) + " at the axis");
    transversality_f(cj);
    const RevolutionJets j = revolution_jets(cj, rho, t, theta, order);
    FrameContext ctx;
    ctx.m_ = 3;
    ctx.order_ = order;
    ctx.x_ = {j.rho, j.t, j.theta};
    const Jet zero(3, order, 0.0);
    const Jet inv_rho = reciprocal(j.rho);
    std::vector<std::vector<Jet>> A = {
        {zero, inv_rho, zero},
        {zero, zero, inv_rho / j.a},
        {reciprocal(j.f), -j.q / (j.f * j.rho), zero},
    };
    std::vector<std::vector<Jet>> G = {
        {j.a * j.a + j.b * j.b, j.rho * j.q, zero},
        {j.rho * j.q, j.rho * j.rho, zero},
        {zero, zero, j.rho * j.rho * j.a * j.a},
    };
    ctx.build(std::move(A), std::move(G));
    ctx.normal_ = ctx.basis(2);
    ctx.tangent_frame_ = {ctx.basis(0), ctx.basis(1)};
    return ctx;
}

FrameContext FrameContext::cartesian(std::span<const double> x, int order) {
    FrameContext ctx;
    const int m = static_cast<int>(x.size());
    if (m < 2 || m > kMaxJetVars) throw DomainError("cartesian frames need 2 to 4 coordinates");
    ctx.m_ = m;
    ctx.order_ = order;
    std::vector<std::vector<Jet>> A(m, std::vector<Jet>(m, Jet(m, order, 0.0)));
    for (int i = 0; i < m; ++i) {
        ctx.x_.push_back(Jet::variable(m, order, i, x[i]));
        A[i][i] = Jet(m, order, 1.0);
    }
    ctx.build(A, A);
    Jet r2(m, order, 0.0);
    for (const auto& xi : ctx.x_) r2 += xi * xi;
    const Jet inv_r = reciprocal(sqrt(r2));
    ctx.normal_ = scale(inv_r, ctx.x_);
    for (int a = 0; a < m; ++a) ctx.tangent_frame_.push_back(ctx.tangent(ctx.basis(a)));
    return ctx;
}

void FrameContext::build(std::vector<std::vector<Jet>> A, std::vector<std::vector<Jet>> G) {
    A_ = std::move(A);
    const int m = m_;
    // [E_a, E_b]^j = E_a(A_b^j) - E_b(A_a^j); lower with G and read off with A_g
    std::vector<Jet> C(m * m * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int j = 0; j < m; ++j) C[(a * m + b) * m + j] = apply(a, A_[b][j]) - apply(b, A_[a][j]);
    c_.assign(m * m * m, Jet(m, order_ - 1, 0.0));
    for (int g = 0; g < m; ++g) {
        std::vector<Jet> low(m, Jet(m, order_, 0.0));  // (G A_g)_j
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) low[j] += G[j][k] * A_[g][k];
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                Jet s(m, order_ - 1, 0.0);
                for (int j = 0; j < m; ++j) s += C[(a * m + b) * m + j] * low[j];
                c_[idx(g, a, b)] = s;
            }
    }
    gamma_.assign(m * m * m, Jet());
    for (int g = 0; g < m; ++g)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) gamma_[idx(g, a, b)] = 0.5 * (c(g, a, b) - c(b, a, g) - c(a, b, g));
}

Field FrameContext::basis(int alpha) const {
    Field f = zero();
    f[alpha] = Jet(m_, order_, 1.0);
    return f;
}

Field FrameContext::constant(std::span<const double> c) const {
    Field f(m_);
    for (int i = 0; i < m_; ++i) f[i] = Jet(m_, order_, c[i]);
    return f;
}

Field FrameContext::zero() const { return Field(m_, Jet(m_, order_, 0.0)); }

Jet FrameContext::apply(int alpha, const Jet& phi) const {
    Jet out(m_, std::max(0, phi.order() - 1), 0.0);
    if (phi.order() == 0) throw DomainError("jet order exhausted");
    for (int j = 0; j < m_; ++j) {
        if (is_zero(A_[alpha][j])) continue;
        out += A_[alpha][j] * phi.derivative(j);
    }
    return out;
}

Jet FrameContext::apply(const Field& X, const Jet& phi) const {
    Jet out(m_, std::max(0, phi.order() - 1), 0.0);
    for (int a = 0; a < m_; ++a) {
        if (is_zero(X[a])) continue;
        out += X[a] * apply(a, phi);
    }
    return out;
}

Field FrameContext::cov(const Field& X, const Field& Y) const {
    Field out(m_);
    for (int g = 0; g < m_; ++g) {
        Jet s = apply(X, Y[g]);
        for (int a = 0; a < m_; ++a) {
            if (is_zero(X[a])) continue;
            for (int b = 0; b < m_; ++b) {
                const Jet& G = gamma(g, a, b);
                if (is_zero(G) || is_zero(Y[b])) continue;
                s += X[a] * G * Y[b];
            }
        }
        out[g] = s;
    }
    return out;
}

Field FrameContext::bracket(const Field& X, const Field& Y) const { return cov(X, Y) - cov(Y, X); }

Jet FrameContext::inner(const Field& X, const Field& Y) const {
    Jet s = X[0] * Y[0];
    for (int a = 1; a < m_; ++a) s += X[a] * Y[a];
    return s;
}

Field FrameContext::tangent(const Field& Y) const { return Y - scale(inner(Y, normal_), normal_); }

Field FrameContext::cov_surface(const Field& X, const Field& Y) const { return tangent(cov(X, Y)); }

Field ambient_field(const AmbientField& af, const CurveJet& cj, double rho, double t, double theta) {
    const auto v = ambient_jets(af, revolution_jets(cj, rho, t, theta, 2));
    return {v[0], v[1], v[2]};
}

Field sphere_field(const FrameContext& ctx, const NSphere& s, const SphereField& f) {
    std::vector<Jet> x;
    for (int i = 0; i < ctx.dim(); ++i) x.push_back(ctx.coordinate(i));
    return sphere_field_jets(s, f, x);
}

Field lie_oneform(const FrameContext& ctx, const Field& X, const Field& w, LieForm form) {
    const int m = ctx.dim();
    Field out(m);
    switch (form) {
        case LieForm::Lemma: {
            const Field dxw = ctx.cov(X, w);
            for (int a = 0; a < m; ++a) out[a] = dxw[a] + ctx.inner(w, ctx.cov(ctx.basis(a), X));
            break;
        }
        case LieForm::Relate: {
            const Field br = ctx.bracket(X, w);
            const Field dwx = ctx.cov(w, X);
            for (int a = 0; a < m; ++a) out[a] = br[a] + dwx[a] + ctx.inner(w, ctx.cov(ctx.basis(a), X));
            break;
        }
        case LieForm::Cartan:
            for (int a = 0; a < m; ++a) out[a] = ctx.apply(X, w[a]) - ctx.inner(w, ctx.bracket(X, ctx.basis(a)));
            break;
    }
    return out;
}

Field bochner_ambient(const FrameContext& ctx, const Field& v) {
    Field out;
    for (int a = 0; a < ctx.dim(); ++a) {
        const Field E = ctx.basis(a);
        const Field term = ctx.cov(ctx.cov(E, E), v) - ctx.cov(E, ctx.cov(E, v));
        out = a == 0 ? term : out + term;
    }
    return out;
}

Field bochner_surface(const FrameContext& ctx, const Field& v) {
    const Field vt = ctx.tangent(v);
    Field out;
    bool first = true;
    for (const Field& F : ctx.tangent_frame()) {
        const Field term = ctx.cov_surface(ctx.cov_surface(F, F), vt) - ctx.cov_surface(F, ctx.cov_surface(F, vt));
        out = first ? term : out + term;
        first = false;
    }
    return out;
}

NormalTerms thm1_normal_terms(const FrameContext& ctx, const Field& v) {
    const Field& N = ctx.normal();
    NormalTerms t;
    t.nn = ctx.cov(N, ctx.cov(N, v));
    t.dnn_v = ctx.cov(ctx.cov(N, N), v);
    t.bracket = ctx.bracket(N, v);
    return t;
}

Chart::Chart(std::vector<std::vector<Jet>> g, std::vector<int> vars) : g_(std::move(g)), vars_(std::move(vars)) {
    const int d = dim();
    g_inv_.assign(d, std::vector<Jet>(d));
    if (d == 2) {
        const Jet det = g_[0][0] * g_[1][1] - g_[0][1] * g_[1][0];
        const Jet inv = reciprocal(det);
        g_inv_[0][0] = g_[1][1] * inv;
        g_inv_[1][1] = g_[0][0] * inv;
        g_inv_[0][1] = -g_[0][1] * inv;
        g_inv_[1][0] = -g_[1][0] * inv;
    } else if (d == 3) {
        auto cof = [&](int i, int j) {
            const int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
            return g_[i1][j1] * g_[i2][j2] - g_[i1][j2] * g_[i2][j1];
        };
        Jet det = g_[0][0] * cof(0, 0) + g_[0][1] * cof(0, 1) + g_[0][2] * cof(0, 2);
        const Jet inv = reciprocal(det);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) g_inv_[i][j] = cof(j, i) * inv;
    } else {
        throw DomainError("charts support dimension 2 or 3");
    }
    gamma_.assign(d * d * d, Jet());
    std::vector<std::vector<std::vector<Jet>>> dg(d, std::vector<std::vector<Jet>>(d, std::vector<Jet>(d)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int l = 0; l < d; ++l) dg[l][i][j] = partial(l, g_[i][j]);
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Jet s = 0.0 * dg[0][0][0];
                for (int l = 0; l < d; ++l) s += g_inv_[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                gamma_[(k * d + i) * d + j] = 0.5 * s;
            }
}

std::vector<std::vector<Jet>> Chart::cov(const std::vector<Jet>& V) const {
    const int d = dim();
    std::vector<std::vector<Jet>> T(d, std::vector<Jet>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Jet s = partial(i, V[j]);
            for (int l = 0; l < d; ++l) s += gamma(j, i, l) * V[l];
            T[i][j] = s;
        }
    return T;
}

std::vector<Jet> Chart::bochner(const std::vector<Jet>& V) const {
    const int d = dim();
    const auto T = cov(V);
    std::vector<Jet> out(d);
    for (int j = 0; j < d; ++j) {
        Jet s = 0.0 * T[0][0].truncated(0);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                Jet inner = partial(k, T[i][j]);
                for (int l = 0; l < d; ++l) inner += gamma(j, k, l) * T[i][l] - gamma(l, k, i) * T[l][j];
                s += g_inv(i, k) * inner;
            }
        out[j] = -s;
    }
    return out;
}

std::vector<Jet> Chart::minus_two_div_def(const std::vector<Jet>& U) const {
    const int d = dim();
    std::vector<std::vector<Jet>> D(d, std::vector<Jet>(d)), Def(d, std::vector<Jet>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Jet s = partial(i, U[j]);
            for (int l = 0; l < d; ++l) s -= gamma(l, i, j) * U[l];
            D[i][j] = s;
        }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) Def[i][j] = 0.5 * (D[i][j] + D[j][i]);
    std::vector<Jet> out(d);
    for (int j = 0; j < d; ++j) {
        Jet s = 0.0 * Def[0][0].truncated(0);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                Jet nk = partial(k, Def[i][j]);
                for (int l = 0; l < d; ++l) nk -= gamma(l, k, i) * Def[l][j] + gamma(l, k, j) * Def[i][l];
                s += g_inv(i, k) * nk;
            }
        out[j] = -2.0 * s;
    }
    return out;
}

SurfaceChart surface_chart(const CurveJet& cj, const TangentField& tf, double t, double theta) {
    const Jet tj = Jet::variable(2, 2, 0, t);
    const Jet th = Jet::variable(2, 2, 1, theta);
    const Jet a = compose(cj.a, tj);
    if (!(a.value() > kPoleCutoff)) throw PoleDegeneracy("a(t) = " + std::to_string(a.value()) + " at the axis");
    const Jet zero(2, 2, 0.0);
    Chart chart({{Jet(2, 2, 1.0), zero}, {zero, a * a}}, {0, 1});
    return {tj, th, a, std::move(chart), tangent_jets(tf, tj, th, a)};
}

std::array<double, 2> intrinsic_bochner(const SurfaceChart& sc) {
    const auto W = sc.chart.bochner(sc.coords());
    return {W[0].value(), sc.a.value() * W[1].value()};
}

std::array<double, 2> intrinsic_cov_deriv(const SurfaceChart& sc, const std::array<double, 2>& X) {
    const auto T = sc.chart.cov(sc.coords());
    const double a = sc.a.value();
    const double Xc[2] = {X[0], X[1] / a};
    double r[2] = {0.0, 0.0};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[j] += Xc[i] * T[i][j].value();
    return {r[0], a * r[1]};
}

Vec3 ambient_bochner_chart(const RevolutionJets& j, const std::array<Jet, 3>& v) {
    const Jet zero = 0.0 * j.rho;
    Chart chart({{j.a * j.a + j.b * j.b, j.rho * j.q, zero},
                 {j.rho * j.q, j.rho * j.rho, zero},
                 {zero, zero, j.rho * j.rho * j.a * j.a}},
                {0, 1, 2});
    // v = v1 d_t / rho + v2 d_theta / (a rho) + v3 (d_rho / f - q / (f rho) d_t)
    const std::vector<Jet> V = {v[2] / j.f, (v[0] - j.q * v[2] / j.f) / j.rho, v[1] / (j.a * j.rho)};
    const auto W = chart.bochner(V);
    // d_rho = f N + q E1, d_t = rho E1, d_theta = a rho E2
    const double rho = j.rho.value(), a = j.a.value(), f = j.f.value(), q = j.q.value();
    return {q * W[0].value() + rho * W[1].value(), a * rho * W[2].value(), f * W[0].value()};
}

HodgeRoutes hodge_surface(const CurveJet& cj, const SurfaceChart& sc) {
    const auto k = principal_curvatures_rev(cj);
    const double K = k.k1 * k.k2;
    const double v1 = sc.v[0].value(), v2 = sc.v[1].value(), a = sc.a.value();
    HodgeRoutes r;
    const auto B = intrinsic_bochner(sc);
    r.bochner = {B[0] - K * v1, B[1] - K * v2};

    const std::vector<Jet> U = {sc.v[0], sc.a * sc.v[1]};  // lower coordinate components
    const auto D = sc.chart.minus_two_div_def(U);
    r.def = {D[0].value(), D[1].value() / a};

    // metric dt^2 + a^2 dtheta^2; delta on 1-forms is -div, on 2-forms -*d*
    const Jet& A = sc.a;
    const Jet div = (A * U[0]).derivative(0) / A + (U[1] / (A * A)).derivative(1);
    const Jet w = (U[1].derivative(0) - U[0].derivative(1)) / A;  // *du
    const double h_t = -div.d(0) + w.d(1) / a;
    const double h_th = -div.d(1) - a * w.d(0);
    r.minus_hodge = {h_t, h_th / a};
    r.hodge = {r.minus_hodge[0] - 2.0 * K * v1, r.minus_hodge[1] - 2.0 * K * v2};
    return r;
}

CartesianOracle::CartesianOracle(VectorMap field, VectorMap normal, double step)
    : field_(std::move(field)), normal_(std::move(normal)), step_(step) {}

Vec3 invert_chart(const SurfaceOfRevolution& s, std::span<const double> x) {
    const GeneratingCurve& raw = s.curve.raw();
    const double r = std::hypot(x[0], x[1]), z = x[2];
    const double target = std::atan2(r, z);
    // the polar angle of (a, b) increases strictly with the parameter when f > 0
    auto angle = [&](double u) {
        const Bindings<double> at{{"t", u}};
        const Jet a = jet_lift(raw.a, at, 1), b = jet_lift(raw.b, at, 1);
        const double n2 = a.value() * a.value() + b.value() * b.value();
        return std::make_pair(std::atan2(a.value(), b.value()) - target,
                              (a.d(0) * b.value() - b.d(0) * a.value()) / n2);
    };
    const double lo = raw.t_min, hi = raw.t_max;
    const double f_lo = angle(lo).first, f_hi = angle(hi).first;
    if (!(f_lo <= 0.0 && f_hi >= 0.0)) throw OutOfDomain("point is outside the cone of the surface");
    const double guess = f_hi > f_lo ? lo - f_lo * (hi - lo) / (f_hi - f_lo) : lo;
    std::uintmax_t iters = 60;
    const double u = boost::math::tools::newton_raphson_iterate(angle, std::clamp(guess, lo, hi), lo, hi, 52, iters);
    const Bindings<double> at{{"t", u}};
    const double a = evaluate(raw.a, at), b = evaluate(raw.b, at);
    return {std::hypot(r, z) / std::hypot(a, b), s.curve.arc_parameter(u), std::atan2(x[1], x[0])};
}

CartesianOracle CartesianOracle::revolution(const SurfaceOfRevolution& s, const AmbientField& af) {
    auto frame = [s](std::span<const double> x) {
        const Vec3 c = invert_chart(s, x);
        const CurveJet cj = s.curve.jet(c[1]);
        return std::make_pair(cj, frame_at(cj, c[0], c[1], c[2]));
    };
    VectorMap field = [frame, af](std::span<const double> x) {
        const auto [cj, fp] = frame(x);
        const Vec3 v = to_cartesian(fp, ambient_values(af, cj, fp.rho, fp.t, fp.theta));
        return std::vector<double>(v.begin(), v.end());
    };
    VectorMap normal = [frame](std::span<const double> x) {
        const Vec3 n = frame(x).second.N;
        return std::vector<double>(n.begin(), n.end());
    };
    return CartesianOracle(std::move(field), std::move(normal));
}

CartesianOracle CartesianOracle::nsphere(const NSphere& s, const SphereField& f) {
    VectorMap field = [s, f](std::span<const double> x) {
        return sphere_field_values(s, f, std::vector<double>(x.begin(), x.end()));
    };
    VectorMap normal = [](std::span<const double> x) {
        double r = 0.0;
        for (double xi : x) r += xi * xi;
        r = std::sqrt(r);
        std::vector<double> n(x.begin(), x.end());
        for (auto& c : n) c /= r;
        return n;
    };
    return CartesianOracle(std::move(field), std::move(normal));
}

std::vector<double> CartesianOracle::directional(const VectorMap& f, std::span<const double> x,
                                                 std::span<const double> d, int order) const {
    const std::size_t m = f(x).size();
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        const ScalarFunction comp = [&f, i](std::span<const double> p) { return f(p)[i]; };
        out[i] = fd_directional(comp, x, d, order, {step_}).value;
    }
    return out;
}

std::vector<double> CartesianOracle::cov(std::span<const double> x, std::span<const double> X) const {
    return directional(field_, x, X, 1);
}

std::vector<double> CartesianOracle::cov_normal(std::span<const double> x, std::span<const double> X) const {
    return directional(normal_, x, X, 1);
}

std::vector<double> CartesianOracle::rough_laplacian(std::span<const double> x) const {
    const std::size_t m = x.size();
    std::vector<double> out(m, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
        std::vector<double> e(m, 0.0);
        e[a] = 1.0;
        const auto d2 = directional(field_, x, e, 2);
        for (std::size_t i = 0; i < m; ++i) out[i] -= d2[i];
    }
    return out;
}

double CartesianOracle::lie_cartan(std::span<const double> x, std::span<const double> Y) const {
    const auto N = normal_(x);
    auto dot = [](const std::vector<double>& p, std::span<const double> q) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * q[i];
        return s;
    };
    // dw(N, Y) = N^i Y^j (d_i w_j - d_j w_i)
    const double dw = dot(directional(field_, x, N, 1), Y) - dot(directional(field_, x, Y, 1), N);
    const ScalarFunction iw = [this](std::span<const double> p) {
        const auto v = field_(p);
        const auto n = normal_(p);
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * n[i];
        return s;
    };
    return dw + fd_directional(iw, x, Y, 1, {step_}).value;
}

}  // namespace surflap
