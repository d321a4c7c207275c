#include "surflap/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "json.hpp"

namespace surflap {

class UnitSpeedCurve::Impl {
public:
    explicit Impl(GeneratingCurve raw) : raw_(std::move(raw)) {}
    virtual ~Impl() = default;

    virtual double t_min() const { return raw_.t_min; }
    virtual double t_max() const { return raw_.t_max; }
    virtual bool reparametrized() const { return false; }
    virtual double raw_parameter(double s) const { return s; }
    virtual double arc_parameter(double u) const { return u; }
    virtual CurveJet jet(double t) const { return raw_jet(t, 3); }

    const GeneratingCurve& raw() const { return raw_; }

    CurveJet raw_jet(double u, int order) const {
        const Bindings<double> at{{"t", u}};
        return {jet_lift(raw_.a, at, order), jet_lift(raw_.b, at, order)};
    }

    double speed(double u) const {
        const CurveJet j = raw_jet(u, 1);
        return std::hypot(j.a1(), j.b1());
    }

protected:
    GeneratingCurve raw_;
};

namespace {

constexpr int kSegments = 256;
constexpr int kCertificateSamples = 1000;

using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;

class ReparamCurve final : public UnitSpeedCurve::Impl {
public:
    explicit ReparamCurve(GeneratingCurve raw) : Impl(std::move(raw)) {
        const double u0 = raw_.t_min, u1 = raw_.t_max;
        for (int i = 0; i <= kCertificateSamples; ++i) {
            const double u = u0 + (u1 - u0) * i / kCertificateSamples;
            if (!(speed(u) >= 1e-10)) {
                throw DegenerateSpeed("speed of '" + raw_.name + "' vanishes near t = " + std::to_string(u));
            }
        }
        knots_.resize(kSegments + 1);
        arc_.resize(kSegments + 1);
        arc_[0] = u0;
        for (int k = 0; k <= kSegments; ++k) knots_[k] = u0 + (u1 - u0) * k / kSegments;
        knots_.back() = u1;
        for (int k = 0; k < kSegments; ++k) arc_[k + 1] = arc_[k] + integrate(knots_[k], knots_[k + 1]);
    }

    double t_min() const override { return arc_.front(); }
    double t_max() const override { return arc_.back(); }
    bool reparametrized() const override { return true; }

    double arc_parameter(double u) const override {
        if (u <= knots_.front()) return arc_.front();
        if (u >= knots_.back()) return arc_.back();
        const auto k = segment(knots_, u);
        return arc_[k] + integrate(knots_[k], u);
    }

    double raw_parameter(double s) const override {
        if (s <= arc_.front()) return knots_.front();
        if (s >= arc_.back()) return knots_.back();
        const auto k = segment(arc_, s);
        const double lo = knots_[k], hi = knots_[k + 1];
        const double guess = lo + (hi - lo) * (s - arc_[k]) / (arc_[k + 1] - arc_[k]);
        auto residual = [&](double u) {
            return std::make_pair(arc_[k] + integrate(lo, u) - s, speed(u));
        };
        return boost::math::tools::newton_raphson_iterate(residual, guess, lo, hi, 50);
    }

    CurveJet jet(double s) const override {
        const double u0 = raw_parameter(s);
        const CurveJet raw = raw_jet(u0, 3);
        // du/ds = 1/sigma(u); Picard iteration fixes one more Taylor order per pass.
        const Jet inv_speed = reciprocal(sqrt(raw.a.derivative(0) * raw.a.derivative(0) +
                                              raw.b.derivative(0) * raw.b.derivative(0)));
        Jet u(1, 3, u0);
        for (int pass = 0; pass < 4; ++pass) {
            u = integrate_univariate(compose(inv_speed, u.truncated(2)), 3) + u0;
        }
        return {compose(raw.a, u), compose(raw.b, u)};
    }

private:
    double integrate(double lo, double hi) const {
        if (hi <= lo) return 0.0;
        return Quadrature::integrate([this](double u) { return speed(u); }, lo, hi, 0);
    }

    static std::size_t segment(const std::vector<double>& table, double x) {
        auto it = std::upper_bound(table.begin(), table.end(), x);
        const auto k = static_cast<std::size_t>(it - table.begin()) - 1;
        return std::min(k, table.size() - 2);
    }

    std::vector<double> knots_;  // raw parameter
    std::vector<double> arc_;    // t_min + arc length at each knot
};

}  // namespace

UnitSpeedCurve::UnitSpeedCurve(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) { certify(); }

UnitSpeedCurve UnitSpeedCurve::exact(const GeneratingCurve& raw) {
    if (!(raw.t_min < raw.t_max)) throw DomainError("curve domain is empty");
    return UnitSpeedCurve(std::make_shared<const Impl>(raw));
}

double UnitSpeedCurve::t_min() const { return impl_->t_min(); }
double UnitSpeedCurve::t_max() const { return impl_->t_max(); }
const std::string& UnitSpeedCurve::name() const { return impl_->raw().name; }
bool UnitSpeedCurve::reparametrized() const { return impl_->reparametrized(); }
const GeneratingCurve& UnitSpeedCurve::raw() const { return impl_->raw(); }
double UnitSpeedCurve::raw_parameter(double s) const { return impl_->raw_parameter(s); }
double UnitSpeedCurve::arc_parameter(double u) const { return impl_->arc_parameter(u); }

CurveJet UnitSpeedCurve::jet(double t) const {
    if (!(t >= t_min() && t <= t_max())) {
        throw OutOfDomain("t = " + std::to_string(t) + " outside [" + std::to_string(t_min()) + ", " +
                          std::to_string(t_max()) + "]");
    }
    return impl_->jet(t);
}

void UnitSpeedCurve::certify() {
    certificate_ = 0.0;
    const double lo = t_min(), hi = t_max();
    for (int i = 0; i < kCertificateSamples; ++i) {
        const double t = lo + (hi - lo) * (i + 0.5) / kCertificateSamples;
        const CurveJet j = impl_->jet(t);
        if (!(j.a0() > 0.0)) throw DomainError("curve '" + name() + "' leaves the half plane a > 0");
        certificate_ = std::max(certificate_, std::abs(j.a1() * j.a1() + j.b1() * j.b1() - 1.0));
    }
}

CurveJet curve_jet3(const UnitSpeedCurve& curve, double t) { return curve.jet(t); }

double transversality_f(const CurveJet& j) {
    const double f = j.b0() * j.a1() - j.a0() * j.b1();
    if (!(f > 1e-12)) throw TransversalityViolation("f = " + std::to_string(f) + " is not positive");
    return f;
}

double transversality_f(const UnitSpeedCurve& curve, double t) { return transversality_f(curve.jet(t)); }

UnitSpeedCurve arc_length_reparam(const GeneratingCurve& raw) {
    if (!(raw.t_min < raw.t_max)) throw DomainError("curve domain is empty");
    return UnitSpeedCurve(std::make_shared<const ReparamCurve>(raw));
}

PrincipalCurvatures principal_curvatures_rev(const CurveJet& j) {
    const double f = transversality_f(j);
    return {(j.a2() * j.a0() + j.b2() * j.b0()) / f, j.b1() / j.a0()};
}

PrincipalCurvatures principal_curvatures_rev(const UnitSpeedCurve& curve, double t) {
    return principal_curvatures_rev(curve.jet(t));
}

double cutoff_min(const UnitSpeedCurve& curve) {
    return curve.t_min() + 0.05 * (curve.t_max() - curve.t_min());
}

double cutoff_max(const UnitSpeedCurve& curve) {
    return curve.t_max() - 0.05 * (curve.t_max() - curve.t_min());
}

UnitSpeedCurve circle_curve() {
    return UnitSpeedCurve::exact({parse_expr("sin(t)"), parse_expr("cos(t)"), 0.0, M_PI, "circle"});
}

UnitSpeedCurve ellipse_curve(double a) {
    if (!(a > 0.0)) throw DomainError("ellipse semi-axis must be positive");
    GeneratingCurve raw{Expr(), parse_expr("cos(t)"), 0.0, M_PI, ""};
    raw.a = parse_expr(Expr::number(a).to_string() + " * sin(t)");
    std::ostringstream name;
    name << "ellipse:" << a;
    raw.name = name.str();
    return arc_length_reparam(raw);
}

UnitSpeedCurve oval_curve() {
    return arc_length_reparam({parse_expr("(1 + 0.2 * cos(2 * t)) * sin(t)"),
                               parse_expr("(1 + 0.2 * cos(2 * t)) * cos(t)"), 0.0, M_PI, "oval"});
}

UnitSpeedCurve parse_curve_json(std::string_view text, const std::string& name) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(name + ": " + e.what());
    }
    try {
        GeneratingCurve raw{parse_expr(doc.at("a_expr").get<std::string>()),
                            parse_expr(doc.at("b_expr").get<std::string>()), doc.at("t_min").get<double>(),
                            doc.at("t_max").get<double>(), name};
        for (const Expr* e : {&raw.a, &raw.b}) {
            for (const auto& v : e->free_variables()) {
                if (v != "t") throw ConfigError(name + ": curve expressions may only use t, found '" + v + "'");
            }
        }
        if (!(raw.t_min < raw.t_max)) throw ConfigError(name + ": t_min must be below t_max");
        const bool unit = doc.value("unit_speed", false);
        UnitSpeedCurve c = unit ? UnitSpeedCurve::exact(raw) : arc_length_reparam(raw);
        if (unit && c.certified_tolerance() > 1e-8) {
            throw ConfigError(name + ": declared unit speed but |a'^2 + b'^2 - 1| reaches " +
                              std::to_string(c.certified_tolerance()));
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(name + ": " + e.what());
    }
}

UnitSpeedCurve load_curve_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open curve file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_curve_json(buf.str(), path.stem().string());
}

}  // namespace surflap
