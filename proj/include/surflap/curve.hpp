#pragma once

// Generating curves t -> (a(t), b(t)) of surfaces of revolution.

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "surflap/expr.hpp"
#include "surflap/jet.hpp"

namespace surflap {

/// Raw plane curve; both expressions use the variable `t`.
struct GeneratingCurve {
    Expr a;
    Expr b;
    double t_min = 0.0;
    double t_max = 0.0;
    std::string name;
};

/// Order-3 univariate jets of (a, b) at one parameter value.
struct CurveJet {
    Jet a;
    Jet b;

    double a0() const { return a.value(); }
    double b0() const { return b.value(); }
    double a1() const { return a.d(0); }
    double b1() const { return b.d(0); }
    double a2() const { return a.d(0, 0); }
    double b2() const { return b.d(0, 0); }
    double a3() const { return a.d(0, 0, 0); }
    double b3() const { return b.d(0, 0, 0); }
};

/// A unit-speed curve, either given directly or as an arc-length wrapper
/// around a raw curve. Immutable; copies share state.
class UnitSpeedCurve {
public:
    class Impl;

    UnitSpeedCurve() = default;
    explicit UnitSpeedCurve(std::shared_ptr<const Impl> impl);

    /// Trusts the expressions to be unit speed; measures the certificate.
    static UnitSpeedCurve exact(const GeneratingCurve& raw);

    double t_min() const;
    double t_max() const;
    const std::string& name() const;
    /// max |a'^2 + b'^2 - 1| over 1000 interior samples.
    double certified_tolerance() const { return certificate_; }
    bool reparametrized() const;
    const GeneratingCurve& raw() const;

    /// Raw parameter at arc-length parameter s (identity for exact curves).
    double raw_parameter(double s) const;
    /// Arc-length parameter of raw parameter u.
    double arc_parameter(double u) const;

    CurveJet jet(double t) const;

private:
    friend UnitSpeedCurve arc_length_reparam(const GeneratingCurve& raw);
    void certify();

    std::shared_ptr<const Impl> impl_;
    double certificate_ = 0.0;
};

/// Evaluates (a, b) and derivatives to order 3. Throws OutOfDomain.
CurveJet curve_jet3(const UnitSpeedCurve& curve, double t);

/// f = b a' - a b'; throws TransversalityViolation when f <= 1e-12.
double transversality_f(const UnitSpeedCurve& curve, double t);
double transversality_f(const CurveJet& j);

/// Arc-length reparametrization. The new parameter starts at raw.t_min, so a
/// curve that is already unit speed is reparametrized by the identity.
UnitSpeedCurve arc_length_reparam(const GeneratingCurve& raw);

struct PrincipalCurvatures {
    double k1;  // meridian direction, E1
    double k2;  // parallel direction, E2
};

PrincipalCurvatures principal_curvatures_rev(const UnitSpeedCurve& curve, double t);
PrincipalCurvatures principal_curvatures_rev(const CurveJet& j);

/// Parameter values sampled away from the ends by 0.05 |I|.
double cutoff_min(const UnitSpeedCurve& curve);
double cutoff_max(const UnitSpeedCurve& curve);

// Builtin profiles. The ellipse and the oval are reparametrized on creation.
UnitSpeedCurve circle_curve();
UnitSpeedCurve ellipse_curve(double a);
UnitSpeedCurve oval_curve();

/// JSON with a_expr, b_expr, t_min, t_max, unit_speed.
UnitSpeedCurve parse_curve_json(std::string_view text, const std::string& name = "curve");
UnitSpeedCurve load_curve_file(const std::filesystem::path& path);

}  // namespace surflap
