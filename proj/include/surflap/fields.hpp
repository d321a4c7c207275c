#pragma once

// Tangent fields, their ambient extensions, and 1-forms.
//
// Fields on surfaces of revolution are authored in frame components
// (E1, E2, N). On n-spheres the builtin fields are closed-form Cartesian.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "surflap/expr.hpp"
#include "surflap/surface.hpp"

namespace surflap {

/// v = v1 E1 + v2 E2 in (t, theta). With a stream function psi the
/// components are v1 = -psi_theta / a, v2 = psi_t, which is divergence free.
struct TangentField {
    Expr v1;
    Expr v2;
    std::optional<Expr> psi;
    std::string name;
};

TangentField tangent_field(const std::string& v1, const std::string& v2, std::string name = "");
TangentField azimuthal_field(const std::string& g);
TangentField stream_field(const std::string& psi, std::string name = "");

struct ExtensionStrategy {
    enum class Kind { Homogeneous, Custom, NormalCorrected };
    Kind kind = Kind::Homogeneous;
    double k = 1.0;                // homogeneous: v^i(rho, t, theta) = rho^k v^i(t, theta), v^3 = 0
                                   // normal-corrected: same, with v^3 = -(rho - 1) f'(t) v^1
    std::array<Expr, 3> custom{};  // custom: frame components in rho, t, theta

    std::string label() const;
};

ExtensionStrategy homogeneous(double k);
/// Ambient divergence vanishes on S whenever the field is divergence free on S.
ExtensionStrategy normal_corrected(double k);
ExtensionStrategy custom_extension(const std::string& v1, const std::string& v2, const std::string& v3);

struct AmbientField {
    TangentField base;
    ExtensionStrategy ext;

    std::string label() const { return base.name + "/" + ext.label(); }
};

/// Tangent components as jets over the variables of t/theta; `a` is a(t) on
/// the same variables. Stream fields need jets of order <= 2.
std::array<Jet, 2> tangent_jets(const TangentField& tf, const Jet& t, const Jet& theta, const Jet& a);

/// Frame components of the ambient field over the chart jets.
std::array<Jet, 3> ambient_jets(const AmbientField& af, const RevolutionJets& j);
Vec3 ambient_values(const AmbientField& af, const CurveJet& cj, double rho, double t, double theta);

/// Builds the extension; verifies the restriction at 20 points of the surface.
AmbientField extend(const SurfaceOfRevolution& s, const TangentField& tf, const ExtensionStrategy& strategy);

// n-sphere builtin fields, Cartesian.
enum class SphereFieldKind { Killing, Conformal };

struct SphereField {
    SphereFieldKind kind = SphereFieldKind::Killing;
    double k = 1.0;  // homogeneous degree of the frame components in rho = |x| / r

    std::string name() const;
    std::string label() const;
};

/// Cartesian components at Cartesian jets x (size n + 1).
std::vector<Jet> sphere_field_jets(const NSphere& s, const SphereField& f, const std::vector<Jet>& x);
std::vector<double> sphere_field_values(const NSphere& s, const SphereField& f, const std::vector<double>& x);

/// Covector in the dual of an orthonormal frame.
struct OneForm {
    std::vector<double> c;
};

OneForm flat(const std::vector<double>& v);
std::vector<double> sharp(const OneForm& w);
double pairing(const OneForm& w, const std::vector<double>& X);

/// Tangential part of an ambient vector given in frame components (E1, E2, N).
Vec3 project_tangent(const Vec3& v);
/// Tangential part of a Cartesian vector at a frame point.
Vec3 project_tangent(const FramePoint& fp, const Vec3& v_cartesian);
/// Pullback of a covector on R^3 (frame components) to the surface.
OneForm pullback(const OneForm& w);
/// Cartesian vector from frame components.
Vec3 to_cartesian(const FramePoint& fp, const Vec3& v);

enum class Where { Ambient, Surface };

/// Divergence at chart point (rho, t, theta); Surface uses the tangent part
/// and requires rho = 1.
double divergence(const SurfaceOfRevolution& s, const AmbientField& af, Where where, double rho, double t,
                  double theta);

struct DivFreePair {
    TangentField tangent;
    AmbientField ambient;
    double k = 1.0;
    double surface_residual = 0.0;  // max |div_S| over the check points
    double ambient_residual = 0.0;  // max |div| on S
    double collar_residual = 0.0;   // max |div| for |rho - 1| <= 0.1
};

/// Extension whose ambient divergence vanishes on S: a homogeneous degree
/// that also clears the collar when one exists, else normal_corrected(1).
DivFreePair make_divfree_pair(const SurfaceOfRevolution& s, const std::string& g);
DivFreePair make_divfree_pair(const SurfaceOfRevolution& s, const TangentField& tf);

}  // namespace surflap
