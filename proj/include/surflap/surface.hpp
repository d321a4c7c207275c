#pragma once

// Hypersurfaces: surfaces of revolution in R^3 built from a unit-speed
// profile, and round n-spheres in closed form.
//
// Chart of a surface of revolution: Phi(rho, t, theta) = rho (a cos theta,
// a sin theta, b). The surface is rho = 1. Frame: E1 = d_t / rho,
// E2 = d_theta / (a rho), N = f grad rho, with f = b a' - a b' > 0.
// Shape operator convention: D_X N = -s X, so the unit sphere has s = -I.

#include <array>
#include <filesystem>
#include <string>
#include <variant>

#include "surflap/curve.hpp"
#include "surflap/jet.hpp"

namespace surflap {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using Mat2 = std::array<std::array<double, 2>, 2>;

/// Cutoff on a(t) below which the frame is considered degenerate.
inline constexpr double kPoleCutoff = 1e-6;

struct SurfaceOfRevolution {
    UnitSpeedCurve curve;
    std::string name;
    double ellipsoid_a = 0.0;    // > 0 when the profile is (a sin phi, cos phi)
    double sphere_radius = 0.0;  // > 0 when the profile is a circle about the origin
};

struct NSphere {
    int n = 2;
    double r = 1.0;
    std::string name;
};

class Surface {
public:
    Surface(SurfaceOfRevolution s) : s_(std::move(s)) {}
    Surface(NSphere s) : s_(std::move(s)) {}

    bool is_revolution() const { return std::holds_alternative<SurfaceOfRevolution>(s_); }
    const SurfaceOfRevolution& revolution() const { return std::get<SurfaceOfRevolution>(s_); }
    const NSphere& nsphere() const { return std::get<NSphere>(s_); }
    /// Hypersurface dimension n.
    int dim() const { return is_revolution() ? 2 : nsphere().n; }
    const std::string& name() const;
    /// "revolution", "sphere" (unit-sphere revolution), "ellipsoid" or "nsphere".
    std::string kind() const;
    bool is_unit_sphere() const;

private:
    std::variant<SurfaceOfRevolution, NSphere> s_;
};

SurfaceOfRevolution make_revolution(UnitSpeedCurve curve, std::string name);
/// Profile (r sin(t/r), r cos(t/r)).
SurfaceOfRevolution make_round_sphere(double r = 1.0);
SurfaceOfRevolution make_ellipsoid(double a);
SurfaceOfRevolution make_oval();
NSphere make_nsphere(int n, double r = 1.0);

/// Builtin name (sphere, nsphere:<n>, ellipsoid:<a>, oval) or a JSON file.
Surface surface_from_spec(const std::string& spec);
Surface parse_surface_json(const std::string& text, const std::filesystem::path& base_dir,
                           const std::string& name);

/// Profile quantities lifted to jets in the chart variables (rho, t, theta).
struct RevolutionJets {
    Jet rho, t, theta;
    Jet a, b;    // a(t), b(t)
    Jet da, db;  // a'(t), b'(t)
    Jet f;       // b a' - a b'
    Jet q;       // a a' + b b'
};

/// Chart jets of the given order (<= 2) at (rho, t, theta).
RevolutionJets revolution_jets(const SurfaceOfRevolution& s, double rho, double t, double theta,
                               int order = 2);
RevolutionJets revolution_jets(const CurveJet& cj, double rho, double t, double theta, int order = 2);

struct MetricBlocks {
    Mat3 g;      // (rho, t, theta)
    Mat3 g_inv;
};

MetricBlocks metric_blocks(const SurfaceOfRevolution& s, double rho, double t);

struct FramePoint {
    Vec3 p{};
    Vec3 E1{}, E2{}, N{};
    double rho = 1.0, t = 0.0, theta = 0.0;
    double a = 0.0, f = 0.0;
    double grad_rho_norm = 0.0;  // |grad rho| = 1/f
    double g_rho_t_inv = 0.0;    // g^{rho t}
    Vec3 d_rho{};                // Cartesian d Phi / d rho
};

FramePoint frame_at(const SurfaceOfRevolution& s, double rho, double t, double theta);
FramePoint frame_at(const CurveJet& cj, double rho, double t, double theta);

struct StructureConstants {
    double c3_13 = 0.0;
    double c1_13 = 0.0;
    double c2_23 = 0.0;
    double c2_12 = 0.0;

    /// Full table c[g][a][b] for [E_a, E_b] = c^g_{ab} E_g (0-based).
    std::array<Mat3, 3> table() const;
};

StructureConstants structure_constants_at(const SurfaceOfRevolution& s, double rho, double t);
StructureConstants structure_constants_at(const CurveJet& cj, double rho);

/// G[g][a][b] = Gamma^g_{ab} with D_{E_a} E_b = Gamma^g_{ab} E_g (0-based).
using ChristoffelTable = std::array<Mat3, 3>;

ChristoffelTable christoffel_at(const StructureConstants& sc);

/// s in the (E1, E2) basis at rho = 1, from derivatives of the Cartesian normal.
Mat2 shape_operator(const SurfaceOfRevolution& s, const FramePoint& frame);

struct Eigenpairs {
    double k1, k2;  // sorted: k1 has the eigenvector with larger |E1| component
    std::array<double, 2> v1, v2;
};

/// Symmetric 2x2 eigen-decomposition with the sorting rule above.
Eigenpairs shape_eigen(const Mat2& s);

struct CurvatureScalars {
    double H = 0.0;
    double K = 0.0;
};

CurvatureScalars curvature_scalars(const SurfaceOfRevolution& s, const FramePoint& frame);
CurvatureScalars curvature_scalars(const NSphere& s);

/// Ric v for v in the principal frame; size n.
std::vector<double> ricci_apply(const std::vector<double>& kappas, const std::vector<double>& v);
Vec3 ricci_apply(const SurfaceOfRevolution& s, const FramePoint& frame, const Vec3& v);

/// h(X, Y) = sum kappa^i X^i Y^i for X, Y in (E1, E2) components.
double second_fund_form(const SurfaceOfRevolution& s, const FramePoint& frame, const Vec3& X, const Vec3& Y);

double dot(const Vec3& x, const Vec3& y);
double norm(const Vec3& x);
Vec3 operator+(const Vec3& x, const Vec3& y);
Vec3 operator-(const Vec3& x, const Vec3& y);
Vec3 operator*(double s, const Vec3& x);

}  // namespace surflap
