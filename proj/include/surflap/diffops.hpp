#pragma once

// Differential operators at a point, built on jets.
//
// Two independent engines:
//  * FrameContext works in an orthonormal ambient frame {E_alpha} given by
//    its coordinate components, with Christoffels obtained from the
//    structure constants of the frame. Vector fields are component jets in
//    that frame, and every operator lowers the jet order by one.
//  * Chart works with a coordinate metric g_ij and its Christoffels, the
//    textbook route. It is the oracle for the frame engine.
// CartesianOracle differentiates Cartesian components by finite differences.

#include <functional>
#include <span>
#include <vector>

#include "surflap/fields.hpp"
#include "surflap/jet.hpp"
#include "surflap/surface.hpp"

namespace surflap {

/// Components in the ambient orthonormal frame.
using Field = std::vector<Jet>;

std::vector<double> values(const Field& v);

class FrameContext {
public:
    /// Chart (rho, t, theta), frame (E1, E2, N), N = f grad rho at every rho.
    static FrameContext revolution(const CurveJet& cj, double rho, double t, double theta, int order = 2);
    /// Cartesian coordinates and frame; N = x / |x|. Tangent frame is the
    /// projected coordinate basis, a tight frame with sum F_a F_a^T = P.
    static FrameContext cartesian(std::span<const double> x, int order = 2);

    int dim() const { return m_; }
    int order() const { return order_; }
    const Jet& coordinate(int j) const { return x_[j]; }

    Field basis(int alpha) const;
    Field constant(std::span<const double> c) const;
    Field zero() const;
    const Field& normal() const { return normal_; }
    const std::vector<Field>& tangent_frame() const { return tangent_frame_; }

    /// X(phi) for a scalar jet.
    Jet apply(const Field& X, const Jet& phi) const;
    Jet apply(int alpha, const Jet& phi) const;

    /// c^g_{ab} and Gamma^g_{ab} with D_{E_a} E_b = Gamma^g_{ab} E_g.
    const Jet& c(int g, int a, int b) const { return c_[idx(g, a, b)]; }
    const Jet& gamma(int g, int a, int b) const { return gamma_[idx(g, a, b)]; }

    Field cov(const Field& X, const Field& Y) const;
    Field bracket(const Field& X, const Field& Y) const;
    Jet inner(const Field& X, const Field& Y) const;
    /// Y - <Y, N> N
    Field tangent(const Field& Y) const;
    /// Levi-Civita connection of the level hypersurfaces: P(D_X Y).
    Field cov_surface(const Field& X, const Field& Y) const;

private:
    FrameContext() = default;
    void build(std::vector<std::vector<Jet>> A, std::vector<std::vector<Jet>> G);
    int idx(int g, int a, int b) const { return (g * m_ + a) * m_ + b; }

    int m_ = 0;
    int order_ = 2;
    std::vector<Jet> x_;
    std::vector<std::vector<Jet>> A_;  // A_[alpha][j]: E_alpha = A^j d_j
    std::vector<Jet> c_, gamma_;
    Field normal_;
    std::vector<Field> tangent_frame_;
};

Field scale(const Jet& s, const Field& v);
Field operator+(const Field& x, const Field& y);
Field operator-(const Field& x, const Field& y);

/// Frame components of an ambient field on the chart jets of order 2.
Field ambient_field(const AmbientField& af, const CurveJet& cj, double rho, double t, double theta);
/// Cartesian components of a sphere field on the coordinate jets of ctx.
Field sphere_field(const FrameContext& ctx, const NSphere& s, const SphereField& f);

enum class LieForm { Lemma, Relate, Cartan };

/// (L_X w)_alpha for a 1-form with components w_alpha = (w^sharp)^alpha.
Field lie_oneform(const FrameContext& ctx, const Field& X, const Field& w, LieForm form = LieForm::Lemma);

/// Ambient rough Laplacian D*D v through the frame: -sum D_{E_a} D_{E_a} v +
/// sum D_{D_{E_a} E_a} v.
Field bochner_ambient(const FrameContext& ctx, const Field& v);
/// Same trace over the tangent frame with the induced connection.
Field bochner_surface(const FrameContext& ctx, const Field& v);

struct NormalTerms {
    Field nn;      // D_N D_N v
    Field dnn_v;   // D_{D_N N} v
    Field bracket;  // [N, v]
};

NormalTerms thm1_normal_terms(const FrameContext& ctx, const Field& v);

/// Coordinate chart over a subset of jet variables with metric g_ij.
class Chart {
public:
    /// vars[i] is the jet variable carrying coordinate i.
    Chart(std::vector<std::vector<Jet>> g, std::vector<int> vars);

    int dim() const { return static_cast<int>(vars_.size()); }
    const Jet& g(int i, int j) const { return g_[i][j]; }
    const Jet& g_inv(int i, int j) const { return g_inv_[i][j]; }
    const Jet& gamma(int k, int i, int j) const { return gamma_[(k * dim() + i) * dim() + j]; }
    Jet partial(int i, const Jet& phi) const { return phi.derivative(vars_[i]); }

    /// T[i][j] = nabla_i V^j.
    std::vector<std::vector<Jet>> cov(const std::vector<Jet>& V) const;
    /// (nabla* nabla V)^j.
    std::vector<Jet> bochner(const std::vector<Jet>& V) const;
    /// -2 (div Def U)_j for a covector U_j.
    std::vector<Jet> minus_two_div_def(const std::vector<Jet>& U) const;

private:
    std::vector<std::vector<Jet>> g_, g_inv_;
    std::vector<int> vars_;
    std::vector<Jet> gamma_;
};

/// Jets on the surface chart (t, theta) of a surface of revolution.
struct SurfaceChart {
    Jet t, theta, a;
    Chart chart;
    std::array<Jet, 2> v;  // frame components of the tangent field

    /// Coordinate components V^t, V^theta.
    std::vector<Jet> coords() const { return {v[0], v[1] / a}; }
};

SurfaceChart surface_chart(const CurveJet& cj, const TangentField& tf, double t, double theta);

/// Intrinsic operators on a surface of revolution, chart route; results in
/// frame components (E1, E2).
std::array<double, 2> intrinsic_bochner(const SurfaceChart& sc);
std::array<double, 2> intrinsic_cov_deriv(const SurfaceChart& sc, const std::array<double, 2>& X);

/// Ambient rough Laplacian in chart (rho, t, theta) coordinates; frame
/// components (E1, E2, N).
Vec3 ambient_bochner_chart(const RevolutionJets& j, const std::array<Jet, 3>& v);

struct HodgeRoutes {
    std::array<double, 2> bochner;  // nabla* nabla u - Ric u
    std::array<double, 2> def;      // -2 div Def u
    std::array<double, 2> hodge;    // -Delta_H u - 2 Ric u, with -Delta_H = d delta + delta d
    std::array<double, 2> minus_hodge;  // -Delta_H u alone
};

/// The three sides of the Weitzenboeck chain for u = v^flat, frame components.
HodgeRoutes hodge_surface(const CurveJet& cj, const SurfaceChart& sc);

/// Cartesian finite-difference oracle. Fields are Cartesian-valued maps.
using VectorMap = std::function<std::vector<double>(std::span<const double>)>;

class CartesianOracle {
public:
    CartesianOracle(VectorMap field, VectorMap normal, double step = 1e-3);

    static CartesianOracle revolution(const SurfaceOfRevolution& s, const AmbientField& af);
    static CartesianOracle nsphere(const NSphere& s, const SphereField& f);

    std::vector<double> field(std::span<const double> x) const { return field_(x); }
    std::vector<double> normal(std::span<const double> x) const { return normal_(x); }

    /// D_X v with X a fixed vector.
    std::vector<double> cov(std::span<const double> x, std::span<const double> X) const;
    /// D_X N
    std::vector<double> cov_normal(std::span<const double> x, std::span<const double> X) const;
    /// Componentwise -Laplacian of v.
    std::vector<double> rough_laplacian(std::span<const double> x) const;
    /// <L_N v^flat, Y> by the Cartan formula i_N dw + d(i_N w).
    double lie_cartan(std::span<const double> x, std::span<const double> Y) const;

private:
    std::vector<double> directional(const VectorMap& f, std::span<const double> x, std::span<const double> d,
                                    int order) const;

    VectorMap field_, normal_;
    double step_;
};

/// Chart coordinates (rho, t, theta) of a Cartesian point in the cone over
/// the profile.
Vec3 invert_chart(const SurfaceOfRevolution& s, std::span<const double> x);

}  // namespace surflap
