#pragma once

#include <optional>
#include <string>
#include <vector>

#include "surflap/diffops.hpp"
#include "surflap/verify.hpp"

namespace surflap::detail {

struct Eval {
    Terms terms;
    std::vector<double> lhs, rhs;
};

struct RevInput {
    const SurfaceOfRevolution* s = nullptr;
    const AmbientField* af = nullptr;  // null for identities without a field
    const CurveJet* cj = nullptr;      // cached profile jet at t
    double k = 0.0;                    // homogeneous degree, when homogeneous
    double t = 0.0, theta = 0.0;
};

struct SphInput {
    const NSphere* s = nullptr;
    SphereField f;
    double t = 0.0, theta = 0.0;
};

Eval evaluate(const std::string& id, const RevInput& in);
Eval evaluate(const std::string& id, const SphInput& in);

/// Finite-difference side against the frame side of the same quantity.
std::optional<Eval> evaluate_fd(const std::string& id, const RevInput& in, const CartesianOracle& oracle);
std::optional<Eval> evaluate_fd(const std::string& id, const SphInput& in, const CartesianOracle& oracle);

/// {surface, ambient on S, ambient max over the collar |rho - 1| = 0.1}
std::vector<double> divergences(const RevInput& in);
std::vector<double> divergences(const SphInput& in);

std::vector<double> nsphere_point(const NSphere& s, double t, double theta);

}  // namespace surflap::detail
