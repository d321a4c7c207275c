#pragma once

// Central finite differences with one Richardson step; the independent
// derivative oracle for everything the jet engine computes.

#include <functional>
#include <span>
#include <vector>

namespace surflap {

using ScalarFunction = std::function<double(std::span<const double>)>;

struct FdEstimate {
    double value = 0.0;
    double error = 0.0;  // |extrapolated - fine-step estimate|
};

struct FdOptions {
    /// Base step; 0 selects 1e-4 * max(1, |point|).
    double step = 0.0;
};

/// d/ds f(point + s * direction) (order 1) or d^2/ds^2 (order 2) at s = 0,
/// from steps h and h/2 combined by Richardson extrapolation.
FdEstimate fd_directional(const ScalarFunction& f, std::span<const double> point,
                          std::span<const double> direction, int order,
                          FdOptions options = {});

}  // namespace surflap
