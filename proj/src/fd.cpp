#include "surflap/fd.hpp"

#include <algorithm>
#include <cmath>

#include "surflap/errors.hpp"

namespace surflap {

FdEstimate fd_directional(const ScalarFunction& f, std::span<const double> point,
                          std::span<const double> direction, int order, FdOptions options) {
    if (order != 1 && order != 2) throw DomainError("finite differences support order 1 or 2");
    if (point.size() != direction.size()) throw DomainError("point/direction size mismatch");
    double dnorm = 0.0, pnorm = 0.0;
    for (std::size_t i = 0; i < point.size(); ++i) {
        dnorm += direction[i] * direction[i];
        pnorm += point[i] * point[i];
    }
    if (!(dnorm > 0.0)) throw DomainError("zero direction");
    const double h = options.step > 0.0 ? options.step : 1e-4 * std::max(1.0, std::sqrt(pnorm));
    if (h < 1e-10) throw StepUnderflow("finite-difference step below 1e-10");

    std::vector<double> x(point.begin(), point.end());
    auto at = [&](double s) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = point[i] + s * direction[i];
        return f(x);
    };
    const double f0 = order == 2 ? at(0.0) : 0.0;
    auto estimate = [&](double step) {
        const double fp = at(step), fm = at(-step);
        return order == 1 ? (fp - fm) / (2.0 * step) : (fp - 2.0 * f0 + fm) / (step * step);
    };
    const double coarse = estimate(h);
    const double fine = estimate(h / 2.0);
    // both stencils are even in the step, so the leading error is O(h^2)
    const double extrapolated = (4.0 * fine - coarse) / 3.0;
    return {extrapolated, std::abs(extrapolated - fine)};
}

}  // namespace surflap
