#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature on finite intervals.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace colldec {

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 0.0;
    std::size_t max_intervals = 20000;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    std::size_t intervals = 0;
    bool converged = false;
};

class QuadratureError : public std::runtime_error {
public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

using Integrand = std::function<double(double)>;

/// Integrates f over [a, b]. Bisection starts from the partition given by
/// `breakpoints` (interior points, ascending) so that oscillatory integrands
/// can be pre-split at their natural scale.
QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    const QuadratureOptions& opts = {},
                                    std::span<const double> breakpoints = {});

/// Same as integrate_adaptive but throws QuadratureError when the tolerance
/// is not met within max_intervals.
double integrate(const Integrand& f, double a, double b, const QuadratureOptions& opts = {},
                 std::span<const double> breakpoints = {});

}  // namespace colldec
