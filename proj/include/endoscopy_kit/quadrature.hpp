#pragma once

#include <complex>
#include <functional>

namespace ek {

struct QuadratureResult {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;        ///< accumulated error estimate
    long long evaluations = 0; ///< integrand evaluations performed
    bool converged = false;
};

/// Adaptive Gauss-Kronrod (7-15) integration of a complex-valued integrand
/// over the finite interval [a, b]: recursive bisection until each panel's
/// Kronrod-minus-Gauss estimate is below its share of the tolerance.
/// Deterministic for fixed inputs (ordered reduction).
QuadratureResult integrate(const std::function<std::complex<double>(double)>& f,
                           double a, double b,
                           double abs_tol = 1e-12, double rel_tol = 1e-10,
                           int max_depth = 28);

/// Iterated 2-d integration over [ax, bx] x [ay, by]: an adaptive outer
/// pass whose integrand is an adaptive inner pass with a tightened budget.
QuadratureResult integrate2d(
    const std::function<std::complex<double>(double, double)>& f,
    double ax, double bx, double ay, double by,
    double abs_tol = 1e-9, double rel_tol = 1e-8, int max_depth = 20);

} // namespace ek
