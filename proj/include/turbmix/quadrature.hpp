#pragma once

#include <functional>

namespace turbmix {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b].
/// Subdivides the interval with the largest error estimate until
/// sum of errors <= max(abs_tol, rel_tol * |value|) or the interval
/// budget is exhausted.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol = 0.0,
                           double rel_tol = 1e-10, int max_intervals = 4000);

/// Integration of f over [a, inf). Proceeds over geometrically growing
/// panels starting at width `scale`, then adds a power-law tail estimate
/// from the local log-log slope at the last panel edge. Intended for
/// integrands decaying at least like x^{-1-eps}.
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f,
                                       double a, double scale,
                                       double rel_tol = 1e-10);

}  // namespace turbmix
