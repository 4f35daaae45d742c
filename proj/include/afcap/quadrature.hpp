// SPDX-License-Identifier: Apache-2.0
// Part of afcap, an ergodic-capacity analysis toolkit for amplify-and-forward
// MIMO dual-hop relay channels.

#pragma once

#include <functional>
#include <stdexcept>

namespace afcap {

/// Tolerances and budget for the capacity integrals.
struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;
    int max_subdivisions = 4000;
    enum class Transform { sqrt_substitution, none } transform = Transform::sqrt_substitution;
};

/// Thrown when the subdivision budget runs out before the tolerance is met.
/// Carries the error estimate that was actually achieved.
class quadrature_error : public std::runtime_error {
public:
    quadrature_error(const std::string& msg, double achieved)
        : std::runtime_error(msg), achieved_error(achieved) {}
    double achieved_error;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration of f on [a, b].
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, double abs_tol, int max_subdivisions);

/// Integrates exp(log_f(u)) du on [lo, hi], where log_f returns the natural
/// log of a nonnegative integrand (-inf where it vanishes). The integrand is
/// rescaled by its sampled peak before adaptive integration, so integrals
/// whose values leave the double range still come back as a valid log.
/// Returns ln of the integral (-inf for a zero integral).
double integrate_log(const std::function<double(double)>& log_f, double lo, double hi,
                     double rel_tol, int max_subdivisions);

}  // namespace afcap
