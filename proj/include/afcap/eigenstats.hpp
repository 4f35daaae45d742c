// SPDX-License-Identifier: Apache-2.0
// Part of afcap, an ergodic-capacity analysis toolkit for amplify-and-forward
// MIMO dual-hop relay channels.

#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "afcap/logscaled.hpp"
#include "afcap/matrix.hpp"
#include "afcap/system_config.hpp"

namespace afcap {

/// Conditional spectral formulas divide by Vandermonde products, so they are
/// only defined for spectra with distinct entries.
class degenerate_spectrum_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One term c * lambda^{half_power/2} * e^{-decay*lambda} * K_nu(2 sqrt(lambda))
/// of an eigenvalue density. The lambda exponent is half_power/2; bessel_order
/// stores |nu| since K is symmetric in its order.
struct BesselTerm {
    LogScaled coeff;
    int half_power = 0;
    int bessel_order = 0;
};

/// Finite sum of Bessel terms sharing one exponential decay rate.
struct BesselTermSeries {
    double decay_rate = 0.0;
    std::vector<BesselTerm> terms;
};

/// Density of an unordered nonzero eigenvalue of the cascaded relay matrix.
/// Series coefficients are assembled in signed log-scaled form; cofactors of
/// the q x q moment matrix provide the signs.
BesselTermSeries unordered_pdf(const SystemConfig& cfg);

/// The a -> 0 limit of unordered_pdf: the Rayleigh-product eigenvalue
/// density with decay_rate 0.
BesselTermSeries rayleigh_product_pdf(int n_s, int q, int p);

/// Pointwise evaluation of a series at lambda > 0. Works entirely in log
/// space so large Bessel orders at small arguments cannot overflow. Negative
/// round-off above -1e-9 is clamped to zero; a larger negative excursion
/// signals a coefficient-assembly bug and throws.
double pdf_eval(const BesselTermSeries& series, double lambda);

/// integral_0^inf w(lambda) series(lambda) dlambda, by default under the
/// substitution lambda = u^2 so the integrand decays like e^{-2u}; ln
/// w(lambda) is supplied (may return -inf where w vanishes; w must be
/// nonnegative). Each term is integrated in log space.
double series_weighted_integral(const BesselTermSeries& series,
                                const std::function<double(double)>& log_weight,
                                double rel_tol = 1e-9, int max_subdivisions = 4000,
                                bool sqrt_substitution = true);

/// Total mass of the series; 1 for a proper density.
double series_mass(const BesselTermSeries& series, double rel_tol = 1e-8);

/// Density of an unordered beta = lambda^2/(1 + a lambda^2) eigenvalue of L.
/// Support is [0, 1/a); returns 0 above it, throws for beta < 0.
double unordered_beta_pdf(double beta, const SystemConfig& cfg);

/// Density of an unordered eigenvalue of the cascade conditioned on the
/// spectrum betas (strictly increasing, pairwise gaps >= 1e-9).
double conditional_unordered_pdf(std::span<const double> betas, int n_s, double lambda);

/// E det(I + (rho a / n_s) Htilde^dag L Htilde), unconditional.
double expected_det(const SystemConfig& cfg);
LogScaled expected_det_log(const SystemConfig& cfg);

/// Conditional expected determinant given the spectrum betas, with
/// c = rho a / n_s.
double conditional_expected_det(std::span<const double> betas, int n_s, double c);

/// E ln det(Phi) with Phi = Htilde^dag L Htilde for q >= n_s and
/// L Htilde Htilde^dag for q < n_s; natural-log units.
double expected_logdet(const SystemConfig& cfg);

/// Conditional version given the spectrum betas.
double conditional_expected_logdet(std::span<const double> betas, int n_s);

// Internals shared with the capacity module (the high-SNR offset reuses the
// log-determinant machinery with a different scale parameter).

/// psi-sum plus normalized determinant sum of E ln det(Phi) for dimensions
/// (n_s, q, p) and scale parameter a.
double expected_logdet_parts(int n_s, int q, int p, double a);

/// The q = s special form of the same quantity, via the quadruple
/// combinatorial sum. Only valid when min(n_s, q) = q.
double expected_logdet_qs_form(int n_s, int q, int p, double a);

/// integral_0^inf t^d (1 + a t)^e e^{-t} dt extended to e = -1, where the
/// integral evaluates through the scaled exponential integral instead of the
/// finite binomial sum.
LogScaled moment_u(int d, int e, double a);

}  // namespace afcap
