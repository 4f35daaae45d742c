// SPDX-License-Identifier: Apache-2.0
// Part of afcap, an ergodic-capacity analysis toolkit for amplify-and-forward
// MIMO dual-hop relay channels.

#pragma once

#include "afcap/logscaled.hpp"

namespace afcap {

/// ln Gamma(x) for x > 0. Relative error below 1e-13 on [0.5, 1e6].
/// Throws std::domain_error for x <= 0.
double ln_gamma(double x);

/// Digamma psi(x) for x > 0. For integer n this equals
/// -euler_gamma + sum_{k=1}^{n-1} 1/k.
double digamma(double x);

/// ln of the binomial coefficient C(n, k), 0 <= k <= n.
double ln_binom(int n, int k);

/// e^x * K_nu(x), the scaled modified Bessel function of the second kind,
/// integer order nu >= 0, x > 0. Relative error ~1e-13 on x in [1e-6, 700].
double bessel_k_scaled(int nu, double x);

/// Same quantity in log-scaled form; never overflows, which matters for
/// large orders at small arguments where K_nu itself exceeds double range.
LogScaled bessel_k_scaled_log(int nu, double x);

/// e^x * E_n(x), the scaled exponential integral of order n >= 1, x > 0.
/// Strictly decreasing in x; satisfies e^x E_{n+1}(x) = (1 - x e^x E_n(x))/n.
double expint_scaled(int order, double x);

/// Auxiliary g_l(x) = e^x E_{l+1}(x), l >= 0.
inline double gl_aux(int l, double x) { return expint_scaled(l + 1, x); }

/// Combinatorial coefficient
///   A(i,j,l,k1,k2) = (-1)^l C(2i-2j, i-j) C(2j+2k1-2k2, 2j-l) (2j)!
///                    / (2^{2i-l} (k1-k2+j)! j!)
/// with 0 <= j <= i, 0 <= l <= 2j, k1 >= k2.
double coeff_A(int i, int j, int l, int kappa1, int kappa2);

/// The moment integral
///   integral_0^inf t^d (1+a t)^e e^{-t} dt
///     = sum_{i=0}^{e} C(e,i) a^i Gamma(d+i+1)
/// for integers d >= 0, e >= 0 and a > 0. All terms are positive; the sum is
/// accumulated log-scaled.
LogScaled moment_integral(int d, int e, double a);

/// The auxiliary log-moment sum
///   varsigma_t(a) = sum_{i=0}^{2q-t} a^{2q-t-i} C(2q-t, i) Gamma(p+q-i-1)
///                   * ( psi(p+q-i-1) - sum_{l=0}^{p+q-i-2} g_l(1/a) )
/// equal to integral_0^{1/a} u^{p-q+t-2} (1-au)^{-(p+q)} e^{-u/(1-au)} ln u du.
/// Requires 2q - t >= 0, p >= q >= 1 and all Gamma/psi arguments >= 1.
LogScaled varsigma_log(int t, int p, int q, double a);
double varsigma(int t, int p, int q, double a);

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

}  // namespace afcap
