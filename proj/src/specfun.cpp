// SPDX-License-Identifier: Apache-2.0
// Part of afcap, an ergodic-capacity analysis toolkit for amplify-and-forward
// MIMO dual-hop relay channels.

#include "afcap/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace afcap {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

}  // namespace

double ln_gamma(double x) {
    require(x > 0.0, "ln_gamma: argument must be positive");
    // Lanczos approximation, g = 7, 9 coefficients.
    static const double c[9] = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // reflection keeps the series argument away from 0
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) -
               ln_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double a = c[0];
    for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
           std::log(a);
}

double digamma(double x) {
    require(x > 0.0, "digamma: argument must be positive");
    double result = 0.0;
    while (x < 16.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    // asymptotic expansion, |error| < 1e-16 for x >= 16
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv -
              inv2 * (1.0 / 12.0 -
                      inv2 * (1.0 / 120.0 -
                              inv2 * (1.0 / 252.0 -
                                      inv2 * (1.0 / 240.0 -
                                              inv2 * (1.0 / 132.0 -
                                                      inv2 * (691.0 / 32760.0 -
                                                              inv2 * (1.0 / 12.0)))))));
    return result;
}

double ln_binom(int n, int k) {
    require(k >= 0 && k <= n, "ln_binom: need 0 <= k <= n");
    return ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0);
}

namespace {

// Scaled K0, K1 for x < 2 from the ascending series, then multiplied by e^x.
void bessel_k01_series(double x, double& k0s, double& k1s) {
    const double q = 0.25 * x * x;
    const double lh = std::log(0.5 * x);
    // I0, I1 and the companion log-series sums
    double term0 = 1.0, i0 = 1.0, s0 = 0.0;
    double term1 = 1.0, i1 = 1.0, s1 = 0.0;  // I1 = (x/2) * i1
    double hk = 0.0;                          // harmonic number H_k
    for (int k = 1; k < 60; ++k) {
        term0 *= q / (static_cast<double>(k) * k);
        term1 *= q / (static_cast<double>(k) * (k + 1.0));
        hk += 1.0 / k;
        i0 += term0;
        s0 += term0 * hk;
        i1 += term1;
        s1 += term1 * (hk + hk + 1.0 / (k + 1.0));
        if (term0 < 1e-19 * i0 && term1 < 1e-19 * i1) break;
    }
    const double k0 = -(lh + euler_gamma) * i0 + s0;
    // K1(x) = 1/x + ln(x/2) I1(x) - (x/4) sum_k [psi(k+1)+psi(k+2)] q^k/(k!(k+1)!),
    // with psi(k+1)+psi(k+2) = -2*euler_gamma + 2H_k + 1/(k+1) folded into s1;
    // the k = 0 term of that sum is exactly 1.
    const double k1 =
        1.0 / x + (lh + euler_gamma) * (0.5 * x) * i1 - 0.25 * x * (1.0 + s1);
    const double ex = std::exp(x);
    k0s = k0 * ex;
    k1s = k1 * ex;
}

// Scaled K0, K1 for x >= 2 via Steed's continued fraction (CF2 at mu = 0).
void bessel_k01_cf(double x, double& k0s, double& k1s) {
    constexpr double eps = 1e-16;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;  // 1/4 - mu^2 with mu = 0
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i < 10000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) <= eps) break;
    }
    h = a1 * h;
    k0s = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
    k1s = k0s * (x + 0.5 - h) * (1.0 / x);
}

void bessel_k01_scaled(double x, double& k0s, double& k1s) {
    if (x < 2.0)
        bessel_k01_series(x, k0s, k1s);
    else
        bessel_k01_cf(x, k0s, k1s);
}

}  // namespace

LogScaled bessel_k_scaled_log(int nu, double x) {
    require(x > 0.0, "bessel_k_scaled: argument must be positive");
    require(nu >= 0, "bessel_k_scaled: order must be a nonnegative integer");
    double k0s, k1s;
    bessel_k01_scaled(x, k0s, k1s);
    LogScaled km = LogScaled::from_value(k0s);
    if (nu == 0) return km;
    LogScaled k = LogScaled::from_value(k1s);
    // upward recurrence K_{n+1} = K_{n-1} + (2n/x) K_n; all terms positive,
    // so it runs safely in log space for orders where K overflows a double
    for (int n = 1; n < nu; ++n) {
        const LogScaled next = km + LogScaled::from_value(2.0 * n / x) * k;
        km = k;
        k = next;
    }
    return k;
}

double bessel_k_scaled(int nu, double x) {
    return bessel_k_scaled_log(nu, x).value();
}

double expint_scaled(int order, double x) {
    require(order >= 1, "expint_scaled: order must be >= 1");
    require(x > 0.0, "expint_scaled: argument must be positive");
    constexpr double eps = 1e-16;
    if (x > 1.0) {
        // Lentz continued fraction for e^x E_n(x)
        const int n = order;
        double b = x + n;
        double c = 1e308;
        double d = 1.0 / b;
        double h = d;
        for (int i = 1; i < 10000; ++i) {
            const double a = -static_cast<double>(i) * (n - 1 + i);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            const double del = c * d;
            h *= del;
            if (std::fabs(del - 1.0) <= eps) break;
        }
        return h;
    }
    // x <= 1: ascending series for E_n, then scale by e^x
    double en;
    if (order == 1) {
        en = -euler_gamma - std::log(x);
        double term = 1.0;
        for (int k = 1; k < 60; ++k) {
            term *= -x / k;
            const double add = -term / k;
            en += add;
            if (std::fabs(add) < eps * std::fabs(en)) break;
        }
    } else {
        const int n = order;
        const double nm1 = n - 1.0;
        en = (digamma(static_cast<double>(n)) - std::log(x));
        double fact = 1.0;
        for (int k = 1; k <= n - 1; ++k) fact *= -x / k;
        en *= fact;  // (-x)^{n-1}/(n-1)! * (psi(n) - ln x)
        double term = 1.0;
        for (int k = 0; k < 80; ++k) {
            if (k > 0) term *= -x / k;
            if (k == n - 1) continue;
            const double add = -term / (k - nm1);
            en += add;
            if (k > n && std::fabs(add) < eps * std::fabs(en)) break;
        }
    }
    return en * std::exp(x);
}

// The 1/l! is required for the squared-Laguerre expansion behind this
// coefficient; without it the eigenvalue densities it builds do not
// normalize.
double coeff_A(int i, int j, int l, int kappa1, int kappa2) {
    require(i >= 0 && j >= 0 && j <= i, "coeff_A: need 0 <= j <= i");
    require(l >= 0 && l <= 2 * j, "coeff_A: need 0 <= l <= 2j");
    require(kappa1 >= kappa2, "coeff_A: need kappa1 >= kappa2");
    const double lg = ln_binom(2 * i - 2 * j, i - j) +
                      ln_binom(2 * j + 2 * kappa1 - 2 * kappa2, 2 * j - l) +
                      ln_gamma(2.0 * j + 1.0) - (2 * i - l) * std::log(2.0) -
                      ln_gamma(kappa1 - kappa2 + j + 1.0) - ln_gamma(j + 1.0) -
                      ln_gamma(l + 1.0);
    const double v = std::exp(lg);
    return (l % 2 == 0) ? v : -v;
}

LogScaled moment_integral(int d, int e, double a) {
    require(d >= 0 && e >= 0, "moment_integral: need d >= 0 and e >= 0");
    require(a > 0.0, "moment_integral: need a > 0");
    const double la = std::log(a);
    LogSum acc;
    for (int i = 0; i <= e; ++i)
        acc.add_log(ln_binom(e, i) + i * la + ln_gamma(d + i + 1.0), +1);
    return acc.total();
}

LogScaled varsigma_log(int t, int p, int q, double a) {
    require(p >= q && q >= 1, "varsigma: need p >= q >= 1");
    require(2 * q - t >= 0, "varsigma: need t <= 2q");
    require(p - q + t - 1 >= 1, "varsigma: Gamma/psi argument would be <= 0");
    require(a > 0.0, "varsigma: need a > 0");
    const double inv_a = 1.0 / a;
    const double la = std::log(a);
    const int e = 2 * q - t;
    // shared partial sums of g_l(1/a): the inner sum runs to p+q-i-2
    double gsum = 0.0;
    for (int l = 0; l <= p + q - 2; ++l) gsum += gl_aux(l, inv_a);
    LogSum acc;
    double gtail = gsum;
    for (int i = 0; i <= e; ++i) {
        const int arg = p + q - i - 1;  // >= p - q + t - 1 >= 1
        if (i > 0) gtail -= gl_aux(arg, inv_a);  // drop g_{p+q-i-1}
        const double inner = digamma(static_cast<double>(arg)) - gtail;
        if (inner == 0.0) continue;
        const double lm = (e - i) * la + ln_gamma(static_cast<double>(arg)) +
                          ln_binom(e, i) + std::log(std::fabs(inner));
        acc.add_log(lm, inner > 0.0 ? +1 : -1);
    }
    return acc.total();
}

double varsigma(int t, int p, int q, double a) { return varsigma_log(t, p, q, a).value(); }

}  // namespace afcap
