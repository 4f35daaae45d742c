// SPDX-License-Identifier: Apache-2.0
// Part of afcap, an ergodic-capacity analysis toolkit for amplify-and-forward
// MIMO dual-hop relay channels.

#include "afcap/eigenstats.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "afcap/quadrature.hpp"
#include "afcap/specfun.hpp"

namespace afcap {

namespace {

constexpr double kMinGap = 1e-9;

void check_spectrum(std::span<const double> betas) {
    if (betas.empty()) throw std::invalid_argument("spectrum must be nonempty");
    if (!(betas[0] > 0.0))
        throw degenerate_spectrum_error("spectrum entries must be positive");
    for (size_t i = 1; i < betas.size(); ++i)
        if (!(betas[i] - betas[i - 1] >= kMinGap))
            throw degenerate_spectrum_error(
                "spectrum entries must be strictly increasing with gaps >= 1e-9");
}

// Collects (half_power, bessel_order) -> signed coefficient sum, so terms
// produced by different cofactors merge before evaluation.
class TermTable {
public:
    void add(int half_power, int order, const LogScaled& c) {
        sums_[{half_power, order}].add(c);
    }
    std::vector<BesselTerm> build() const {
        std::vector<BesselTerm> out;
        out.reserve(sums_.size());
        for (const auto& [key, acc] : sums_) {
            const LogScaled c = acc.total();
            if (c.sign != 0) out.push_back({c, key.first, key.second});
        }
        return out;
    }

private:
    std::map<std::pair<int, int>, LogSum> sums_;
};

}  // namespace

LogScaled moment_u(int d, int e, double a) {
    if (e >= 0) return moment_integral(d, e, a);
    if (e == -1) {
        if (d < 0 || !(a > 0.0)) throw std::domain_error("moment_u: need d >= 0, a > 0");
        return LogScaled::from_log(
            ln_gamma(d + 1.0) + std::log(gl_aux(d, 1.0 / a)) - std::log(a), +1);
    }
    throw std::domain_error("moment_u: exponent e < -1 not supported");
}

BesselTermSeries unordered_pdf(const SystemConfig& cfg) {
    cfg.validate();
    const int q = cfg.q(), p = cfg.p(), s = cfg.s(), ns = cfg.n_s;
    const double a = cfg.a();
    const double la = std::log(a);
    const LogScaled norm = cfg.normalization();

    LogMatrix g(q, q);
    for (int m = 1; m <= q; ++m)
        for (int n = 1; n <= q; ++n)
            g(m - 1, n - 1) = moment_integral(p - q + m + n - 2, 2 * q - m - n, a);

    // The sum of a column's cofactors against any vector is the determinant
    // with that column replaced. Evaluating each (k, i) coefficient as one
    // pivoted determinant keeps the heavy cofactor cancellation inside the
    // elimination, which survives far larger a and p than the expanded sum.
    TermTable table;
    for (int k = q - s + 1; k <= q; ++k) {
        const LogScaled pre = LogScaled::from_log(
            std::log(2.0) + norm.log_mag - std::log(double(s)) - ln_gamma(ns - q + k), +1);
        for (int i = 0; i <= q + ns - 1; ++i) {
            LogMatrix m(q, q);
            for (int r = 1; r <= q; ++r)
                for (int n = 1; n <= q; ++n)
                    m(r - 1, n - 1) =
                        (n == k) ? ((i <= q + ns - r)
                                        ? LogScaled::from_log(ln_binom(q + ns - r, i) +
                                                                  (q + ns - r - i) * la,
                                                              +1)
                                        : LogScaled::zero())
                                 : g(r - 1, n - 1);
            const LogScaled c = pre * det_scaled(m);
            if (c.sign == 0) continue;
            table.add(2 * ns + 2 * k + p - q - i - 3, std::abs(p + q - i - 1), c);
        }
    }
    return {a, table.build()};
}

BesselTermSeries rayleigh_product_pdf(int n_s, int q, int p) {
    if (n_s < 1 || q < 1 || p < q)
        throw std::invalid_argument("rayleigh_product_pdf: need n_s >= 1, p >= q >= 1");
    const int s = std::min(n_s, q);
    double lg = 0.0;
    for (int i = 1; i <= q; ++i) lg += ln_gamma(q - i + 1.0) + ln_gamma(p - i + 1.0);
    const LogScaled norm = LogScaled::from_log(-lg, +1);

    LogMatrix gbar(q, q);
    for (int m = 1; m <= q; ++m)
        for (int n = 1; n <= q; ++n)
            gbar(m - 1, n - 1) = LogScaled::from_log(ln_gamma(p - q + m + n - 1.0), +1);

    TermTable table;
    for (int l = 1; l <= q; ++l)
        for (int k = q - s + 1; k <= q; ++k) {
            const LogScaled cof = cofactor_scaled(gbar, l - 1, k - 1);
            if (cof.sign == 0) continue;
            const LogScaled c = LogScaled::from_log(std::log(2.0) + norm.log_mag -
                                                        std::log(double(s)) -
                                                        ln_gamma(n_s - q + k),
                                                    +1) *
                                cof;
            table.add(n_s + 2 * k + p + l - 2 * q - 3, std::abs(p - n_s + l - 1), c);
        }
    return {0.0, table.build()};
}

double series_weighted_integral(const BesselTermSeries& series,
                                const std::function<double(double)>& log_weight,
                                double rel_tol, int max_subdivisions,
                                bool sqrt_substitution) {
    const double a = series.decay_rate;
    LogSum acc;
    for (const BesselTerm& t : series.terms) {
        const int h = t.half_power;
        const int nu = t.bessel_order;
        auto log_f_u = [&](double u) {
            if (!(u > 0.0)) return -std::numeric_limits<double>::infinity();
            const double lw = log_weight ? log_weight(u * u) : 0.0;
            if (lw == -std::numeric_limits<double>::infinity()) return lw;
            return std::log(2.0) + (h + 1) * std::log(u) - a * u * u +
                   bessel_k_scaled_log(nu, 2.0 * u).log_mag - 2.0 * u + lw;
        };
        auto log_f_lam = [&](double lam) {
            if (!(lam > 0.0)) return -std::numeric_limits<double>::infinity();
            const double lw = log_weight ? log_weight(lam) : 0.0;
            if (lw == -std::numeric_limits<double>::infinity()) return lw;
            const double r = std::sqrt(lam);
            return 0.5 * h * std::log(lam) - a * lam +
                   bessel_k_scaled_log(nu, 2.0 * r).log_mag - 2.0 * r + lw;
        };
        // crest of u^{h+1} e^{-a u^2 - 2u}; the Bessel tail only sharpens decay
        const double hp = h + 1.0;
        const double u_peak = (a > 0.0)
                                  ? (-1.0 + std::sqrt(1.0 + 2.0 * a * hp)) / (2.0 * a)
                                  : hp / 2.0;
        double li;
        if (sqrt_substitution) {
            const double ref = log_f_u(std::max(u_peak, 1e-3));
            double hi = std::max(u_peak, 1.0) + 30.0;
            while (hi < 1e7 && log_f_u(hi) > ref - 50.0) hi *= 1.5;
            li = integrate_log(log_f_u, 0.0, hi, rel_tol, max_subdivisions);
        } else {
            const double lam_peak = u_peak * u_peak;
            const double ref = log_f_lam(std::max(lam_peak, 1e-6));
            double hi = std::max(lam_peak, 1.0) + 900.0;
            while (hi < 1e14 && log_f_lam(hi) > ref - 50.0) hi *= 1.5;
            li = integrate_log(log_f_lam, 0.0, hi, rel_tol, max_subdivisions);
        }
        if (li == -std::numeric_limits<double>::infinity()) continue;
        acc.add_log(t.coeff.log_mag + li, t.coeff.sign);
    }
    return acc.total().value();
}

double series_mass(const BesselTermSeries& series, double rel_tol) {
    return series_weighted_integral(series, nullptr, rel_tol);
}

double pdf_eval(const BesselTermSeries& series, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("pdf_eval: lambda must be > 0");
    const double root = std::sqrt(lambda);
    const double ll = std::log(lambda);
    LogSum acc;
    for (const BesselTerm& t : series.terms) {
        const LogScaled k = bessel_k_scaled_log(t.bessel_order, 2.0 * root);
        acc.add_log(t.coeff.log_mag + 0.5 * t.half_power * ll - series.decay_rate * lambda +
                        k.log_mag - 2.0 * root,
                    t.coeff.sign);
    }
    const double v = acc.total().value();
    if (v < 0.0) {
        if (v <= -1e-9)
            throw std::runtime_error("pdf_eval: negative density, series assembly is wrong");
        return 0.0;
    }
    return v;
}

double unordered_beta_pdf(double beta, const SystemConfig& cfg) {
    if (beta < 0.0) throw std::domain_error("unordered_beta_pdf: beta must be >= 0");
    cfg.validate();
    const double a = cfg.a();
    if (beta * a >= 1.0) return 0.0;
    const int q = cfg.q(), p = cfg.p();
    const double w = 1.0 - a * beta;
    const double expo = std::exp(-beta / w);
    double sum = 0.0, comp = 0.0;
    for (int i = 0; i <= q - 1; ++i)
        for (int j = 0; j <= i; ++j)
            for (int l = 0; l <= 2 * j; ++l) {
                const double term = coeff_A(i, j, l, p, q) *
                                    std::pow(beta, p - q + l) /
                                    std::pow(w, p - q + l + 2) * expo;
                const double t = sum + term;  // Neumaier
                if (std::fabs(sum) >= std::fabs(term))
                    comp += (sum - t) + term;
                else
                    comp += (term - t) + sum;
                sum = t;
            }
    const double v = (sum + comp) / q;
    return v < 0.0 ? 0.0 : v;
}

double conditional_unordered_pdf(std::span<const double> betas, int n_s, double lambda) {
    check_spectrum(betas);
    if (!(lambda > 0.0))
        throw std::domain_error("conditional_unordered_pdf: lambda must be > 0");
    const int q = static_cast<int>(betas.size());
    const int s = std::min(n_s, q);
    LogMatrix d(q, q);
    for (int m = 0; m < q; ++m)
        for (int n = 0; n < q; ++n)
            d(m, n) = LogScaled::from_log(n * std::log(betas[m]), +1);
    const double ll = std::log(lambda);
    LogSum acc;
    for (int l = 1; l <= q; ++l) {
        const double lb = std::log(betas[l - 1]);
        for (int k = q - s + 1; k <= q; ++k) {
            const LogScaled cof = cofactor_scaled(d, l - 1, k - 1);
            if (cof.sign == 0) continue;
            acc.add_log((n_s + k - q - 1) * ll - lambda / betas[l - 1] +
                            (q - n_s - 1) * lb - ln_gamma(n_s - q + k) + cof.log_mag,
                        cof.sign);
        }
    }
    const LogScaled van = vandermonde_product(betas);
    return (acc.total() / (van * LogScaled::from_value(double(s)))).value();
}

LogScaled expected_det_log(const SystemConfig& cfg) {
    cfg.validate();
    if (cfg.rho == 0.0) return LogScaled::one();  // E det(I) = 1
    const int q = cfg.q(), p = cfg.p(), ns = cfg.n_s;
    const double a = cfg.a();
    LogMatrix xi(q, q);
    for (int m = 1; m <= q; ++m)
        for (int n = 1; n <= q; ++n) {
            const int tau = p - q + m + n;
            LogScaled e = moment_u(tau - 2, p + q - tau, a);
            if (n > q - ns && cfg.rho > 0.0) {
                const LogScaled bump =
                    LogScaled::from_value(cfg.rho / ns * (ns - q + n) * a) *
                    moment_u(tau - 1, p + q - tau - 1, a);
                e = e + bump;
            }
            xi(m - 1, n - 1) = e;
        }
    return cfg.normalization() * det_scaled(xi);
}

double expected_det(const SystemConfig& cfg) { return expected_det_log(cfg).value(); }

double conditional_expected_det(std::span<const double> betas, int n_s, double c) {
    check_spectrum(betas);
    if (!(c >= 0.0)) throw std::domain_error("conditional_expected_det: need c >= 0");
    const int q = static_cast<int>(betas.size());
    LogMatrix delta(q, q);
    for (int m = 1; m <= q; ++m) {
        const double lb = std::log(betas[m - 1]);
        for (int n = 1; n <= q; ++n) {
            double lm = (n - 1) * lb;
            // for q < n_s the factor applies to every column (n > q - n_s always)
            if (n > q - n_s) lm += std::log1p(c * betas[m - 1] * (n_s - q + n));
            delta(m - 1, n - 1) = LogScaled::from_log(lm, +1);
        }
    }
    return (det_scaled(delta) / vandermonde_product(betas)).value();
}

double expected_logdet_parts(int n_s, int q, int p, double a) {
    if (n_s < 1 || q < 1 || p < q || !(a > 0.0))
        throw std::invalid_argument("expected_logdet: invalid dimensions");
    const int s = std::min(n_s, q);
    double psi_sum = 0.0;
    for (int k = 1; k <= s; ++k) psi_sum += digamma(n_s - s + k);

    double lg = 0.0;
    for (int i = 1; i <= q; ++i) lg += ln_gamma(q - i + 1.0) + ln_gamma(p - i + 1.0);
    const LogScaled norm = LogScaled::from_log(-lg, +1);

    LogSum dets;
    for (int k = q - s + 1; k <= q; ++k) {
        LogMatrix w(q, q);
        for (int m = 1; m <= q; ++m)
            for (int n = 1; n <= q; ++n) {
                if (n == k) {
                    w(m - 1, n - 1) = varsigma_log(m + n, p, q, a);
                } else {
                    const int tau = p - q + m + n;
                    w(m - 1, n - 1) = moment_u(tau - 2, 2 * q - m - n, a);
                }
            }
        dets.add(det_scaled(w));
    }
    return psi_sum + (norm * dets.total()).value();
}

double expected_logdet(const SystemConfig& cfg) {
    cfg.validate();
    return expected_logdet_parts(cfg.n_s, cfg.q(), cfg.p(), cfg.a());
}

// The spectrum average behind this form is against the marginal beta density,
// whose weight is (1-a b)^{-(p-q+l+2)}; the resulting moment integral is
// t^{p-q+l} (1+a t)^0 e^{-t} ln(t/(1+a t)), a single Gamma/psi/g_l term per
// (i,j,l) rather than a binomial sum.
double expected_logdet_qs_form(int n_s, int q, int p, double a) {
    if (std::min(n_s, q) != q)
        throw std::invalid_argument("expected_logdet_qs_form: requires q = s, i.e. n_s >= q");
    double psi_sum = 0.0;
    for (int k = 1; k <= q; ++k) psi_sum += digamma(n_s - q + k);

    const double inv_a = 1.0 / a;
    std::vector<double> gsum(p + q + 1, 0.0);  // gsum[r] = sum_{m=0}^{r-1} g_m(1/a)
    for (int r = 1; r <= p + q; ++r) gsum[r] = gsum[r - 1] + gl_aux(r - 1, inv_a);

    LogSum acc;
    for (int i = 0; i <= q - 1; ++i)
        for (int j = 0; j <= i; ++j)
            for (int l = 0; l <= 2 * j; ++l) {
                const int arg = p - q + l + 1;
                const double inner = digamma(double(arg)) - gsum[arg];
                const double t = coeff_A(i, j, l, p, q) * inner;
                if (t == 0.0) continue;
                acc.add_log(std::log(std::fabs(t)) + ln_gamma(double(arg)),
                            t > 0.0 ? +1 : -1);
            }
    return psi_sum + acc.total().value();
}

double conditional_expected_logdet(std::span<const double> betas, int n_s) {
    check_spectrum(betas);
    const int q = static_cast<int>(betas.size());
    const int s = std::min(n_s, q);
    double psi_sum = 0.0;
    for (int k = 1; k <= s; ++k) psi_sum += digamma(n_s - s + k);

    LogSum dets;
    for (int k = q - s + 1; k <= q; ++k) {
        LogMatrix y(q, q);
        for (int m = 1; m <= q; ++m) {
            const double b = betas[m - 1];
            const double lb = std::log(b);
            for (int n = 1; n <= q; ++n) {
                if (n == k)
                    y(m - 1, n - 1) = LogScaled::from_value(lb) *
                                      LogScaled::from_log((n - 1) * lb, +1);
                else
                    y(m - 1, n - 1) = LogScaled::from_log((n - 1) * lb, +1);
            }
        }
        dets.add(det_scaled(y));
    }
    return psi_sum + (dets.total() / vandermonde_product(betas)).value();
}

}  // namespace afcap
