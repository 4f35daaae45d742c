// SPDX-License-Identifier: Apache-2.0
// Part of afcap, an ergodic-capacity analysis toolkit for amplify-and-forward
// MIMO dual-hop relay channels.

#include "afcap/capacity.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "afcap/specfun.hpp"

namespace afcap {

namespace {

// The published reference offsets use a 3 dB step of exactly 3, not
// 10 log10 2; keeping the same constant makes them reproducible.
constexpr double kDbPer3dbUnit = 3.0;

double softplus(double x) {
    if (x > 36.0) return x;
    if (x < -745.0) return 0.0;
    return std::log1p(std::exp(x));
}

double log_log2_1p(double c, double lambda) {
    // ln( log2(1 + c*lambda) ), -inf at lambda = 0
    const double t = c * lambda;
    if (t <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(std::log1p(t)) - std::log(std::numbers::ln2);
}

}  // namespace

double three_db_unit_in_db() { return kDbPer3dbUnit; }

double HighSnrChar::offset_db() const { return offset_3db * kDbPer3dbUnit; }

CapacityPoint exact_capacity(const SystemConfig& cfg, const QuadratureSpec& quad) {
    cfg.validate();
    if (cfg.rho == 0.0) return {cfg.rho, 0.0, Method::exact, std::nullopt};
    const double c = cfg.rho * cfg.a() / cfg.n_s;
    const BesselTermSeries series = unordered_pdf(cfg);
    const double integral = series_weighted_integral(
        series, [c](double lam) { return log_log2_1p(c, lam); }, quad.rel_tol,
        quad.max_subdivisions,
        quad.transform == QuadratureSpec::Transform::sqrt_substitution);
    return {cfg.rho, 0.5 * cfg.s() * integral, Method::exact, std::nullopt};
}

HighSnrChar high_snr_char(int n_s, int n_r, int n_d, double beta) {
    if (n_s < 1 || n_r < 1 || n_d < 1 || !(beta > 0.0))
        throw std::invalid_argument("high_snr_char: invalid arguments");
    const int q = std::min(n_d, n_r);
    const int p = std::max(n_d, n_r);
    const int s = std::min(n_s, q);
    const double a_eff = beta / n_r;
    const double logdet = expected_logdet_parts(n_s, q, p, a_eff);
    HighSnrChar ch;
    ch.slope = 0.5 * s;
    ch.beta = beta;
    ch.offset_3db =
        std::log2(double(n_s) * n_r / beta) - logdet / (s * std::numbers::ln2);
    if (q == s) {
        const double logdet2 = expected_logdet_qs_form(n_s, q, p, a_eff);
        const double alt =
            std::log2(double(n_s) * n_r / beta) - logdet2 / (s * std::numbers::ln2);
        if (std::fabs(alt - ch.offset_3db) > 1e-6)
            throw std::runtime_error("high_snr_char: q = s cross-check failed");
    }
    return ch;
}

CapacityPoint high_snr_affine(const HighSnrChar& ch, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("high_snr_affine: rho must be > 0");
    const double v = ch.slope * (std::log2(rho) - ch.offset_3db);
    return {rho, std::max(v, 0.0), Method::high_snr_affine, std::nullopt};
}

double offset_shift_db(int n_d, int k, double beta) {
    if (n_d < 1 || k < 1 || !(beta > 0.0))
        throw std::invalid_argument("offset_shift_db: invalid arguments");
    double sum = 0.0;
    for (int l = n_d; l <= n_d + k - 1; ++l) sum += 1.0 / l - gl_aux(l, 1.0 / beta);
    return -(sum / std::numbers::ln2) * kDbPer3dbUnit;
}

CapacityPoint fixed_alpha_limit(const SystemConfig& cfg, const QuadratureSpec& quad) {
    cfg.validate();
    const double c = cfg.alpha / (double(cfg.n_s) * cfg.n_r);
    const BesselTermSeries series = rayleigh_product_pdf(cfg.n_s, cfg.q(), cfg.p());
    const double integral = series_weighted_integral(
        series, [c](double lam) { return log_log2_1p(c, lam); }, quad.rel_tol,
        quad.max_subdivisions,
        quad.transform == QuadratureSpec::Transform::sqrt_substitution);
    return {std::numeric_limits<double>::infinity(), 0.5 * cfg.s() * integral,
            Method::fixed_alpha_limit, std::nullopt};
}

CapacityPoint upper_bound(const SystemConfig& cfg) {
    cfg.validate();
    const LogScaled edet = expected_det_log(cfg);
    const double v = 0.5 * edet.log_mag / std::numbers::ln2;
    return {cfg.rho, std::max(v, 0.0), Method::upper, std::nullopt};
}

CapacityPoint upper_bound_nr1(int n_s, int n_d, double alpha, double rho) {
    if (n_s < 1 || n_d < 1 || !(alpha > 0.0) || !(rho >= 0.0))
        throw std::invalid_argument("upper_bound_nr1: invalid arguments");
    const double x = (1.0 + rho) / alpha;
    const double v = 0.5 * std::log2(1.0 + rho * n_d * expint_scaled(n_d + 1, x));
    return {rho, v, Method::upper, std::nullopt};
}

CapacityPoint upper_bound_highsnr(const SystemConfig& cfg) {
    cfg.validate();
    const int q = cfg.q(), p = cfg.p(), ns = cfg.n_s;
    LogMatrix xi(q, q);
    for (int m = 1; m <= q; ++m)
        for (int n = 1; n <= q; ++n) {
            const int tau = p - q + m + n;
            double lm = ln_gamma(tau - 1.0);
            if (n > q - ns)
                lm += std::log1p(cfg.alpha / (double(ns) * cfg.n_r) * (ns - q + n) *
                                 (tau - 1.0));
            xi(m - 1, n - 1) = LogScaled::from_log(lm, +1);
        }
    const LogScaled d = cfg.normalization() * det_scaled(xi);
    return {std::numeric_limits<double>::infinity(),
            std::max(0.5 * d.log_mag / std::numbers::ln2, 0.0), Method::upper,
            std::nullopt};
}

CapacityPoint lower_bound(const SystemConfig& cfg) {
    cfg.validate();
    if (cfg.rho == 0.0) return {cfg.rho, 0.0, Method::lower, std::nullopt};
    const double logdet = expected_logdet_parts(cfg.n_s, cfg.q(), cfg.p(), cfg.a());
    const double x = std::log(cfg.rho * cfg.a() / cfg.n_s) + logdet / cfg.s();
    const double v = 0.5 * cfg.s() * softplus(x) / std::numbers::ln2;
    return {cfg.rho, v, Method::lower, std::nullopt};
}

CapacityPoint lower_bound_nr1(int n_s, int n_d, double alpha, double rho) {
    if (n_s < 1 || n_d < 1 || !(alpha > 0.0) || !(rho >= 0.0))
        throw std::invalid_argument("lower_bound_nr1: invalid arguments");
    if (rho == 0.0) return {rho, 0.0, Method::lower, std::nullopt};
    const double x0 = (1.0 + rho) / alpha;
    double gsum = 0.0;
    for (int l = 0; l <= n_d - 1; ++l) gsum += gl_aux(l, x0);
    const double x = std::log(rho * alpha / (n_s * (1.0 + rho))) + digamma(double(n_s)) +
                     digamma(double(n_d)) - gsum;
    return {rho, 0.5 * softplus(x) / std::numbers::ln2, Method::lower, std::nullopt};
}

CapacityPoint lower_bound_highsnr(const SystemConfig& cfg) {
    cfg.validate();
    const int q = cfg.q(), p = cfg.p(), ns = cfg.n_s, s = cfg.s();
    LogSum dets;
    for (int k = q - s + 1; k <= q; ++k) {
        LogMatrix w(q, q);
        for (int m = 1; m <= q; ++m)
            for (int n = 1; n <= q; ++n) {
                const int tau = p - q + m + n;
                if (n == k) {
                    const double inner = digamma(double(ns - q + n)) + digamma(tau - 1.0);
                    w(m - 1, n - 1) = LogScaled::from_value(inner) *
                                      LogScaled::from_log(ln_gamma(tau - 1.0), +1);
                } else {
                    w(m - 1, n - 1) = LogScaled::from_log(ln_gamma(tau - 1.0), +1);
                }
            }
        dets.add(det_scaled(w));
    }
    const double inner = (cfg.normalization() * dets.total()).value() / s;
    const double x = std::log(cfg.alpha / (double(cfg.n_r) * ns)) + inner;
    return {std::numeric_limits<double>::infinity(),
            0.5 * s * softplus(x) / std::numbers::ln2, Method::lower, std::nullopt};
}

std::pair<CapacityPoint, CapacityPoint> analogy_check(const SystemConfig& cfg,
                                                      AsymptoticRegime regime,
                                                      long n_trials, RngStream stream) {
    cfg.validate();
    const bool big_enough = [&] {
        switch (regime) {
            case AsymptoticRegime::nr_large: return cfg.n_r >= 32;
            case AsymptoticRegime::ns_large: return cfg.n_s >= 32;
            case AsymptoticRegime::nd_large: return cfg.n_d >= 32;
            case AsymptoticRegime::alpha_large: return cfg.alpha >= 1e4;
        }
        return false;
    }();
    if (!big_enough)
        throw std::invalid_argument("analogy_check: regime parameter is too small");

    // The expanded eigenvalue series loses precision once the per-antenna
    // gain a = alpha/(n_r(1+rho)) reaches the hundreds, which the
    // alpha_large regime always does, so that regime is scored by the
    // Monte Carlo oracle on both sides.
    CapacityPoint af;
    if (cfg.q() <= 8 && regime != AsymptoticRegime::alpha_large) {
        af = exact_capacity(cfg);
    } else {
        const McEstimate est = mc_capacity(cfg, n_trials, stream);
        af = {cfg.rho, est.mean, Method::monte_carlo, est.stderr_};
    }

    RngStream sh{stream.seed, stream.stream_id + 0x5348ULL};  // independent stream
    McEstimate single;
    double half_factor = 0.5;
    switch (regime) {
        case AsymptoticRegime::nr_large: {
            const double snr = cfg.rho * cfg.alpha / (1.0 + cfg.rho + cfg.alpha);
            single = mc_single_hop_capacity(cfg.n_s, cfg.n_d, snr, n_trials, sh);
            break;
        }
        case AsymptoticRegime::ns_large: {
            const McEstimate hi =
                mc_single_hop_capacity(cfg.n_r, cfg.n_d, cfg.alpha, n_trials, sh);
            const McEstimate lo = mc_single_hop_capacity(
                cfg.n_r, cfg.n_d, cfg.alpha / (1.0 + cfg.rho), n_trials,
                RngStream{sh.seed, sh.stream_id + 1});
            single.mean = hi.mean - lo.mean;
            single.stderr_ = std::hypot(hi.stderr_, lo.stderr_);
            single.n_trials = n_trials;
            break;
        }
        case AsymptoticRegime::nd_large:
            single = mc_single_hop_capacity(cfg.n_s, cfg.n_r, cfg.rho, n_trials, sh);
            break;
        case AsymptoticRegime::alpha_large:
            single = mc_single_hop_capacity(cfg.n_s, cfg.q(), cfg.rho, n_trials, sh);
            break;
    }
    CapacityPoint mapped{cfg.rho, half_factor * single.mean, Method::monte_carlo,
                         half_factor * single.stderr_};
    return {af, mapped};
}

}  // namespace afcap
