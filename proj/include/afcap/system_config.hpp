// SPDX-License-Identifier: Apache-2.0
// Part of afcap, an ergodic-capacity analysis toolkit for amplify-and-forward
// MIMO dual-hop relay channels.

#pragma once

#include <algorithm>
#include <stdexcept>

#include "afcap/logscaled.hpp"
#include "afcap/specfun.hpp"

namespace afcap {

/// Antenna triple (n_s, n_r, n_d), relay power gain alpha, and per-hop SNR
/// rho (linear). Derived quantities:
///   q = min(n_d, n_r), p = max(n_d, n_r), s = min(n_s, q),
///   a = alpha / (n_r (1 + rho)),
///   normalization() = 1 / prod_{i=1}^q Gamma(q-i+1) Gamma(p-i+1), log-scaled.
struct SystemConfig {
    int n_s = 1;
    int n_r = 1;
    int n_d = 1;
    double alpha = 1.0;
    double rho = 0.0;

    SystemConfig() = default;
    SystemConfig(int ns, int nr, int nd, double alpha_, double rho_)
        : n_s(ns), n_r(nr), n_d(nd), alpha(alpha_), rho(rho_) {
        validate();
    }

    void validate() const {
        if (n_s < 1 || n_r < 1 || n_d < 1)
            throw std::invalid_argument("SystemConfig: antenna counts must be >= 1");
        if (!(alpha > 0.0)) throw std::invalid_argument("SystemConfig: alpha must be > 0");
        if (!(rho >= 0.0)) throw std::invalid_argument("SystemConfig: rho must be >= 0");
    }

    int q() const { return std::min(n_d, n_r); }
    int p() const { return std::max(n_d, n_r); }
    int s() const { return std::min(n_s, q()); }
    double a() const { return alpha / (n_r * (1.0 + rho)); }

    LogScaled normalization() const {
        double lg = 0.0;
        for (int i = 1; i <= q(); ++i)
            lg += ln_gamma(q() - i + 1.0) + ln_gamma(p() - i + 1.0);
        return LogScaled::from_log(-lg, +1);
    }
};

}  // namespace afcap
