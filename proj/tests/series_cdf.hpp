// SPDX-License-Identifier: Apache-2.0
//
// Test helper: cumulative distributions on dense grids, for KS comparisons
// against Monte Carlo samples.

#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "afcap/eigenstats.hpp"

namespace testutil {

/// CDF of an analytic eigenvalue series, accumulated on a dense grid in
/// u = sqrt(lambda) where the density is smooth.
class SeriesCdf {
public:
    SeriesCdf(const afcap::BesselTermSeries& s, double lambda_max, int n = 6000) {
        const double umax = std::sqrt(lambda_max);
        cum_.resize(n + 1);
        umax_ = umax;
        std::vector<double> f(n + 1, 0.0);
        for (int i = 1; i <= n; ++i) {
            const double u = umax * i / n;
            f[i] = afcap::pdf_eval(s, u * u) * 2.0 * u;
        }
        cum_[0] = 0.0;
        for (int i = 1; i <= n; ++i) cum_[i] = cum_[i - 1] + 0.5 * (f[i] + f[i - 1]) * (umax / n);
    }
    double operator()(double x) const {
        if (x <= 0.0) return 0.0;
        const double u = std::sqrt(x);
        if (u >= umax_) return 1.0;
        const double pos = u / umax_ * (cum_.size() - 1);
        const size_t i = static_cast<size_t>(pos);
        const double fr = pos - static_cast<double>(i);
        return cum_[i] * (1.0 - fr) + cum_[i + 1] * fr;
    }
    double total() const { return cum_.back(); }

private:
    std::vector<double> cum_;
    double umax_ = 0.0;
};

/// CDF of a generic bounded density on [0, hi].
class GridCdf {
public:
    GridCdf(const std::function<double(double)>& pdf, double hi, int n = 20000) : hi_(hi) {
        cum_.resize(n + 1);
        std::vector<double> f(n + 1);
        for (int i = 0; i <= n; ++i) f[i] = pdf(hi * i / n);
        cum_[0] = 0.0;
        for (int i = 1; i <= n; ++i) cum_[i] = cum_[i - 1] + 0.5 * (f[i] + f[i - 1]) * (hi / n);
    }
    double operator()(double x) const {
        if (x <= 0.0) return 0.0;
        if (x >= hi_) return 1.0;
        const double pos = x / hi_ * (cum_.size() - 1);
        const size_t i = static_cast<size_t>(pos);
        const double fr = pos - static_cast<double>(i);
        return cum_[i] * (1.0 - fr) + cum_[i + 1] * fr;
    }

private:
    std::vector<double> cum_;
    double hi_ = 0.0;
};

}  // namespace testutil
