// SPDX-License-Identifier: Apache-2.0
// Part of afcap, an ergodic-capacity analysis toolkit for amplify-and-forward
// MIMO dual-hop relay channels.

#pragma once

#include <cmath>
#include <limits>

namespace afcap {

/// Signed log-scaled real number: value = sign * exp(log_magnitude).
///
/// Gamma-bearing coefficients and structured-determinant entries span far
/// more than the double exponent range, so every intermediate product in
/// this library is carried as (sign, ln|x|) and converted to a plain double
/// only at module boundaries.
struct LogScaled {
    double log_mag = -std::numeric_limits<double>::infinity();
    int sign = 0;  // -1, 0, +1; sign == 0 iff the value is exactly zero

    constexpr LogScaled() = default;
    constexpr LogScaled(double lm, int s) : log_mag(lm), sign(s) {}

    static LogScaled zero() { return {}; }
    static LogScaled one() { return {0.0, +1}; }

    static LogScaled from_value(double v) {
        if (v == 0.0) return zero();
        return {std::log(std::fabs(v)), v > 0.0 ? +1 : -1};
    }
    /// ln|x| given directly; sign defaults to positive.
    static LogScaled from_log(double lm, int s = +1) {
        if (s == 0) return zero();
        return {lm, s};
    }

    bool is_zero() const { return sign == 0; }

    /// Convert back to double. Overflows to +-inf outside double range.
    double value() const {
        if (sign == 0) return 0.0;
        return static_cast<double>(sign) * std::exp(log_mag);
    }

    LogScaled operator-() const { return {log_mag, -sign}; }

    friend LogScaled operator*(const LogScaled& a, const LogScaled& b) {
        if (a.sign == 0 || b.sign == 0) return zero();
        return {a.log_mag + b.log_mag, a.sign * b.sign};
    }
    friend LogScaled operator/(const LogScaled& a, const LogScaled& b) {
        if (a.sign == 0) return zero();
        return {a.log_mag - b.log_mag, a.sign * b.sign};
    }
    LogScaled& operator*=(const LogScaled& o) { return *this = *this * o; }
    LogScaled& operator/=(const LogScaled& o) { return *this = *this / o; }

    /// Signed addition in log space. Exact cancellation yields zero().
    friend LogScaled operator+(const LogScaled& a, const LogScaled& b) {
        if (a.sign == 0) return b;
        if (b.sign == 0) return a;
        const LogScaled& hi = (a.log_mag >= b.log_mag) ? a : b;
        const LogScaled& lo = (a.log_mag >= b.log_mag) ? b : a;
        const double r = std::exp(lo.log_mag - hi.log_mag);
        if (hi.sign == lo.sign) return {hi.log_mag + std::log1p(r), hi.sign};
        if (r >= 1.0) return zero();  // equal magnitudes, opposite signs
        return {hi.log_mag + std::log1p(-r), hi.sign};
    }
    friend LogScaled operator-(const LogScaled& a, const LogScaled& b) { return a + (-b); }
};

/// Compensated accumulator for sums of log-scaled terms of mixed sign.
///
/// Terms are rescaled to a running reference magnitude and accumulated with
/// Neumaier compensation, so alternating cofactor sums keep full double
/// precision relative to the largest term.
class LogSum {
public:
    void add(const LogScaled& t) {
        if (t.sign == 0) return;
        add_log(t.log_mag, t.sign);
    }
    void add_log(double log_mag, int sign) {
        if (sign == 0) return;
        if (scale_ == -std::numeric_limits<double>::infinity()) {
            scale_ = log_mag;
        } else if (log_mag > scale_) {
            const double f = std::exp(scale_ - log_mag);
            sum_ *= f;
            comp_ *= f;
            scale_ = log_mag;
        }
        neumaier_add(static_cast<double>(sign) * std::exp(log_mag - scale_));
    }
    void add_value(double v) { add(LogScaled::from_value(v)); }

    LogScaled total() const {
        const double s = sum_ + comp_;
        if (s == 0.0 || scale_ == -std::numeric_limits<double>::infinity())
            return LogScaled::zero();
        return {scale_ + std::log(std::fabs(s)), s > 0.0 ? +1 : -1};
    }

private:
    void neumaier_add(double v) {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }

    double scale_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace afcap
