// SPDX-License-Identifier: Apache-2.0
// Part of afcap, an ergodic-capacity analysis toolkit for amplify-and-forward
// MIMO dual-hop relay channels.

#include "afcap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace afcap {

namespace {

// 15-point Kronrod extension of 7-point Gauss: {abscissa, Gauss w, Kronrod w}
constexpr double kNodes[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

double gk15(const std::function<double(double)>& f, double a, double b, double& err) {
    const double mid = 0.5 * (a + b);
    const double h = b - mid;
    const double y0 = f(mid);
    double g7 = kNodes[0][1] * y0;
    double k15 = kNodes[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kNodes[i][0];
        const double yi = f(mid + dx) + f(mid - dx);
        g7 += kNodes[i][1] * yi;
        k15 += kNodes[i][2] * yi;
    }
    g7 *= h;
    k15 *= h;
    err = 200.0 * std::fabs(g7 - k15);
    err *= std::sqrt(err);
    return k15;
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, double abs_tol, int max_subdivisions) {
    struct Interval {
        double a, b;
    };
    std::vector<Interval> stack{{a, b}};
    double sum = 0.0, err_sum = 0.0;
    int used = 0;
    while (!stack.empty()) {
        const Interval iv = stack.back();
        stack.pop_back();
        double err = 0.0;
        const double s = gk15(f, iv.a, iv.b, err);
        if (err <= abs_tol || err <= rel_tol * std::fabs(s) ||
            (iv.b - iv.a) < 1e-14 * (std::fabs(iv.a) + 1.0)) {
            sum += s;
            err_sum += err;
            continue;
        }
        if (++used > max_subdivisions)
            throw quadrature_error("adaptive quadrature: subdivision budget exhausted",
                                   err_sum + err);
        const double mid = 0.5 * (iv.a + iv.b);
        stack.push_back({iv.a, mid});
        stack.push_back({mid, iv.b});
    }
    return {sum, err_sum};
}

double integrate_log(const std::function<double(double)>& log_f, double lo, double hi,
                     double rel_tol, int max_subdivisions) {
    // locate the peak on a scan mixing linear and geometric spacing; the
    // integrands here can spike close to the lower end
    double peak = -std::numeric_limits<double>::infinity();
    const int n_lin = 192;
    for (int i = 1; i <= n_lin; ++i)
        peak = std::max(peak, log_f(lo + (hi - lo) * i / (n_lin + 1.0)));
    if (hi > lo && lo >= 0.0) {
        double u = (hi - lo) * 1e-9;
        while (u < hi - lo) {
            peak = std::max(peak, log_f(lo + u));
            u *= 1.5;
        }
    }
    if (peak == -std::numeric_limits<double>::infinity()) return peak;
    const double offset = peak;
    auto f = [&](double u) {
        const double lf = log_f(u) - offset;
        return lf < -745.0 ? 0.0 : std::exp(lf);
    };
    const QuadResult r = integrate_adaptive(f, lo, hi, rel_tol, 1e-300, max_subdivisions);
    if (!(r.value > 0.0)) return -std::numeric_limits<double>::infinity();
    return offset + std::log(r.value);
}

}  // namespace afcap
