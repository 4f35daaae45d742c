// SPDX-License-Identifier: Apache-2.0
// Part of afcap, an ergodic-capacity analysis toolkit for amplify-and-forward
// MIMO dual-hop relay channels.

#include "afcap/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace afcap {

namespace {

constexpr double kPivotFloor = 1e-300;

// LU with partial pivoting on a scaled double matrix. `log_offset` carries
// the prescaling already factored out of the rows.
LogScaled det_lu(std::vector<double>& a, int n, double log_offset) {
    int sign = +1;
    double logdet = log_offset;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::fabs(a[static_cast<size_t>(col) * n + col]);
        for (int r = col + 1; r < n; ++r) {
            const double v = std::fabs(a[static_cast<size_t>(r) * n + col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best < kPivotFloor) return LogScaled::zero();
        if (piv != col) {
            for (int c = 0; c < n; ++c)
                std::swap(a[static_cast<size_t>(piv) * n + c], a[static_cast<size_t>(col) * n + c]);
            sign = -sign;
        }
        const double d = a[static_cast<size_t>(col) * n + col];
        logdet += std::log(std::fabs(d));
        if (d < 0.0) sign = -sign;
        for (int r = col + 1; r < n; ++r) {
            const double f = a[static_cast<size_t>(r) * n + col] / d;
            if (f == 0.0) continue;
            for (int c = col + 1; c < n; ++c)
                a[static_cast<size_t>(r) * n + c] -= f * a[static_cast<size_t>(col) * n + c];
        }
    }
    return LogScaled::from_log(logdet, sign);
}

void require_square(int rows, int cols) {
    if (rows != cols || rows < 1)
        throw std::invalid_argument("determinant requires a square nonempty matrix");
}

}  // namespace

LogScaled det_scaled(const RealMatrix& m) {
    require_square(m.rows(), m.cols());
    const int n = m.rows();
    std::vector<double> a(static_cast<size_t>(n) * n);
    double offset = 0.0;
    for (int r = 0; r < n; ++r) {
        double mx = 0.0;
        for (int c = 0; c < n; ++c) mx = std::max(mx, std::fabs(m(r, c)));
        if (mx == 0.0) return LogScaled::zero();
        for (int c = 0; c < n; ++c) a[static_cast<size_t>(r) * n + c] = m(r, c) / mx;
        offset += std::log(mx);
    }
    return det_lu(a, n, offset);
}

LogScaled det_scaled(const LogMatrix& m) {
    require_square(m.rows(), m.cols());
    const int n = m.rows();
    std::vector<double> a(static_cast<size_t>(n) * n);
    double offset = 0.0;
    for (int r = 0; r < n; ++r) {
        double mx = -std::numeric_limits<double>::infinity();
        for (int c = 0; c < n; ++c)
            if (m(r, c).sign != 0) mx = std::max(mx, m(r, c).log_mag);
        if (mx == -std::numeric_limits<double>::infinity()) return LogScaled::zero();
        for (int c = 0; c < n; ++c) {
            const LogScaled& e = m(r, c);
            a[static_cast<size_t>(r) * n + c] =
                e.sign == 0 ? 0.0 : e.sign * std::exp(e.log_mag - mx);
        }
        offset += mx;
    }
    return det_lu(a, n, offset);
}

namespace {

template <typename M>
LogScaled cofactor_impl(const M& m, int l, int k) {
    require_square(m.rows(), m.cols());
    const int n = m.rows();
    if (l < 0 || l >= n || k < 0 || k >= n)
        throw std::invalid_argument("cofactor index out of range");
    const int par = ((l + k) % 2 == 0) ? +1 : -1;
    if (n == 1) return LogScaled::from_log(0.0, par);  // empty minor determinant = 1
    M minor(n - 1, n - 1);
    for (int r = 0, rr = 0; r < n; ++r) {
        if (r == l) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
            if (c == k) continue;
            minor(rr, cc) = m(r, c);
            ++cc;
        }
        ++rr;
    }
    LogScaled d = det_scaled(minor);
    d.sign *= par;
    return d;
}

}  // namespace

LogScaled cofactor_scaled(const RealMatrix& m, int l, int k) { return cofactor_impl(m, l, k); }
LogScaled cofactor_scaled(const LogMatrix& m, int l, int k) { return cofactor_impl(m, l, k); }

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    require_square(m.rows(), m.cols());
    const int n = m.rows();
    ComplexMatrix a(n, n);
    double norm = 0.0;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            // enforce Hermitian symmetry up to round-off
            a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
            norm = std::max(norm, std::abs(a(r, c)));
        }
    if (norm == 0.0) return std::vector<double>(n, 0.0);

    const double tol = 1e-15 * norm;
    const int max_sweeps = 60;
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const std::complex<double> apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= tol) continue;
                converged = false;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // phase that makes the off-diagonal entry real, then a
                // standard symmetric Jacobi rotation on the 2x2 block
                const std::complex<double> phase = apq / r;
                const double theta = (aqq - app) / (2.0 * r);
                const double t = (theta >= 0.0)
                                     ? 1.0 / (theta + std::sqrt(1.0 + theta * theta))
                                     : 1.0 / (theta - std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const std::complex<double> s = t * c * phase;
                // columns: [x_p, x_q] <- [c*x_p - conj(s)*x_q, s*x_p + c*x_q]
                for (int i = 0; i < n; ++i) {
                    const std::complex<double> aip = a(i, p);
                    const std::complex<double> aiq = a(i, q);
                    a(i, p) = c * aip - std::conj(s) * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    const std::complex<double> api = a(p, i);
                    const std::complex<double> aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = std::conj(s) * api + c * aqi;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }
    if (!converged) throw std::runtime_error("hermitian_eigenvalues: Jacobi sweeps exhausted");
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

LogScaled vandermonde_product(std::span<const double> betas) {
    const int q = static_cast<int>(betas.size());
    if (q < 1) throw std::invalid_argument("vandermonde_product: empty list");
    LogScaled prod = LogScaled::one();
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j) prod *= LogScaled::from_value(betas[j] - betas[i]);
    return prod;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
    ComplexMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const std::complex<double> aik = a(i, k);
            if (aik == std::complex<double>{}) continue;
            for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

ComplexMatrix gram_aat(const ComplexMatrix& a) {
    ComplexMatrix out(a.rows(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i; j < a.rows(); ++j) {
            std::complex<double> s = 0.0;
            for (int k = 0; k < a.cols(); ++k) s += a(i, k) * std::conj(a(j, k));
            out(i, j) = s;
            out(j, i) = std::conj(s);
        }
    return out;
}

ComplexMatrix gram_ata(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.cols());
    for (int i = 0; i < a.cols(); ++i)
        for (int j = i; j < a.cols(); ++j) {
            std::complex<double> s = 0.0;
            for (int k = 0; k < a.rows(); ++k) s += std::conj(a(k, i)) * a(k, j);
            out(i, j) = s;
            out(j, i) = std::conj(s);
        }
    return out;
}

bool cholesky_in_place(ComplexMatrix& a) {
    const int n = a.rows();
    for (int j = 0; j < n; ++j) {
        double d = a(j, j).real();
        for (int k = 0; k < j; ++k) d -= std::norm(a(j, k));
        if (!(d > 0.0)) return false;
        const double lj = std::sqrt(d);
        a(j, j) = lj;
        for (int i = j + 1; i < n; ++i) {
            std::complex<double> s = a(i, j);
            for (int k = 0; k < j; ++k) s -= a(i, k) * std::conj(a(j, k));
            a(i, j) = s / lj;
        }
        for (int i = 0; i < j; ++i) a(i, j) = 0.0;
    }
    return true;
}

double ln_det_hpd(ComplexMatrix a) {
    if (!cholesky_in_place(a))
        throw std::runtime_error("ln_det_hpd: matrix is not positive definite");
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += std::log(a(i, i).real());
    return 2.0 * s;
}

void forward_solve_in_place(const ComplexMatrix& l, ComplexMatrix& b) {
    const int n = l.rows();
    for (int col = 0; col < b.cols(); ++col) {
        for (int i = 0; i < n; ++i) {
            std::complex<double> s = b(i, col);
            for (int k = 0; k < i; ++k) s -= l(i, k) * b(k, col);
            b(i, col) = s / l(i, i).real();
        }
    }
}

}  // namespace afcap
