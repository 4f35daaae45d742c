// SPDX-License-Identifier: Apache-2.0
// Part of afcap, an ergodic-capacity analysis toolkit for amplify-and-forward
// MIMO dual-hop relay channels.

#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "afcap/logscaled.hpp"

namespace afcap {

/// Small dense real matrix, row-major. Dimensions stay below ~64 everywhere
/// in this library.
class RealMatrix {
public:
    RealMatrix() = default;
    RealMatrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    static RealMatrix identity(int n) {
        RealMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

/// Dense matrix with per-entry log-scaled values. Used for the structured
/// determinants whose entries span hundreds of orders of magnitude.
class LogMatrix {
public:
    LogMatrix() = default;
    LogMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    LogScaled& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    const LogScaled& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<LogScaled> data_;
};

/// Small dense complex matrix, row-major. Monte Carlo scale only.
class ComplexMatrix {
public:
    using value_type = std::complex<double>;

    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    value_type& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    const value_type& operator()(int r, int c) const {
        return data_[static_cast<size_t>(r) * cols_ + c];
    }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<value_type> data_;
};

/// Determinant as sign + log magnitude, via partially pivoted elimination
/// with per-row prescaling. Numerically singular input (pivot underflow
/// after scaling) yields an exact zero sign.
LogScaled det_scaled(const RealMatrix& m);
LogScaled det_scaled(const LogMatrix& m);

/// (l,k) cofactor, 0-based indices: (-1)^{l+k} det(minor(m, l, k)).
LogScaled cofactor_scaled(const RealMatrix& m, int l, int k);
LogScaled cofactor_scaled(const LogMatrix& m, int l, int k);

/// Ascending eigenvalues of a Hermitian matrix (symmetrized to tolerance)
/// by cyclic complex Jacobi rotations. Throws on non-convergence.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// prod_{i<j} (b[j] - b[i]); the empty product (size 1) is 1.
LogScaled vandermonde_product(std::span<const double> betas);

// Complex helpers used by the Monte Carlo oracle.

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);

/// A * A^dagger of an arbitrary rows x cols matrix.
ComplexMatrix gram_aat(const ComplexMatrix& a);
/// A^dagger * A.
ComplexMatrix gram_ata(const ComplexMatrix& a);

/// In-place lower Cholesky factor of a Hermitian positive definite matrix.
/// Returns false if a pivot is not positive.
bool cholesky_in_place(ComplexMatrix& a);

/// ln det of a Hermitian positive definite matrix via Cholesky.
/// Throws std::runtime_error if the factorization fails.
double ln_det_hpd(ComplexMatrix a);

/// Solve L * X = B in place for lower-triangular L (forward substitution).
void forward_solve_in_place(const ComplexMatrix& l, ComplexMatrix& b);

}  // namespace afcap
