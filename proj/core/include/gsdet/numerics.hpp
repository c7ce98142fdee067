// SPDX-License-Identifier: Apache-2.0
//
// gsdet: soft-output Gauss-Seidel detection lab for massive MIMO uplink.
// Copyright (C) 2026 The gsdet authors

#ifndef GSDET_NUMERICS_HPP
#define GSDET_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace gsdet {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. Sized for the small regularized Gram
/// systems handled here (tens of columns); no sparse or blocked storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

    bool is_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<cplx> matvec(const ComplexMatrix& a, const std::vector<cplx>& v);

/// Hermitian matrix W = D + L + L^H stored as its real diagonal plus the
/// strictly lower triangle, packed row-major: lower[i*(i-1)/2 + j] = W(i,j)
/// for j < i. This is the shape the Gauss-Seidel recursion consumes.
struct HermitianSplit {
    std::vector<double> d;
    std::vector<cplx> lower;

    HermitianSplit() = default;
    explicit HermitianSplit(std::size_t n) : d(n, 0.0), lower(n * (n - 1) / 2) {}

    std::size_t dim() const { return d.size(); }

    static std::size_t lower_index(std::size_t i, std::size_t j) {
        return i * (i - 1) / 2 + j;
    }

    /// Entry (i, j) of the full matrix, mirroring the upper triangle.
    cplx at(std::size_t i, std::size_t j) const;

    ComplexMatrix dense() const;

    /// Takes the diagonal and strictly lower triangle of w; the upper
    /// triangle is ignored (assumed to be the conjugate mirror).
    static HermitianSplit from_dense(const ComplexMatrix& w);
};

/// Cholesky factor C with C C^H = W. Throws std::domain_error("not positive
/// definite") when a pivot falls at or below 1e-12 * max(d).
ComplexMatrix cholesky_factor(const HermitianSplit& w);

/// Solves C x = b for lower-triangular C by forward substitution.
std::vector<cplx> solve_lower(const ComplexMatrix& c, const std::vector<cplx>& b);

/// Solves C^H x = b for lower-triangular C (backward substitution on the
/// conjugate transpose); completes the two-triangle MMSE solve.
std::vector<cplx> solve_lower_adjoint(const ComplexMatrix& c, const std::vector<cplx>& b);

/// (D + L + L^H) v without forming the dense matrix.
std::vector<cplx> hermitian_matvec(const HermitianSplit& w, const std::vector<cplx>& v);

} // namespace gsdet

#endif
