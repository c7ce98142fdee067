// SPDX-License-Identifier: Apache-2.0
//
// gsdet: soft-output Gauss-Seidel detection lab for massive MIMO uplink.
// Copyright (C) 2026 The gsdet authors

#include "gsdet/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace gsdet {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool ComplexMatrix::is_finite() const {
    for (const cplx& v : data_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r(j, i) = std::conj(a(i, j));
    return r;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: inner dimensions differ");
    ComplexMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

std::vector<cplx> matvec(const ComplexMatrix& a, const std::vector<cplx>& v) {
    if (a.cols() != v.size())
        throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<cplx> r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
        r[i] = acc;
    }
    return r;
}

cplx HermitianSplit::at(std::size_t i, std::size_t j) const {
    if (i == j) return cplx(d[i], 0.0);
    if (i > j) return lower[lower_index(i, j)];
    return std::conj(lower[lower_index(j, i)]);
}

ComplexMatrix HermitianSplit::dense() const {
    const std::size_t n = dim();
    ComplexMatrix w(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        w(i, i) = d[i];
        for (std::size_t j = 0; j < i; ++j) {
            w(i, j) = lower[lower_index(i, j)];
            w(j, i) = std::conj(w(i, j));
        }
    }
    return w;
}

HermitianSplit HermitianSplit::from_dense(const ComplexMatrix& w) {
    if (w.rows() != w.cols())
        throw std::invalid_argument("HermitianSplit: matrix not square");
    HermitianSplit s(w.rows());
    for (std::size_t i = 0; i < w.rows(); ++i) {
        s.d[i] = w(i, i).real();
        for (std::size_t j = 0; j < i; ++j) s.lower[lower_index(i, j)] = w(i, j);
    }
    return s;
}

ComplexMatrix cholesky_factor(const HermitianSplit& w) {
    const std::size_t n = w.dim();
    double dmax = 0.0;
    for (double v : w.d) dmax = std::max(dmax, v);
    const double pivot_floor = 1e-12 * dmax;

    ComplexMatrix c(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double pivot = w.d[j];
        for (std::size_t k = 0; k < j; ++k) pivot -= std::norm(c(j, k));
        if (!(pivot > pivot_floor))
            throw std::domain_error("cholesky_factor: not positive definite");
        const double cjj = std::sqrt(pivot);
        c(j, j) = cjj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx acc = w.at(i, j);
            for (std::size_t k = 0; k < j; ++k) acc -= c(i, k) * std::conj(c(j, k));
            c(i, j) = acc / cjj;
        }
    }
    return c;
}

std::vector<cplx> solve_lower(const ComplexMatrix& c, const std::vector<cplx>& b) {
    const std::size_t n = c.rows();
    if (c.cols() != n || b.size() != n)
        throw std::invalid_argument("solve_lower: dimension mismatch");
    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (c(i, i) == cplx{})
            throw std::domain_error("solve_lower: singular triangular system");
        cplx acc = b[i];
        for (std::size_t j = 0; j < i; ++j) acc -= c(i, j) * x[j];
        x[i] = acc / c(i, i);
    }
    return x;
}

std::vector<cplx> solve_lower_adjoint(const ComplexMatrix& c, const std::vector<cplx>& b) {
    const std::size_t n = c.rows();
    if (c.cols() != n || b.size() != n)
        throw std::invalid_argument("solve_lower_adjoint: dimension mismatch");
    std::vector<cplx> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        if (c(ii, ii) == cplx{})
            throw std::domain_error("solve_lower_adjoint: singular triangular system");
        cplx acc = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= std::conj(c(j, ii)) * x[j];
        x[ii] = acc / std::conj(c(ii, ii));
    }
    return x;
}

std::vector<cplx> hermitian_matvec(const HermitianSplit& w, const std::vector<cplx>& v) {
    const std::size_t n = w.dim();
    if (v.size() != n)
        throw std::invalid_argument("hermitian_matvec: dimension mismatch");
    std::vector<cplx> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = w.d[i] * v[i];
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const cplx lij = w.lower[HermitianSplit::lower_index(i, j)];
            r[i] += lij * v[j];
            r[j] += std::conj(lij) * v[i];
        }
    }
    return r;
}

} // namespace gsdet
