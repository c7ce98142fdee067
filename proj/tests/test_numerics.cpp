// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The gsdet authors

#include "doctest.h"

#include <cmath>

#include "gsdet/channel.hpp"
#include "gsdet/numerics.hpp"
#include "gsdet/rng.hpp"

using namespace gsdet;

namespace {

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

HermitianSplit regularized_gram(const ComplexMatrix& h, double n0) {
    const ComplexMatrix g = matmul(adjoint(h), h);
    HermitianSplit s = HermitianSplit::from_dense(g);
    for (std::size_t i = 0; i < s.dim(); ++i) s.d[i] += n0;
    return s;
}

} // namespace

TEST_CASE("cholesky of the identity is the identity") {
    HermitianSplit w(4);
    for (auto& v : w.d) v = 1.0;
    const ComplexMatrix c = cholesky_factor(w);
    CHECK(max_abs_diff(c, ComplexMatrix::identity(4)) == 0.0);
}

TEST_CASE("cholesky of a diagonal matrix takes square roots") {
    HermitianSplit w(2);
    w.d = {4.0, 9.0};
    const ComplexMatrix c = cholesky_factor(w);
    CHECK(c(0, 0) == cplx{2.0});
    CHECK(c(1, 1) == cplx{3.0});
    CHECK(c(1, 0) == cplx{});
    CHECK(c(0, 1) == cplx{});
}

TEST_CASE("cholesky reconstructs a random regularized Gram matrix") {
    const ComplexMatrix h = gen_iid(16, 4, 42);
    const HermitianSplit w = regularized_gram(h, 0.1);
    const ComplexMatrix c = cholesky_factor(w);
    const ComplexMatrix recon = matmul(c, adjoint(c));
    CHECK(max_abs_diff(recon, w.dense()) < 1e-10);
}

TEST_CASE("cholesky rejects an indefinite matrix") {
    HermitianSplit w(2);
    w.d = {1.0, 1.0};
    w.lower[0] = 2.0; // |off-diagonal| > diagonal
    CHECK_THROWS_AS(cholesky_factor(w), std::domain_error);
}

TEST_CASE("solve_lower identity and hand-checkable 2x2") {
    const ComplexMatrix eye = ComplexMatrix::identity(3);
    const std::vector<cplx> b{cplx{1, 2}, cplx{-3, 0.5}, cplx{0, -1}};
    CHECK(solve_lower(eye, b) == b);

    ComplexMatrix c(2, 2);
    c(0, 0) = 2.0;
    c(1, 0) = 1.0;
    c(1, 1) = 1.0;
    const std::vector<cplx> x = solve_lower(c, {cplx{2.0}, cplx{2.0}});
    CHECK(x[0] == cplx{1.0});
    CHECK(x[1] == cplx{1.0});
}

TEST_CASE("solve_lower residual on a random 8x8 system") {
    Rng rng(7);
    ComplexMatrix c(8, 8);
    for (std::size_t i = 0; i < 8; ++i) {
        c(i, i) = cplx(2.0 + rng.uniform(), 0.0);
        for (std::size_t j = 0; j < i; ++j) c(i, j) = rng.cgaussian();
    }
    std::vector<cplx> b(8);
    for (auto& v : b) v = rng.cgaussian();
    const std::vector<cplx> x = solve_lower(c, b);
    for (std::size_t i = 0; i < 8; ++i) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) acc += c(i, j) * x[j];
        CHECK(std::abs(acc - b[i]) < 1e-12);
    }
}

TEST_CASE("solve_lower rejects a zero diagonal") {
    ComplexMatrix c(2, 2);
    c(0, 0) = 1.0;
    c(1, 0) = 1.0; // c(1,1) stays zero
    CHECK_THROWS_AS(solve_lower(c, {cplx{1.0}, cplx{1.0}}), std::domain_error);
}

TEST_CASE("solve_lower_adjoint solves C^H x = b") {
    Rng rng(11);
    ComplexMatrix c(6, 6);
    for (std::size_t i = 0; i < 6; ++i) {
        c(i, i) = cplx(1.5 + rng.uniform(), 0.0);
        for (std::size_t j = 0; j < i; ++j) c(i, j) = rng.cgaussian();
    }
    std::vector<cplx> b(6);
    for (auto& v : b) v = rng.cgaussian();
    const std::vector<cplx> x = solve_lower_adjoint(c, b);
    const std::vector<cplx> chk = matvec(adjoint(c), x);
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(chk[i] - b[i]) < 1e-12);
}

TEST_CASE("hermitian_matvec trivial cases and dense-path oracle") {
    HermitianSplit eye(3);
    for (auto& v : eye.d) v = 1.0;
    const std::vector<cplx> v{cplx{1, 1}, cplx{2, -1}, cplx{0, 3}};
    CHECK(hermitian_matvec(eye, v) == v);

    HermitianSplit diag(3);
    diag.d = {2.0, 3.0, 4.0};
    const auto dv = hermitian_matvec(diag, v);
    for (std::size_t i = 0; i < 3; ++i) CHECK(dv[i] == diag.d[i] * v[i]);

    const ComplexMatrix h = gen_iid(12, 5, 3);
    const HermitianSplit w = regularized_gram(h, 0.3);
    std::vector<cplx> x(5);
    Rng rng(9);
    for (auto& e : x) e = rng.cgaussian();
    const auto fast = hermitian_matvec(w, x);
    const auto dense = matvec(w.dense(), x);
    for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(fast[i] - dense[i]) < 1e-12);
}

TEST_CASE("hermitian_matvec rejects a dimension mismatch") {
    HermitianSplit w(3);
    CHECK_THROWS_AS(hermitian_matvec(w, std::vector<cplx>(2)), std::invalid_argument);
}

TEST_CASE("factorization succeeds over many random regularized channels") {
    // Regularized Gram matrices of i.i.d. channels are Hermitian positive
    // definite with probability one; the factorization must never fail.
    for (std::uint64_t trial = 0; trial < 10000; ++trial) {
        const ComplexMatrix h = gen_iid(16, 8, derive_seed(1234, trial));
        const HermitianSplit w = regularized_gram(h, 0.05);
        CHECK_NOTHROW(cholesky_factor(w));
    }
}

TEST_CASE("round trip: C * solve_lower(C, b) recovers b") {
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        const ComplexMatrix h = gen_iid(24, 6, derive_seed(77, trial));
        const HermitianSplit w = regularized_gram(h, 0.2);
        const ComplexMatrix c = cholesky_factor(w);
        Rng rng(derive_seed(78, trial));
        std::vector<cplx> b(6);
        for (auto& v : b) v = rng.cgaussian();
        const std::vector<cplx> x = solve_lower(c, b);
        for (std::size_t i = 0; i < 6; ++i) {
            cplx acc = 0.0;
            for (std::size_t j = 0; j <= i; ++j) acc += c(i, j) * x[j];
            CHECK(std::abs(acc - b[i]) < 1e-10);
        }
    }
}
