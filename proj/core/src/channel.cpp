// SPDX-License-Identifier: Apache-2.0
//
// gsdet: soft-output Gauss-Seidel detection lab for massive MIMO uplink.
// Copyright (C) 2026 The gsdet authors

#include "gsdet/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace gsdet {

double snr_to_n0(std::size_t n_t, double snr_db) {
    if (n_t < 1) throw std::invalid_argument("snr_to_n0: n_t must be >= 1");
    return static_cast<double>(n_t) / std::pow(10.0, snr_db / 10.0);
}

ComplexMatrix gen_iid(std::size_t n_r, std::size_t n_t, Rng& rng) {
    if (n_r < n_t || n_t < 1)
        throw std::invalid_argument("gen_iid: require n_r >= n_t >= 1");
    ComplexMatrix h(n_r, n_t);
    for (std::size_t i = 0; i < n_r; ++i)
        for (std::size_t j = 0; j < n_t; ++j) h(i, j) = rng.cgaussian();
    return h;
}

ComplexMatrix gen_iid(std::size_t n_r, std::size_t n_t, std::uint64_t seed) {
    Rng rng(seed);
    return gen_iid(n_r, n_t, rng);
}

ComplexMatrix exp_correlation(std::size_t n, double zeta) {
    if (zeta < 0.0 || zeta > 1.0)
        throw std::invalid_argument("exp_correlation: zeta must be in [0, 1]");
    ComplexMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r(i, j) = std::pow(zeta, std::abs(static_cast<double>(i) - static_cast<double>(j)));
    return r;
}

ComplexMatrix correlation_sqrt(std::size_t n, double zeta) {
    // Cholesky fails only at zeta = 1 (rank one), which the guard below maps
    // to a clear error instead of a numerics exception.
    const ComplexMatrix r = exp_correlation(n, zeta);
    try {
        return cholesky_factor(HermitianSplit::from_dense(r));
    } catch (const std::domain_error&) {
        throw std::domain_error("correlation_sqrt: correlation matrix not positive definite");
    }
}

ComplexMatrix apply_kronecker(const ComplexMatrix& h_w, const ComplexMatrix& c_r,
                              const ComplexMatrix& c_t) {
    return matmul(matmul(c_r, h_w), adjoint(c_t));
}

ComplexMatrix apply_kronecker(const ComplexMatrix& h_w, const KroneckerSpec& spec) {
    const ComplexMatrix c_r = correlation_sqrt(h_w.rows(), spec.zeta_r);
    const ComplexMatrix c_t = correlation_sqrt(h_w.cols(), spec.zeta_t);
    return apply_kronecker(h_w, c_r, c_t);
}

std::vector<cplx> transmit(const ChannelRealization& ch, const std::vector<cplx>& s,
                           Rng& rng) {
    if (s.size() != ch.n_t)
        throw std::invalid_argument("transmit: symbol vector length != n_t");
    std::vector<cplx> y = matvec(ch.h, s);
    if (ch.n0 > 0.0) {
        const double sigma = std::sqrt(ch.n0);
        for (cplx& v : y) v += sigma * rng.cgaussian();
    }
    return y;
}

std::vector<cplx> transmit(const ChannelRealization& ch, const std::vector<cplx>& s,
                           std::uint64_t seed) {
    Rng rng(seed);
    return transmit(ch, s, rng);
}

} // namespace gsdet
