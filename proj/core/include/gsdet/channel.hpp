// SPDX-License-Identifier: Apache-2.0
//
// gsdet: soft-output Gauss-Seidel detection lab for massive MIMO uplink.
// Copyright (C) 2026 The gsdet authors

#ifndef GSDET_CHANNEL_HPP
#define GSDET_CHANNEL_HPP

#include <cstdint>
#include <vector>

#include "gsdet/numerics.hpp"
#include "gsdet/rng.hpp"

namespace gsdet {

/// One uplink channel draw: y = H s + n with n ~ CN(0, n0 I).
struct ChannelRealization {
    ComplexMatrix h; // n_r x n_t
    double n0 = 0.0; // noise variance per complex entry
    std::size_t n_r = 0;
    std::size_t n_t = 0;
};

/// Exponential correlation factors for the Kronecker model, receive (BS)
/// side and transmit (user) side. R_ij = zeta^|i-j| on each side.
struct KroneckerSpec {
    double zeta_r = 0.0;
    double zeta_t = 0.0;
};

/// Average SNR per receive antenna: SNR = n_t * E_s / N0 with E_s = 1,
/// so N0 = n_t / 10^(snr_db / 10).
double snr_to_n0(std::size_t n_t, double snr_db);

/// i.i.d. CN(0, 1) channel matrix, filled row-major from the seeded stream.
ComplexMatrix gen_iid(std::size_t n_r, std::size_t n_t, std::uint64_t seed);
ComplexMatrix gen_iid(std::size_t n_r, std::size_t n_t, Rng& rng);

/// Exponential correlation matrix R_ij = zeta^|i-j| (real, symmetric PD for
/// zeta < 1).
ComplexMatrix exp_correlation(std::size_t n, double zeta);

/// Lower Cholesky factor of exp_correlation(n, zeta); the matrix square
/// root used when coloring an i.i.d. draw.
ComplexMatrix correlation_sqrt(std::size_t n, double zeta);

/// H = C_r H_w C_t^H with C_r, C_t the correlation square roots. Pass the
/// precomputed factors when applying the same spec to many draws.
ComplexMatrix apply_kronecker(const ComplexMatrix& h_w, const KroneckerSpec& spec);
ComplexMatrix apply_kronecker(const ComplexMatrix& h_w, const ComplexMatrix& c_r,
                              const ComplexMatrix& c_t);

/// y = H s + n, noise drawn from the seeded stream.
std::vector<cplx> transmit(const ChannelRealization& ch, const std::vector<cplx>& s,
                           std::uint64_t seed);
std::vector<cplx> transmit(const ChannelRealization& ch, const std::vector<cplx>& s,
                           Rng& rng);

} // namespace gsdet

#endif
