// SPDX-License-Identifier: Apache-2.0
//
// gsdet: soft-output Gauss-Seidel detection lab for massive MIMO uplink.
// Copyright (C) 2026 The gsdet authors

#ifndef GSDET_DETECT_HPP
#define GSDET_DETECT_HPP

#include <cstdint>
#include <vector>

#include "gsdet/channel.hpp"
#include "gsdet/modem.hpp"
#include "gsdet/numerics.hpp"

namespace gsdet {

/// Regularized Gram system: W = H^H H + n0 I split into diagonal and strict
/// lower triangle, plus the matched-filter vector y_mf = H^H y.
struct GramSystem {
    HermitianSplit split;
    std::vector<cplx> y_mf;
    double n0 = 0.0;
    std::size_t n_t = 0;
    std::size_t n_r = 0;
};

/// 2-term Neumann approximation of W^-1: D^-1 - D^-1 E D^-1 with E the
/// off-diagonal part. Its diagonal is exactly 1/d_i since E has zero
/// diagonal; those entries feed the approximate-gain stage.
struct Nse2Inverse {
    ComplexMatrix w2_inv;
    std::vector<double> diag;
};

/// Equalizer output plus everything the LLR stage derives from it.
struct DetectionResult {
    std::vector<cplx> s_hat;
    std::vector<cplx> z;        // s_hat / mu
    std::vector<double> mu;     // effective channel gains, clamped to (0, 1)
    std::vector<double> rho;    // post-equalization SINR mu / (1 - mu)
    std::vector<double> llrs;   // n_t * B values, stream-major
    unsigned clamped_gains = 0; // how many mu fell outside [eps, 1-eps]
};

/// Complex-multiplication instrumentation. Reciprocals are charged as one
/// multiply each, matching how the cost model accounts for the lookup-table
/// reciprocal unit. `core` covers the approximate inverse, the initial
/// solution and the sweeps; the n_t gain multiplies are kept separate.
struct MultCount {
    std::uint64_t core = 0;
    std::uint64_t gain = 0;
};

enum class InitMode { zero, diag, nse2 };

/// Effective-gain clamp bound: mu is confined to [kGainEpsilon, 1 - kGainEpsilon]
/// before rho = mu / (1 - mu), which keeps the n0 -> 0 limit finite.
inline constexpr double kGainEpsilon = 1e-6;

/// Builds W (lower triangle only, mirrored by the split) and y_mf.
GramSystem preprocess(const ChannelRealization& ch, const std::vector<cplx>& y);

/// Replaces y_mf for a new receive vector over the same channel; the Gram
/// half of the preprocessing is reused across a block-fading frame.
void update_matched_filter(GramSystem& g, const ChannelRealization& ch,
                           const std::vector<cplx>& y);

Nse2Inverse nse2_inverse(const GramSystem& g, MultCount* mc = nullptr);

std::vector<cplx> initial_solution(const GramSystem& g, InitMode mode,
                                   MultCount* mc = nullptr);

/// One Gauss-Seidel sweep, forward substitution on (D + L); no inverse is
/// formed.
std::vector<cplx> gs_iterate(const GramSystem& g, const std::vector<cplx>& s_prev,
                             MultCount* mc = nullptr);

/// The improved GS detector: 2-term NSE initialization, k sweeps,
/// approximate gains mu_i = 1 - n0 * (W2^-1)_ii, then max-log LLRs.
DetectionResult igs_detect(const GramSystem& g, unsigned k, const Constellation& cst,
                           MultCount* mc = nullptr);

/// GS with a selectable initial solution and the same approximate-gain LLR
/// stage, so initialization is the only thing the curves compare.
DetectionResult gs_detect(const GramSystem& g, InitMode mode, unsigned k,
                          const Constellation& cst);

/// Cholesky-based exact MMSE with exact gains from U = I - n0 W^-1.
DetectionResult exact_mmse_detect(const GramSystem& g, const Constellation& cst);

/// Neumann-series baseline: s = sum_{k<K} (I - D^-1 W)^k D^-1 y_mf, gains
/// from the diagonal of the K-term inverse. k_terms = 2 routes through the
/// same code path as the IGS initial solution (bit-identical results).
DetectionResult nse_detect(const GramSystem& g, unsigned k_terms, const Constellation& cst);

/// Shared LLR stage: clamp gains, z = s_hat / mu, rho = mu / (1 - mu),
/// llr(i, b) = rho_i * lambda_b(z_i).
DetectionResult finalize_detection(std::vector<cplx> s_hat, std::vector<double> mu_raw,
                                   const Constellation& cst);

} // namespace gsdet

#endif
