// SPDX-License-Identifier: Apache-2.0
//
// gsdet: soft-output Gauss-Seidel detection lab for massive MIMO uplink.
// Copyright (C) 2026 The gsdet authors

#ifndef GSDET_FXP_HPP
#define GSDET_FXP_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "gsdet/detect.hpp"

namespace gsdet {

/// Two's-complement fixed-point format. Values live on the 2^-frac_bits grid
/// within [min_value, max_value]; arithmetic in the model is done in double,
/// which is exact for these word lengths, and requantized at the points where
/// the architecture rounds.
struct FxpFormat {
    unsigned total_bits = 15;
    unsigned frac_bits = 10;
    bool is_signed = true;

    double resolution() const { return std::ldexp(1.0, -static_cast<int>(frac_bits)); }
    double max_value() const {
        const unsigned mag = total_bits - (is_signed ? 1u : 0u);
        return std::ldexp(1.0, static_cast<int>(mag - frac_bits)) - resolution();
    }
    double min_value() const {
        if (!is_signed) return 0.0;
        return -std::ldexp(1.0, static_cast<int>(total_bits - 1) - static_cast<int>(frac_bits));
    }
};

/// Saturation bookkeeping; saturation itself is silent.
struct QuantStats {
    std::uint64_t samples = 0;
    std::uint64_t saturations = 0;
};

/// Round to nearest (ties to even), saturate at the format bounds.
double quantize(double x, const FxpFormat& fmt, QuantStats* stats = nullptr);
cplx quantize(cplx v, const FxpFormat& fmt, QuantStats* stats = nullptr);

/// Offset-flag compressed Gram entry. The regularized Gram matrix of a
/// loaded massive-MIMO system has entries clustered around 0 (off-diagonal)
/// and around n_t (diagonal); the flag records which cluster, the payload the
/// small remainder on the shared Gram grid.
struct CompressedEntry {
    bool offset_flag = false;
    double payload = 0.0; // already on the payload grid
};

/// flag = (x > n_t / 2), payload = quantize(x - flag * n_t). The comparison
/// is strict, so x = n_t / 2 keeps flag 0.
CompressedEntry compress_gram(double x, std::size_t n_t, const FxpFormat& payload_fmt,
                              QuantStats* stats = nullptr);
CompressedEntry compress_gram(double x, std::size_t n_t);

/// payload + flag * n_t; exact grid arithmetic.
double decompress_gram(const CompressedEntry& e, std::size_t n_t);

/// Lookup-table reciprocal: 1024 entries over the normalized mantissa range
/// [0.5, 1), 15-bit outputs, input normalization by power-of-two shift.
class ReciprocalTable {
public:
    ReciprocalTable();
    double reciprocal(double x) const;
    static const ReciprocalTable& shared();

private:
    std::vector<double> entries_;
};

/// Word-length table of the fixed-point pipeline. Total widths follow the
/// implemented architecture (15-bit inputs, 9-bit compressed Gram, 22-bit
/// MAC registers, 15/12-bit SINR unit, 12/10-bit LLR unit, 1024-entry
/// reciprocal table); binary points were fixed by dynamic-range measurement
/// over the simulated operating range and are documented in the README.
struct FxpProfile {
    FxpFormat h{15, 11};
    FxpFormat y{15, 10};
    FxpFormat n0{15, 10};
    FxpFormat mac_pu{22, 9};    // Gram / matched-filter accumulators
    FxpFormat gram{15, 5};      // scaled Gram grid, shared with the payload
    FxpFormat payload{9, 5};    // compressed off-cluster remainder
    FxpFormat mf{15, 10};       // scaled matched-filter output
    FxpFormat nse_inv{15, 14};  // 2-term inverse entries
    FxpFormat mac_iscu{22, 18}; // initial-solution accumulator
    FxpFormat gs_value{15, 12}; // symbol estimates
    FxpFormat mac_gs{22, 18};   // sweep accumulator
    FxpFormat scu_in{15, 13};
    FxpFormat scu_out{12, 2};
    FxpFormat lcu_in{12, 9};
    FxpFormat lcu_out{10, 1};

    /// The Gram/payload binary point depends on n_t: the flag-0 window must
    /// represent values up to n_t / 2 exactly.
    static FxpProfile defaults(std::size_t n_t);
};

struct FxpDetectStats {
    QuantStats h, y, n0;
    QuantStats mac_pu, gram, payload, mf;
    QuantStats nse_inv, mac_iscu, gs_value, mac_gs;
    QuantStats scu, lcu_z, llr;
};

/// Dynamic-range normalization of the GS unit inputs: y' = y_mf / n_r with
/// the triangular operands scaled to match, leaving the recursion result
/// unchanged. shift is log2(n_r) when n_r is a power of two, else -1 and the
/// scaling is a plain multiply.
struct ScaledGsInputs {
    std::vector<cplx> y_scaled;
    int shift = 0;
    double factor = 1.0; // 1 / n_r
};

ScaledGsInputs scale_gs_inputs(const GramSystem& g);

/// One GS sweep on the scaled operands; equals gs_iterate up to floating
/// rounding.
std::vector<cplx> gs_iterate_scaled(const GramSystem& g, const ScaledGsInputs& sc,
                                    const std::vector<cplx>& s_prev);

/// Bit-accurate fixed-point IGS pipeline. The Gram matrix and matched filter
/// are scaled by n_t / n_r at the preprocessing output (a shift when both are
/// powers of two), which centers the diagonal cluster at n_t for the
/// compression scheme and, combined with the GS-unit input shift by 1/n_t,
/// realizes the y' = y_mf / n_r normalization. Detection results are
/// invariant to that common scaling.
DetectionResult igs_detect_fxp(const ChannelRealization& ch, const std::vector<cplx>& y,
                               unsigned k, const Constellation& cst, const FxpProfile& prof,
                               FxpDetectStats* stats = nullptr, bool gs_input_scaling = true);

} // namespace gsdet

#endif
