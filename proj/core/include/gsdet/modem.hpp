// SPDX-License-Identifier: Apache-2.0
//
// gsdet: soft-output Gauss-Seidel detection lab for massive MIMO uplink.
// Copyright (C) 2026 The gsdet authors

#ifndef GSDET_MODEM_HPP
#define GSDET_MODEM_HPP

#include <cstdint>
#include <vector>

#include "gsdet/numerics.hpp"

namespace gsdet {

/// Gray-labelled square QAM with unit average symbol energy. A symbol label
/// is the B-bit integer formed MSB-first from its bits; the first B/2 bits
/// select the in-phase level, the last B/2 the quadrature level, each via a
/// binary-reflected Gray code.
///
/// Per-bit metric convention: lambda_b(z) = min over 0-labelled points of
/// |z - a|^2 minus min over 1-labelled points, so lambda_b > 0 means the
/// nearest point carries bit 1 and rho * lambda_b is ln Pr[bit=1]/Pr[bit=0].
class Constellation {
public:
    static const Constellation& qpsk();
    static const Constellation& qam16();
    static const Constellation& qam64();
    static const Constellation& from_bits_per_symbol(unsigned b);

    unsigned bits_per_symbol() const { return bits_; }
    unsigned bits_per_axis() const { return axis_bits_; }
    std::size_t size() const { return points_.size(); }

    /// Points indexed by label.
    const std::vector<cplx>& points() const { return points_; }

    /// Axis amplitude for an axis label (Gray-decoded level position).
    double axis_level(std::uint32_t axis_label) const { return axis_levels_[axis_label]; }

    cplx map_label(std::uint32_t label) const { return points_[label]; }
    std::uint32_t hard_nearest(cplx z) const;

    /// Exhaustive subset-minimum over all 2^B points; the ground truth.
    double lambda_brute(cplx z, unsigned bit) const;

    /// Gray-mapping fast path: the metric separates per axis, so only the
    /// 2^(B/2) levels of the bit's own axis are searched.
    double lambda(cplx z, unsigned bit) const;

private:
    explicit Constellation(unsigned bits_per_symbol);

    unsigned bits_ = 0;
    unsigned axis_bits_ = 0;
    std::vector<double> axis_levels_; // indexed by axis label
    std::vector<cplx> points_;        // indexed by symbol label
};

/// Maps a bit stream (values 0/1), B bits per symbol, MSB first.
std::vector<cplx> map_bits(const Constellation& c, const std::vector<std::uint8_t>& bits);

/// Nearest-point hard decisions back to bits.
std::vector<std::uint8_t> hard_demap(const Constellation& c, const std::vector<cplx>& symbols);

} // namespace gsdet

#endif
