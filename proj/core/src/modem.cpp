// SPDX-License-Identifier: Apache-2.0
//
// gsdet: soft-output Gauss-Seidel detection lab for massive MIMO uplink.
// Copyright (C) 2026 The gsdet authors

#include "gsdet/modem.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gsdet {

namespace {

std::uint32_t gray_encode(std::uint32_t m) { return m ^ (m >> 1); }

} // namespace

Constellation::Constellation(unsigned bits_per_symbol) : bits_(bits_per_symbol) {
    if (bits_ == 0 || bits_ % 2 != 0)
        throw std::invalid_argument("Constellation: bits per symbol must be even and > 0");
    axis_bits_ = bits_ / 2;
    const std::uint32_t levels = 1u << axis_bits_;

    // Unit average energy: E_s = 2 * delta^2 * (L^2 - 1) / 3 = 1.
    const double delta = std::sqrt(3.0 / (2.0 * (static_cast<double>(levels) * levels - 1.0)));

    axis_levels_.assign(levels, 0.0);
    for (std::uint32_t pos = 0; pos < levels; ++pos) {
        const double amp = (2.0 * pos - (levels - 1.0)) * delta;
        axis_levels_[gray_encode(pos)] = amp;
    }

    points_.assign(std::size_t{1} << bits_, cplx{});
    for (std::uint32_t label = 0; label < points_.size(); ++label) {
        const std::uint32_t vi = label >> axis_bits_;
        const std::uint32_t vq = label & (levels - 1);
        points_[label] = {axis_levels_[vi], axis_levels_[vq]};
    }
}

const Constellation& Constellation::qpsk() {
    static const Constellation c(2);
    return c;
}

const Constellation& Constellation::qam16() {
    static const Constellation c(4);
    return c;
}

const Constellation& Constellation::qam64() {
    static const Constellation c(6);
    return c;
}

const Constellation& Constellation::from_bits_per_symbol(unsigned b) {
    switch (b) {
        case 2: return qpsk();
        case 4: return qam16();
        case 6: return qam64();
        default: throw std::invalid_argument("Constellation: supported sizes are 2/4/6 bits");
    }
}

std::uint32_t Constellation::hard_nearest(cplx z) const {
    std::uint32_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::uint32_t label = 0; label < points_.size(); ++label) {
        const double d = std::norm(z - points_[label]);
        if (d < best_d) {
            best_d = d;
            best = label;
        }
    }
    return best;
}

double Constellation::lambda_brute(cplx z, unsigned bit) const {
    if (bit >= bits_) throw std::invalid_argument("lambda_brute: bit index out of range");
    const unsigned shift = bits_ - 1 - bit;
    double min0 = std::numeric_limits<double>::infinity();
    double min1 = std::numeric_limits<double>::infinity();
    for (std::uint32_t label = 0; label < points_.size(); ++label) {
        const double d = std::norm(z - points_[label]);
        if ((label >> shift) & 1u)
            min1 = std::min(min1, d);
        else
            min0 = std::min(min0, d);
    }
    return min0 - min1;
}

double Constellation::lambda(cplx z, unsigned bit) const {
    if (bit >= bits_) throw std::invalid_argument("lambda: bit index out of range");
    double x;
    unsigned axis_bit;
    if (bit < axis_bits_) {
        x = z.real();
        axis_bit = bit;
    } else {
        x = z.imag();
        axis_bit = bit - axis_bits_;
    }
    const unsigned shift = axis_bits_ - 1 - axis_bit;
    const std::uint32_t levels = 1u << axis_bits_;
    double min0 = std::numeric_limits<double>::infinity();
    double min1 = std::numeric_limits<double>::infinity();
    for (std::uint32_t v = 0; v < levels; ++v) {
        const double diff = x - axis_levels_[v];
        const double d = diff * diff;
        if ((v >> shift) & 1u)
            min1 = std::min(min1, d);
        else
            min0 = std::min(min0, d);
    }
    return min0 - min1;
}

std::vector<cplx> map_bits(const Constellation& c, const std::vector<std::uint8_t>& bits) {
    const unsigned b = c.bits_per_symbol();
    if (bits.size() % b != 0)
        throw std::invalid_argument("map_bits: bit count not divisible by bits per symbol");
    std::vector<cplx> out(bits.size() / b);
    for (std::size_t s = 0; s < out.size(); ++s) {
        std::uint32_t label = 0;
        for (unsigned j = 0; j < b; ++j) label = (label << 1) | (bits[s * b + j] & 1u);
        out[s] = c.map_label(label);
    }
    return out;
}

std::vector<std::uint8_t> hard_demap(const Constellation& c, const std::vector<cplx>& symbols) {
    const unsigned b = c.bits_per_symbol();
    std::vector<std::uint8_t> bits(symbols.size() * b);
    for (std::size_t s = 0; s < symbols.size(); ++s) {
        const std::uint32_t label = c.hard_nearest(symbols[s]);
        for (unsigned j = 0; j < b; ++j)
            bits[s * b + j] = static_cast<std::uint8_t>((label >> (b - 1 - j)) & 1u);
    }
    return bits;
}

} // namespace gsdet
