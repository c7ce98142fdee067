// SPDX-License-Identifier: Apache-2.0
//
// gsdet: soft-output Gauss-Seidel detection lab for massive MIMO uplink.
// Copyright (C) 2026 The gsdet authors

#ifndef GSDET_CODING_HPP
#define GSDET_CODING_HPP

#include <cstdint>
#include <vector>

namespace gsdet {

/// Rate-1/2 convolutional code, zero-tail terminated. Generators are given
/// in octal with the most significant tap acting on the current input bit
/// (delay-free). Default is the constraint-length-7 (133, 171) pair.
struct ConvCode {
    unsigned constraint_length = 7;
    unsigned g1_octal = 0133;
    unsigned g2_octal = 0171;

    unsigned memory() const { return constraint_length - 1; }
    std::size_t states() const { return std::size_t{1} << memory(); }

    static ConvCode standard_k7() { return ConvCode{}; }
    void validate() const;
};

/// Zero-tail encoding: output has 2 * (info.size() + constraint_length - 1)
/// bits, the pair for each input step emitted g1 first.
std::vector<std::uint8_t> conv_encode(const ConvCode& code,
                                      const std::vector<std::uint8_t>& info);

/// Soft-input Viterbi decoding over the zero-tail trellis. LLR convention:
/// positive means coded bit 1. Returns the information bits (tail dropped).
std::vector<std::uint8_t> viterbi_decode_soft(const ConvCode& code,
                                              const std::vector<double>& llrs);

/// Fixed pseudo-random interleaver: one Fisher-Yates permutation per block
/// length, drawn from a stream salted with the length so all frames of a
/// run share it.
std::vector<std::size_t> make_interleaver(std::size_t n, std::uint64_t seed);

template <typename T>
std::vector<T> permute(const std::vector<T>& v, const std::vector<std::size_t>& perm) {
    std::vector<T> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[perm[i]] = v[i];
    return out;
}

template <typename T>
std::vector<T> unpermute(const std::vector<T>& v, const std::vector<std::size_t>& perm) {
    std::vector<T> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[perm[i]];
    return out;
}

} // namespace gsdet

#endif
