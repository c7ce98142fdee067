// SPDX-License-Identifier: Apache-2.0
//
// gsdet: soft-output Gauss-Seidel detection lab for massive MIMO uplink.
// Copyright (C) 2026 The gsdet authors

#include "gsdet/coding.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

#include "gsdet/rng.hpp"

namespace gsdet {

namespace {

unsigned parity(std::uint32_t v) { return std::popcount(v) & 1u; }

} // namespace

void ConvCode::validate() const {
    if (constraint_length < 2 || constraint_length > 9)
        throw std::invalid_argument("ConvCode: constraint length out of range");
    const std::uint32_t top = 1u << (constraint_length - 1);
    const std::uint32_t mask = (top << 1) - 1;
    if (g1_octal > mask || g2_octal > mask)
        throw std::invalid_argument("ConvCode: generator exceeds constraint length");
    if (!(g1_octal & top) || !(g2_octal & top))
        throw std::invalid_argument("ConvCode: generators must be delay-free (leading tap 1)");
}

std::vector<std::uint8_t> conv_encode(const ConvCode& code,
                                      const std::vector<std::uint8_t>& info) {
    code.validate();
    if (info.empty()) throw std::invalid_argument("conv_encode: empty input");

    const unsigned m = code.memory();
    const std::size_t steps = info.size() + m;
    std::vector<std::uint8_t> out(2 * steps);

    std::uint32_t state = 0; // m most recent inputs, newest in bit m-1
    for (std::size_t t = 0; t < steps; ++t) {
        const std::uint32_t u = (t < info.size()) ? (info[t] & 1u) : 0u;
        const std::uint32_t combined = (u << m) | state;
        out[2 * t + 0] = static_cast<std::uint8_t>(parity(combined & code.g1_octal));
        out[2 * t + 1] = static_cast<std::uint8_t>(parity(combined & code.g2_octal));
        state = combined >> 1;
    }
    return out;
}

std::vector<std::uint8_t> viterbi_decode_soft(const ConvCode& code,
                                              const std::vector<double>& llrs) {
    code.validate();
    const unsigned m = code.memory();
    if (llrs.size() % 2 != 0 || llrs.size() / 2 <= m)
        throw std::invalid_argument("viterbi_decode_soft: malformed LLR length");
    const std::size_t steps = llrs.size() / 2;
    const std::size_t info_len = steps - m;
    const std::size_t n_states = code.states();

    // Branch structure per (state, input): successor and the two coded bits.
    std::vector<std::uint32_t> next(n_states * 2);
    std::vector<std::uint8_t> out1(n_states * 2), out2(n_states * 2);
    for (std::uint32_t s = 0; s < n_states; ++s) {
        for (std::uint32_t u = 0; u < 2; ++u) {
            const std::uint32_t combined = (u << m) | s;
            next[s * 2 + u] = combined >> 1;
            out1[s * 2 + u] = static_cast<std::uint8_t>(parity(combined & code.g1_octal));
            out2[s * 2 + u] = static_cast<std::uint8_t>(parity(combined & code.g2_octal));
        }
    }

    const double ninf = -std::numeric_limits<double>::infinity();
    std::vector<double> metric(n_states, ninf), metric_next(n_states);
    metric[0] = 0.0; // zero-tail code starts in the all-zero state
    std::vector<std::uint8_t> decisions(steps * n_states);

    for (std::size_t t = 0; t < steps; ++t) {
        std::fill(metric_next.begin(), metric_next.end(), ninf);
        const double l1 = llrs[2 * t + 0];
        const double l2 = llrs[2 * t + 1];
        const bool tail = t >= info_len;
        for (std::uint32_t s = 0; s < n_states; ++s) {
            if (metric[s] == ninf) continue;
            const unsigned u_max = tail ? 1 : 2; // tail forces zero inputs
            for (std::uint32_t u = 0; u < u_max; ++u) {
                const std::size_t e = s * 2 + u;
                const double branch = (out1[e] ? l1 : -l1) + (out2[e] ? l2 : -l2);
                const double cand = metric[s] + branch;
                const std::uint32_t ns = next[e];
                if (cand > metric_next[ns]) {
                    metric_next[ns] = cand;
                    // Predecessor state is recoverable from (ns, u): store the
                    // dropped oldest bit of s instead of s itself.
                    decisions[t * n_states + ns] = static_cast<std::uint8_t>(((s & 1u) << 1) | u);
                }
            }
        }
        metric.swap(metric_next);
    }

    // Zero-tail termination: the surviving path ends in state 0.
    std::vector<std::uint8_t> info(info_len);
    std::uint32_t s = 0;
    for (std::size_t t = steps; t-- > 0;) {
        const std::uint8_t dec = decisions[t * n_states + s];
        const std::uint32_t u = dec & 1u;
        const std::uint32_t oldest = (dec >> 1) & 1u;
        if (t < info_len) info[t] = static_cast<std::uint8_t>(u);
        // Invert the transition: predecessor = (s without its top bit) << 1 | oldest.
        s = ((s << 1) | oldest) & (static_cast<std::uint32_t>(n_states) - 1);
    }
    return info;
}

std::vector<std::size_t> make_interleaver(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    Rng rng(derive_seed(seed, 0x1A7E11EAull, n));
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_u64() % i);
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

} // namespace gsdet
