// SPDX-License-Identifier: Apache-2.0
//
// gsdet: soft-output Gauss-Seidel detection lab for massive MIMO uplink.
// Copyright (C) 2026 The gsdet authors

#ifndef GSDET_RNG_HPP
#define GSDET_RNG_HPP

#include <cstdint>
#include <random>

#include "gsdet/numerics.hpp"

namespace gsdet {

/// Seedable random source with a platform-stable stream: mt19937_64 is fully
/// specified by the C++ standard, and the Gaussian transform (Box-Muller) is
/// implemented here instead of relying on std::normal_distribution, whose
/// output sequence is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard real Gaussian N(0, 1).
    double gaussian();

    /// Circularly symmetric complex Gaussian, unit variance per entry
    /// (real and imaginary parts each N(0, 1/2)).
    cplx cgaussian();

    bool bit() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

/// Deterministic seed mixing for independent worker/trial streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t s1, std::uint64_t s2 = 0);

} // namespace gsdet

#endif
