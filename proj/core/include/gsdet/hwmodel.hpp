// SPDX-License-Identifier: Apache-2.0
//
// gsdet: soft-output Gauss-Seidel detection lab for massive MIMO uplink.
// Copyright (C) 2026 The gsdet authors

#ifndef GSDET_HWMODEL_HPP
#define GSDET_HWMODEL_HPP

#include <cstdint>
#include <map>
#include <string>

namespace gsdet {

/// Analytical cost of one detection on the modeled pipeline.
struct CostReport {
    std::uint64_t complex_mults = 0; // (k + 2) * n_t^2 core total
    std::uint64_t gain_mults = 0;    // the extra n_t for the effective gains
    std::uint64_t latency_cycles = 0;
    std::map<std::string, std::uint64_t> per_stage;
};

struct MultEstimate {
    std::uint64_t core = 0;
    std::uint64_t gain = 0;
};

/// Complex multiplies of the detector core: n_t^2 for the 2-term inverse
/// (one triangle plus the diagonal reciprocals), n_t^2 for the initial
/// solution, n_t^2 per sweep. The n_t gain multiplies are itemized on top of
/// that total rather than folded in, mirroring how the accounting is stated.
MultEstimate count_mults(std::size_t n_t, unsigned k);

enum class Schedule { baseline, rescheduled };

/// Pipeline-stage cycle counts and their critical-path sum.
///
/// Stages: matched filter n_t + n_r - 1 and Gram computation 2 n_t + n_r - 1
/// run in parallel; the approximate inverse takes n_t cycles and the initial
/// solution 2 n_t - 1. A rescheduled iteration costs 2 n_t + 1 cycles (two
/// reversed-order triangular matvecs of n_t each plus one adder cycle); the
/// baseline order costs 2 (2 n_t - 1) + 1. The remaining overlap of the SINR
/// and LLR units is a single constant, kPipelineTailCycles, calibrated once
/// at (n_r = 128, n_t = 8, k = 1) -> 202 cycles and then frozen.
CostReport latency_estimate(std::size_t n_r, std::size_t n_t, unsigned k, Schedule sched);

inline constexpr std::uint64_t kPipelineTailCycles = 19;

std::uint64_t iteration_cycles(std::size_t n_t, Schedule sched);

} // namespace gsdet

#endif
