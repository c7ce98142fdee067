// SPDX-License-Identifier: Apache-2.0
//
// gsdet: soft-output Gauss-Seidel detection lab for massive MIMO uplink.
// Copyright (C) 2026 The gsdet authors

#include "gsdet/hwmodel.hpp"

#include <stdexcept>

namespace gsdet {

MultEstimate count_mults(std::size_t n_t, unsigned k) {
    if (n_t < 1) throw std::invalid_argument("count_mults: n_t must be >= 1");
    const std::uint64_t n = n_t;
    return MultEstimate{(static_cast<std::uint64_t>(k) + 2) * n * n, n};
}

std::uint64_t iteration_cycles(std::size_t n_t, Schedule sched) {
    const std::uint64_t n = n_t;
    return sched == Schedule::rescheduled ? 2 * n + 1 : 2 * (2 * n - 1) + 1;
}

CostReport latency_estimate(std::size_t n_r, std::size_t n_t, unsigned k, Schedule sched) {
    if (n_t < 1 || n_r < n_t)
        throw std::invalid_argument("latency_estimate: require n_r >= n_t >= 1");
    const std::uint64_t n = n_t;
    const std::uint64_t mf = n + n_r - 1;
    const std::uint64_t rgm = 2 * n + n_r - 1;
    const std::uint64_t pu = std::max(mf, rgm); // MF and RGM run concurrently
    const std::uint64_t iscu_nse = n;
    const std::uint64_t iscu_init = 2 * n - 1;
    const std::uint64_t per_iter = iteration_cycles(n_t, sched);
    const std::uint64_t iters = static_cast<std::uint64_t>(k) * per_iter;

    CostReport r;
    const MultEstimate m = count_mults(n_t, k);
    r.complex_mults = m.core;
    r.gain_mults = m.gain;
    r.per_stage["mf"] = mf;
    r.per_stage["rgm"] = rgm;
    r.per_stage["pu"] = pu;
    r.per_stage["iscu_nse"] = iscu_nse;
    r.per_stage["iscu_init"] = iscu_init;
    r.per_stage["gs_iter_each"] = per_iter;
    r.per_stage["gs_iterations"] = iters;
    r.per_stage["tail"] = kPipelineTailCycles;
    r.latency_cycles = pu + iscu_nse + iscu_init + iters + kPipelineTailCycles;
    return r;
}

} // namespace gsdet
