// SPDX-License-Identifier: Apache-2.0
//
// gsdet: soft-output Gauss-Seidel detection lab for massive MIMO uplink.
// Copyright (C) 2026 The gsdet authors

#include "gsdet/detect.hpp"

#include <cmath>
#include <stdexcept>

namespace gsdet {

namespace {

void count_core(MultCount* mc, std::uint64_t n) {
    if (mc) mc->core += n;
}

/// Plain dense matvec used for both the IGS initial solution and the
/// NSE(2) baseline, so the two are bit-identical by construction.
std::vector<cplx> w2_matvec(const Nse2Inverse& w2, const std::vector<cplx>& y,
                            MultCount* mc) {
    const std::size_t n = y.size();
    std::vector<cplx> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += w2.w2_inv(i, j) * y[j];
            count_core(mc, 1);
        }
        s[i] = acc;
    }
    return s;
}

std::vector<double> approx_gains(const GramSystem& g, const std::vector<double>& w2_diag,
                                 MultCount* mc) {
    std::vector<double> mu(g.n_t);
    for (std::size_t i = 0; i < g.n_t; ++i) {
        mu[i] = 1.0 - g.n0 * w2_diag[i];
        if (mc) mc->gain += 1;
    }
    return mu;
}

} // namespace

GramSystem preprocess(const ChannelRealization& ch, const std::vector<cplx>& y) {
    if (y.size() != ch.n_r)
        throw std::invalid_argument("preprocess: receive vector length != n_r");
    const std::size_t n = ch.n_t;
    GramSystem g;
    g.n_t = n;
    g.n_r = ch.n_r;
    g.n0 = ch.n0;
    g.split = HermitianSplit(n);

    // Only the lower triangle of G = H^H H is computed; the split mirrors it.
    for (std::size_t i = 0; i < n; ++i) {
        double dii = 0.0;
        for (std::size_t r = 0; r < ch.n_r; ++r) dii += std::norm(ch.h(r, i));
        g.split.d[i] = dii + ch.n0;
        for (std::size_t j = 0; j < i; ++j) {
            cplx acc = 0.0;
            for (std::size_t r = 0; r < ch.n_r; ++r)
                acc += std::conj(ch.h(r, i)) * ch.h(r, j);
            g.split.lower[HermitianSplit::lower_index(i, j)] = acc;
        }
    }

    g.y_mf.resize(n);
    update_matched_filter(g, ch, y);
    return g;
}

void update_matched_filter(GramSystem& g, const ChannelRealization& ch,
                           const std::vector<cplx>& y) {
    if (y.size() != ch.n_r || g.n_t != ch.n_t)
        throw std::invalid_argument("update_matched_filter: dimension mismatch");
    for (std::size_t i = 0; i < g.n_t; ++i) {
        cplx acc = 0.0;
        for (std::size_t r = 0; r < ch.n_r; ++r) acc += std::conj(ch.h(r, i)) * y[r];
        g.y_mf[i] = acc;
    }
}

Nse2Inverse nse2_inverse(const GramSystem& g, MultCount* mc) {
    const std::size_t n = g.n_t;
    Nse2Inverse w2;
    w2.w2_inv = ComplexMatrix(n, n);
    w2.diag.resize(n);

    std::vector<double> dinv(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(g.split.d[i] > 0.0))
            throw std::domain_error("nse2_inverse: non-positive diagonal entry");
        dinv[i] = 1.0 / g.split.d[i];
        count_core(mc, 1); // reciprocal, charged as one multiply
    }

    // Off-diagonal part -D^-1 E D^-1 is Hermitian; compute one triangle.
    for (std::size_t i = 0; i < n; ++i) {
        w2.w2_inv(i, i) = dinv[i];
        w2.diag[i] = dinv[i];
        for (std::size_t j = 0; j < i; ++j) {
            const cplx e = g.split.lower[HermitianSplit::lower_index(i, j)];
            const cplx v = -(e * dinv[i]) * dinv[j];
            count_core(mc, 2);
            w2.w2_inv(i, j) = v;
            w2.w2_inv(j, i) = std::conj(v);
        }
    }
    return w2;
}

std::vector<cplx> initial_solution(const GramSystem& g, InitMode mode, MultCount* mc) {
    const std::size_t n = g.n_t;
    switch (mode) {
        case InitMode::zero:
            return std::vector<cplx>(n, cplx{});
        case InitMode::diag: {
            std::vector<cplx> s(n);
            for (std::size_t i = 0; i < n; ++i) {
                if (!(g.split.d[i] > 0.0))
                    throw std::domain_error("initial_solution: non-positive diagonal entry");
                s[i] = g.y_mf[i] / g.split.d[i];
                count_core(mc, 1);
            }
            return s;
        }
        case InitMode::nse2: {
            const Nse2Inverse w2 = nse2_inverse(g, mc);
            return w2_matvec(w2, g.y_mf, mc);
        }
    }
    throw std::invalid_argument("initial_solution: unknown mode");
}

std::vector<cplx> gs_iterate(const GramSystem& g, const std::vector<cplx>& s_prev,
                             MultCount* mc) {
    const std::size_t n = g.n_t;
    if (s_prev.size() != n)
        throw std::invalid_argument("gs_iterate: dimension mismatch");
    std::vector<cplx> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(g.split.d[i] > 0.0))
            throw std::domain_error("gs_iterate: non-positive diagonal entry");
        cplx acc = g.y_mf[i];
        for (std::size_t j = 0; j < i; ++j) {
            acc -= g.split.lower[HermitianSplit::lower_index(i, j)] * s[j];
            count_core(mc, 1);
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            acc -= std::conj(g.split.lower[HermitianSplit::lower_index(j, i)]) * s_prev[j];
            count_core(mc, 1);
        }
        s[i] = acc / g.split.d[i];
        count_core(mc, 1); // multiply by the precomputed reciprocal
    }
    return s;
}

DetectionResult finalize_detection(std::vector<cplx> s_hat, std::vector<double> mu_raw,
                                   const Constellation& cst) {
    const std::size_t n = s_hat.size();
    DetectionResult r;
    r.s_hat = std::move(s_hat);
    r.mu.resize(n);
    r.z.resize(n);
    r.rho.resize(n);
    const unsigned b = cst.bits_per_symbol();
    r.llrs.resize(n * b);
    for (std::size_t i = 0; i < n; ++i) {
        double mu = mu_raw[i];
        if (!(mu >= kGainEpsilon) || !(mu <= 1.0 - kGainEpsilon)) {
            // Out-of-range gain approximation (possible under extreme
            // correlation or n0 -> 0); clamp and report instead of failing.
            mu = std::min(std::max(mu, kGainEpsilon), 1.0 - kGainEpsilon);
            ++r.clamped_gains;
        }
        r.mu[i] = mu;
        r.z[i] = r.s_hat[i] / mu;
        r.rho[i] = mu / (1.0 - mu);
        for (unsigned bit = 0; bit < b; ++bit)
            r.llrs[i * b + bit] = r.rho[i] * cst.lambda(r.z[i], bit);
    }
    return r;
}

DetectionResult igs_detect(const GramSystem& g, unsigned k, const Constellation& cst,
                           MultCount* mc) {
    const Nse2Inverse w2 = nse2_inverse(g, mc);
    std::vector<cplx> s = w2_matvec(w2, g.y_mf, mc);
    for (unsigned it = 0; it < k; ++it) s = gs_iterate(g, s, mc);
    return finalize_detection(std::move(s), approx_gains(g, w2.diag, mc), cst);
}

DetectionResult gs_detect(const GramSystem& g, InitMode mode, unsigned k,
                          const Constellation& cst) {
    if (mode == InitMode::nse2) return igs_detect(g, k, cst);
    std::vector<cplx> s = initial_solution(g, mode, nullptr);
    for (unsigned it = 0; it < k; ++it) s = gs_iterate(g, s, nullptr);
    std::vector<double> w2_diag(g.n_t);
    for (std::size_t i = 0; i < g.n_t; ++i) w2_diag[i] = 1.0 / g.split.d[i];
    return finalize_detection(std::move(s), approx_gains(g, w2_diag, nullptr), cst);
}

DetectionResult exact_mmse_detect(const GramSystem& g, const Constellation& cst) {
    const ComplexMatrix c = cholesky_factor(g.split);
    std::vector<cplx> s = solve_lower_adjoint(c, solve_lower(c, g.y_mf));

    // (W^-1)_ii = || column i of C^-1 ||^2; exact gains mu_i = 1 - n0 (W^-1)_ii.
    const std::size_t n = g.n_t;
    std::vector<double> mu(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<cplx> e(n, cplx{});
        e[i] = 1.0;
        const std::vector<cplx> col = solve_lower(c, e);
        double winv_ii = 0.0;
        for (const cplx& v : col) winv_ii += std::norm(v);
        mu[i] = 1.0 - g.n0 * winv_ii;
    }
    return finalize_detection(std::move(s), std::move(mu), cst);
}

DetectionResult nse_detect(const GramSystem& g, unsigned k_terms, const Constellation& cst) {
    if (k_terms < 1)
        throw std::invalid_argument("nse_detect: k_terms must be >= 1");
    const std::size_t n = g.n_t;

    if (k_terms == 2) {
        // Same estimator as the IGS initial solution; shared code path.
        const Nse2Inverse w2 = nse2_inverse(g, nullptr);
        std::vector<cplx> s = w2_matvec(w2, g.y_mf, nullptr);
        return finalize_detection(std::move(s), approx_gains(g, w2.diag, nullptr), cst);
    }

    // A_1 = D^-1, A_{k+1} = D^-1 + (I - D^-1 W) A_k, evaluated as matrices so
    // the gains can use the diagonal of the K-term inverse (as the NSE-based
    // baseline does).
    std::vector<double> dinv(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(g.split.d[i] > 0.0))
            throw std::domain_error("nse_detect: non-positive diagonal entry");
        dinv[i] = 1.0 / g.split.d[i];
    }
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = dinv[i];
    const ComplexMatrix w = g.split.dense();
    for (unsigned term = 1; term < k_terms; ++term) {
        ComplexMatrix wa = matmul(w, a);
        ComplexMatrix nxt(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                nxt(i, j) = a(i, j) - dinv[i] * wa(i, j) + (i == j ? dinv[i] : cplx{});
        a = std::move(nxt);
    }

    std::vector<cplx> s = matvec(a, g.y_mf);
    std::vector<double> mu(n);
    for (std::size_t i = 0; i < n; ++i) mu[i] = 1.0 - g.n0 * a(i, i).real();
    return finalize_detection(std::move(s), std::move(mu), cst);
}

} // namespace gsdet
