// SPDX-License-Identifier: Apache-2.0
//
// gsdet: soft-output Gauss-Seidel detection lab for massive MIMO uplink.
// Copyright (C) 2026 The gsdet authors

#include "gsdet/fxp.hpp"

#include <stdexcept>

namespace gsdet {

namespace {

double round_half_even(double x) {
    const double f = std::floor(x);
    const double diff = x - f;
    if (diff > 0.5) return f + 1.0;
    if (diff < 0.5) return f;
    return (std::fmod(f, 2.0) == 0.0) ? f : f + 1.0;
}

/// Exact log2 for powers of two, -1 otherwise.
int ilog2_exact(std::size_t v) {
    if (v == 0 || (v & (v - 1)) != 0) return -1;
    int e = 0;
    while (v > 1) {
        v >>= 1;
        ++e;
    }
    return e;
}

} // namespace

double quantize(double x, const FxpFormat& fmt, QuantStats* stats) {
    if (fmt.frac_bits == 0 || fmt.frac_bits >= fmt.total_bits || fmt.total_bits > 32)
        throw std::invalid_argument("quantize: invalid format");
    if (std::isnan(x)) throw std::invalid_argument("quantize: NaN input");
    if (stats) ++stats->samples;

    const double res = fmt.resolution();
    const double q = round_half_even(x / res);
    const double qmax = fmt.max_value() / res;
    const double qmin = fmt.min_value() / res;
    if (q > qmax) {
        if (stats) ++stats->saturations;
        return fmt.max_value();
    }
    if (q < qmin) {
        if (stats) ++stats->saturations;
        return fmt.min_value();
    }
    return q * res;
}

cplx quantize(cplx v, const FxpFormat& fmt, QuantStats* stats) {
    return {quantize(v.real(), fmt, stats), quantize(v.imag(), fmt, stats)};
}

CompressedEntry compress_gram(double x, std::size_t n_t, const FxpFormat& payload_fmt,
                              QuantStats* stats) {
    CompressedEntry e;
    e.offset_flag = x > static_cast<double>(n_t) / 2.0;
    const double rem = e.offset_flag ? x - static_cast<double>(n_t) : x;
    e.payload = quantize(rem, payload_fmt, stats);
    return e;
}

CompressedEntry compress_gram(double x, std::size_t n_t) {
    return compress_gram(x, n_t, FxpProfile::defaults(n_t).payload, nullptr);
}

double decompress_gram(const CompressedEntry& e, std::size_t n_t) {
    return e.payload + (e.offset_flag ? static_cast<double>(n_t) : 0.0);
}

ReciprocalTable::ReciprocalTable() : entries_(1024) {
    const FxpFormat out{15, 13};
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        const double center = 0.5 + (static_cast<double>(k) + 0.5) / 2048.0;
        entries_[k] = quantize(1.0 / center, out, nullptr);
    }
}

double ReciprocalTable::reciprocal(double x) const {
    if (!(x > 0.0)) throw std::domain_error("ReciprocalTable: input must be positive");
    int e = 0;
    const double m = std::frexp(x, &e); // x = m * 2^e, m in [0.5, 1)
    auto idx = static_cast<std::size_t>((m - 0.5) * 2048.0);
    if (idx >= entries_.size()) idx = entries_.size() - 1;
    return std::ldexp(entries_[idx], -e);
}

const ReciprocalTable& ReciprocalTable::shared() {
    static const ReciprocalTable t;
    return t;
}

FxpProfile FxpProfile::defaults(std::size_t n_t) {
    FxpProfile p;
    // The flag-0 window of the compression reaches n_t / 2; pick the finest
    // payload grid whose 9-bit range still covers it (with headroom for the
    // spread of the diagonal cluster).
    int lg = ilog2_exact(n_t);
    if (lg < 0) lg = static_cast<int>(std::ceil(std::log2(static_cast<double>(n_t < 2 ? 2 : n_t))));
    unsigned f = 8u - static_cast<unsigned>(std::min(std::max(lg, 1), 7));
    if (f < 1) f = 1;
    p.gram = FxpFormat{15, f};
    p.payload = FxpFormat{9, f};
    return p;
}

ScaledGsInputs scale_gs_inputs(const GramSystem& g) {
    ScaledGsInputs sc;
    sc.shift = ilog2_exact(g.n_r);
    sc.factor = 1.0 / static_cast<double>(g.n_r);
    sc.y_scaled.resize(g.y_mf.size());
    for (std::size_t i = 0; i < g.y_mf.size(); ++i) {
        sc.y_scaled[i] = (sc.shift >= 0) ? cplx(std::ldexp(g.y_mf[i].real(), -sc.shift),
                                                std::ldexp(g.y_mf[i].imag(), -sc.shift))
                                         : g.y_mf[i] * sc.factor;
    }
    return sc;
}

std::vector<cplx> gs_iterate_scaled(const GramSystem& g, const ScaledGsInputs& sc,
                                    const std::vector<cplx>& s_prev) {
    const std::size_t n = g.n_t;
    if (s_prev.size() != n || sc.y_scaled.size() != n)
        throw std::invalid_argument("gs_iterate_scaled: dimension mismatch");
    std::vector<cplx> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx acc = sc.y_scaled[i];
        for (std::size_t j = 0; j < i; ++j)
            acc -= (g.split.lower[HermitianSplit::lower_index(i, j)] * sc.factor) * s[j];
        for (std::size_t j = i + 1; j < n; ++j)
            acc -= (std::conj(g.split.lower[HermitianSplit::lower_index(j, i)]) * sc.factor) *
                   s_prev[j];
        s[i] = acc * (static_cast<double>(g.n_r) / g.split.d[i]);
    }
    return s;
}

namespace {

/// lambda_b on the fast Gray path, with the axis levels held on the LCU
/// input grid the way the hardware stores its constellation constants.
double lambda_fxp(const Constellation& cst, cplx z, unsigned bit, const FxpFormat& fmt) {
    const unsigned axis_bits = cst.bits_per_axis();
    double x;
    unsigned axis_bit;
    if (bit < axis_bits) {
        x = z.real();
        axis_bit = bit;
    } else {
        x = z.imag();
        axis_bit = bit - axis_bits;
    }
    const unsigned shift = axis_bits - 1 - axis_bit;
    const std::uint32_t levels = 1u << axis_bits;
    double min0 = 1e300, min1 = 1e300;
    for (std::uint32_t v = 0; v < levels; ++v) {
        const double a = quantize(cst.axis_level(v), fmt, nullptr);
        const double diff = x - a;
        const double d = diff * diff;
        if ((v >> shift) & 1u)
            min1 = std::min(min1, d);
        else
            min0 = std::min(min0, d);
    }
    return min0 - min1;
}

} // namespace

DetectionResult igs_detect_fxp(const ChannelRealization& ch, const std::vector<cplx>& y,
                               unsigned k, const Constellation& cst, const FxpProfile& prof,
                               FxpDetectStats* stats, bool gs_input_scaling) {
    if (y.size() != ch.n_r)
        throw std::invalid_argument("igs_detect_fxp: receive vector length != n_r");
    const std::size_t n = ch.n_t;
    const std::size_t n_r = ch.n_r;
    FxpDetectStats local;
    FxpDetectStats& st = stats ? *stats : local;
    const ReciprocalTable& recip = ReciprocalTable::shared();

    // Common scaling of (W, y_mf, n0) by n_t / n_r; detection results are
    // invariant to it, and it centers the Gram diagonal at n_t.
    const int re = ilog2_exact(n_r);
    const int te = ilog2_exact(n);
    const bool pow2 = re >= 0 && te >= 0;
    const double c_factor = static_cast<double>(n) / static_cast<double>(n_r);
    const auto c_scale = [&](double v) {
        return pow2 ? std::ldexp(v, te - re) : v * c_factor;
    };

    // Input quantization.
    ComplexMatrix hq(n_r, n);
    for (std::size_t r = 0; r < n_r; ++r)
        for (std::size_t j = 0; j < n; ++j) hq(r, j) = quantize(ch.h(r, j), prof.h, &st.h);
    std::vector<cplx> yq(n_r);
    for (std::size_t r = 0; r < n_r; ++r) yq[r] = quantize(y[r], prof.y, &st.y);
    const double n0q = quantize(ch.n0, prof.n0, &st.n0);
    const double n0c = c_scale(n0q);

    // Preprocessing unit: lower Gram triangle and matched filter, 22-bit MAC
    // requantization at every accumulate, compressed storage at the output.
    std::vector<CompressedEntry> diag_c(n);
    std::vector<std::pair<CompressedEntry, CompressedEntry>> lower_c(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t r = 0; r < n_r; ++r)
            acc = quantize(acc + std::norm(hq(r, i)), prof.mac_pu, &st.mac_pu);
        const double wii = quantize(c_scale(acc) + n0c, prof.gram, &st.gram);
        diag_c[i] = compress_gram(wii, n, prof.payload, &st.payload);
        for (std::size_t j = 0; j < i; ++j) {
            cplx cacc = 0.0;
            for (std::size_t r = 0; r < n_r; ++r) {
                cacc = quantize(cacc + std::conj(hq(r, i)) * hq(r, j), prof.mac_pu, &st.mac_pu);
            }
            const double wre = quantize(c_scale(cacc.real()), prof.gram, &st.gram);
            const double wim = quantize(c_scale(cacc.imag()), prof.gram, &st.gram);
            lower_c[HermitianSplit::lower_index(i, j)] = {
                compress_gram(wre, n, prof.payload, &st.payload),
                compress_gram(wim, n, prof.payload, &st.payload)};
        }
    }
    std::vector<cplx> ymf(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx acc = 0.0;
        for (std::size_t r = 0; r < n_r; ++r)
            acc = quantize(acc + std::conj(hq(r, i)) * yq[r], prof.mac_pu, &st.mac_pu);
        ymf[i] = quantize(cplx(c_scale(acc.real()), c_scale(acc.imag())), prof.mf, &st.mf);
    }

    // Decompression ahead of the solver units.
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = decompress_gram(diag_c[i], n);
        if (!(d[i] > 0.0)) throw std::domain_error("igs_detect_fxp: non-positive diagonal");
    }
    std::vector<cplx> lower(n * (n - 1) / 2);
    for (std::size_t idx = 0; idx < lower.size(); ++idx)
        lower[idx] = {decompress_gram(lower_c[idx].first, n),
                      decompress_gram(lower_c[idx].second, n)};

    // Initial solution unit: 2-term inverse (one triangle), then the matvec.
    std::vector<double> dinv(n);
    for (std::size_t i = 0; i < n; ++i)
        dinv[i] = quantize(recip.reciprocal(d[i]), prof.nse_inv, &st.nse_inv);
    ComplexMatrix w2(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        w2(i, i) = dinv[i];
        for (std::size_t j = 0; j < i; ++j) {
            const cplx t = quantize(lower[HermitianSplit::lower_index(i, j)] * dinv[i],
                                    prof.nse_inv, &st.nse_inv);
            const cplx v = quantize(-t * dinv[j], prof.nse_inv, &st.nse_inv);
            w2(i, j) = v;
            w2(j, i) = std::conj(v);
        }
    }
    std::vector<cplx> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            acc = quantize(acc + w2(i, j) * ymf[j], prof.mac_iscu, &st.mac_iscu);
        s[i] = quantize(acc, prof.gs_value, &st.gs_value);
    }

    // GS method unit. With input scaling on, operands are shifted down by
    // n_t, which together with the preprocessing scale realizes y_mf / n_r;
    // the shift is a register reinterpretation, hence exact.
    const int t_shift = gs_input_scaling ? (pow2 ? te : -1) : 0;
    const double t_factor = gs_input_scaling ? 1.0 / static_cast<double>(n) : 1.0;
    const auto gs_in = [&](double v) {
        return t_shift >= 0 ? std::ldexp(v, -t_shift) : v * t_factor;
    };
    std::vector<double> rec2(n);
    std::vector<cplx> y2(n), l2(lower.size());
    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) {
        y2[i] = {gs_in(ymf[i].real()), gs_in(ymf[i].imag())};
        d2[i] = gs_in(d[i]);
        rec2[i] = recip.reciprocal(d2[i]);
    }
    for (std::size_t idx = 0; idx < lower.size(); ++idx)
        l2[idx] = {gs_in(lower[idx].real()), gs_in(lower[idx].imag())};

    for (unsigned it = 0; it < k; ++it) {
        std::vector<cplx> nxt(n);
        for (std::size_t i = 0; i < n; ++i) {
            cplx acc = quantize(y2[i], prof.mac_gs, &st.mac_gs);
            for (std::size_t j = 0; j < i; ++j)
                acc = quantize(acc - l2[HermitianSplit::lower_index(i, j)] * nxt[j],
                               prof.mac_gs, &st.mac_gs);
            for (std::size_t j = i + 1; j < n; ++j)
                acc = quantize(acc - std::conj(l2[HermitianSplit::lower_index(j, i)]) * s[j],
                               prof.mac_gs, &st.mac_gs);
            nxt[i] = quantize(acc * rec2[i], prof.gs_value, &st.gs_value);
        }
        s = std::move(nxt);
    }

    // SINR computation unit.
    DetectionResult r;
    r.s_hat = s;
    r.mu.resize(n);
    r.z.resize(n);
    r.rho.resize(n);
    const unsigned b = cst.bits_per_symbol();
    r.llrs.resize(n * b);
    const double mu_lo = prof.scu_in.resolution();
    const double mu_hi = 1.0 - prof.scu_in.resolution();
    for (std::size_t i = 0; i < n; ++i) {
        const double prod = quantize(n0c * dinv[i], prof.scu_in, &st.scu);
        double mu = quantize(1.0 - prod, prof.scu_in, &st.scu);
        if (mu < mu_lo || mu > mu_hi) {
            mu = std::min(std::max(mu, mu_lo), mu_hi);
            ++r.clamped_gains;
        }
        r.mu[i] = mu;
        r.rho[i] = quantize(mu * recip.reciprocal(1.0 - mu), prof.scu_out, &st.scu);
        // LLR computation unit.
        const double zr = recip.reciprocal(mu);
        r.z[i] = quantize(cplx(s[i].real() * zr, s[i].imag() * zr), prof.lcu_in, &st.lcu_z);
        for (unsigned bit = 0; bit < b; ++bit) {
            const double lam = lambda_fxp(cst, r.z[i], bit, prof.lcu_in);
            r.llrs[i * b + bit] = quantize(r.rho[i] * lam, prof.lcu_out, &st.llr);
        }
    }
    return r;
}

} // namespace gsdet
