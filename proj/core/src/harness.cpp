// SPDX-License-Identifier: Apache-2.0
//
// gsdet: soft-output Gauss-Seidel detection lab for massive MIMO uplink.
// Copyright (C) 2026 The gsdet authors

#include "gsdet/harness.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "gsdet/coding.hpp"
#include "gsdet/detect.hpp"

namespace gsdet {

namespace {

// Fixed lockstep granularity for the early-stop decision; keeps results
// independent of the worker count.
constexpr std::size_t kFrameChunk = 32;

} // namespace

std::string to_string(Detector d) {
    switch (d) {
        case Detector::igs: return "igs";
        case Detector::gs_zero: return "gs_zero";
        case Detector::gs_diag: return "gs_diag";
        case Detector::nse: return "nse";
        case Detector::mmse_exact: return "mmse_exact";
    }
    return "?";
}

std::string to_string(Arithmetic a) {
    return a == Arithmetic::floating ? "float" : "fixed";
}

Detector detector_from_string(const std::string& s) {
    if (s == "igs") return Detector::igs;
    if (s == "gs_zero") return Detector::gs_zero;
    if (s == "gs_diag") return Detector::gs_diag;
    if (s == "nse") return Detector::nse;
    if (s == "mmse_exact" || s == "mmse") return Detector::mmse_exact;
    throw std::invalid_argument("unknown detector: " + s);
}

Arithmetic arithmetic_from_string(const std::string& s) {
    if (s == "float" || s == "floating") return Arithmetic::floating;
    if (s == "fixed") return Arithmetic::fixed;
    throw std::invalid_argument("unknown arithmetic: " + s);
}

std::string modulation_name(unsigned bits) {
    switch (bits) {
        case 2: return "qpsk";
        case 4: return "16qam";
        case 6: return "64qam";
        default: throw std::invalid_argument("unsupported modulation");
    }
}

unsigned modulation_bits(const std::string& name) {
    if (name == "qpsk" || name == "4qam") return 2;
    if (name == "16qam") return 4;
    if (name == "64qam") return 6;
    throw std::invalid_argument("unknown modulation: " + name);
}

std::vector<std::string> SimConfig::validate() const {
    std::vector<std::string> errs;
    if (n_t < 1 || n_r < n_t) errs.push_back("require n_r >= n_t >= 1");
    if (mod_bits != 2 && mod_bits != 4 && mod_bits != 6)
        errs.push_back("modulation must be qpsk/16qam/64qam");
    if (code != "k7" && code != "uncoded") errs.push_back("code must be 'k7' or 'uncoded'");
    if (snr_db.empty()) errs.push_back("snr_db list is empty");
    if (frames < 1) errs.push_back("frame budget must be >= 1");
    if (bits_per_frame < 1) errs.push_back("bits_per_frame must be >= 1");
    if (detector == Detector::nse && k < 1) errs.push_back("nse requires k >= 1 terms");
    if (kronecker) {
        if (kronecker->zeta_r < 0.0 || kronecker->zeta_r > 1.0 || kronecker->zeta_t < 0.0 ||
            kronecker->zeta_t > 1.0)
            errs.push_back("kronecker factors must lie in [0, 1]");
    }
    if (arith == Arithmetic::fixed && detector != Detector::igs)
        errs.push_back("fixed-point arithmetic is modeled for the igs detector only");
    return errs;
}

namespace {

struct PointContext {
    const SimConfig* cfg = nullptr;
    double snr_db = 0.0;
    double n0 = 0.0;
    std::uint64_t snr_hash = 0;
    const Constellation* cst = nullptr;
    ConvCode code;
    bool coded = false;
    std::vector<std::size_t> perm;
    std::size_t coded_len = 0;
    std::size_t padded_len = 0;
    std::size_t n_uses = 0;
    bool kron = false;
    ComplexMatrix c_r, c_t;
    FxpProfile fxp;
};

struct FrameResult {
    std::uint64_t bit_errors = 0;
    bool frame_error = false;
};

PointContext make_context(const SimConfig& cfg, double snr_db) {
    PointContext ctx;
    ctx.cfg = &cfg;
    ctx.snr_db = snr_db;
    ctx.n0 = snr_to_n0(cfg.n_t, snr_db);
    ctx.snr_hash = std::bit_cast<std::uint64_t>(snr_db);
    ctx.cst = &Constellation::from_bits_per_symbol(cfg.mod_bits);
    ctx.coded = cfg.code != "uncoded";
    const std::size_t block = static_cast<std::size_t>(cfg.mod_bits) * cfg.n_t;
    if (ctx.coded) {
        ctx.code = ConvCode::standard_k7();
        ctx.coded_len = 2 * (cfg.bits_per_frame + ctx.code.memory());
        ctx.perm = make_interleaver(ctx.coded_len, cfg.seed);
        ctx.padded_len = (ctx.coded_len + block - 1) / block * block;
    } else {
        ctx.padded_len = (cfg.bits_per_frame + block - 1) / block * block;
    }
    ctx.n_uses = ctx.padded_len / block;
    if (cfg.kronecker) {
        ctx.kron = true;
        ctx.c_r = correlation_sqrt(cfg.n_r, cfg.kronecker->zeta_r);
        ctx.c_t = correlation_sqrt(cfg.n_t, cfg.kronecker->zeta_t);
    }
    ctx.fxp = FxpProfile::defaults(cfg.n_t);
    return ctx;
}

DetectionResult dispatch_float(const SimConfig& cfg, const GramSystem& g,
                               const Constellation& cst) {
    switch (cfg.detector) {
        case Detector::igs: return igs_detect(g, cfg.k, cst);
        case Detector::gs_zero: return gs_detect(g, InitMode::zero, cfg.k, cst);
        case Detector::gs_diag: return gs_detect(g, InitMode::diag, cfg.k, cst);
        case Detector::nse: return nse_detect(g, cfg.k, cst);
        case Detector::mmse_exact: return exact_mmse_detect(g, cst);
    }
    throw std::logic_error("unreachable detector");
}

FrameResult run_frame(const PointContext& ctx, std::size_t frame_idx) {
    const SimConfig& cfg = *ctx.cfg;
    Rng rng(derive_seed(cfg.seed, ctx.snr_hash, frame_idx));
    const unsigned b = cfg.mod_bits;

    std::vector<std::uint8_t> info(cfg.bits_per_frame);
    for (auto& v : info) v = rng.bit() ? 1 : 0;

    std::vector<std::uint8_t> tx;
    if (ctx.coded) {
        tx = permute(conv_encode(ctx.code, info), ctx.perm);
    } else {
        tx = info;
    }
    tx.resize(ctx.padded_len, 0);
    const std::vector<cplx> symbols = map_bits(*ctx.cst, tx);

    ComplexMatrix h = gen_iid(cfg.n_r, cfg.n_t, rng);
    if (ctx.kron) h = apply_kronecker(h, ctx.c_r, ctx.c_t);
    const ChannelRealization ch{std::move(h), ctx.n0, cfg.n_r, cfg.n_t};

    std::vector<double> llrs(ctx.padded_len);
    GramSystem g;
    std::vector<cplx> s_vec(cfg.n_t);
    for (std::size_t u = 0; u < ctx.n_uses; ++u) {
        for (std::size_t i = 0; i < cfg.n_t; ++i) s_vec[i] = symbols[u * cfg.n_t + i];
        const std::vector<cplx> y = transmit(ch, s_vec, rng);
        DetectionResult res;
        if (cfg.arith == Arithmetic::fixed) {
            res = igs_detect_fxp(ch, y, cfg.k, *ctx.cst, ctx.fxp);
        } else {
            if (u == 0)
                g = preprocess(ch, y);
            else
                update_matched_filter(g, ch, y);
            res = dispatch_float(cfg, g, *ctx.cst);
        }
        for (std::size_t i = 0; i < cfg.n_t; ++i)
            for (unsigned bit = 0; bit < b; ++bit)
                llrs[(u * cfg.n_t + i) * b + bit] = res.llrs[i * b + bit];
    }

    FrameResult fr;
    if (ctx.coded) {
        std::vector<double> coded_llrs(llrs.begin(),
                                       llrs.begin() + static_cast<std::ptrdiff_t>(ctx.coded_len));
        const std::vector<double> deintl = unpermute(coded_llrs, ctx.perm);
        const std::vector<std::uint8_t> hat = viterbi_decode_soft(ctx.code, deintl);
        for (std::size_t i = 0; i < info.size(); ++i)
            if (hat[i] != info[i]) ++fr.bit_errors;
    } else {
        for (std::size_t i = 0; i < info.size(); ++i) {
            const std::uint8_t hard = llrs[i] > 0.0 ? 1 : 0;
            if (hard != info[i]) ++fr.bit_errors;
        }
    }
    fr.frame_error = fr.bit_errors > 0;
    return fr;
}

} // namespace

BerRecord run_point(const SimConfig& cfg, double snr_db) {
    {
        const auto errs = cfg.validate();
        if (!errs.empty()) throw std::invalid_argument("run_point: " + errs.front());
    }
    const PointContext ctx = make_context(cfg, snr_db);

    BerRecord rec;
    rec.detector = to_string(cfg.detector);
    rec.k = cfg.k;
    rec.n_r = cfg.n_r;
    rec.n_t = cfg.n_t;
    rec.mod = modulation_name(cfg.mod_bits);
    rec.code = cfg.code;
    rec.zeta_r = cfg.kronecker ? cfg.kronecker->zeta_r : 0.0;
    rec.zeta_t = cfg.kronecker ? cfg.kronecker->zeta_t : 0.0;
    rec.arith = to_string(cfg.arith);
    rec.snr_db = snr_db;
    if (cfg.detector == Detector::igs)
        rec.cost = latency_estimate(cfg.n_r, cfg.n_t, cfg.k, Schedule::rescheduled);

    const unsigned workers =
        cfg.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.workers;

    std::size_t frame = 0;
    while (frame < cfg.frames) {
        const std::size_t chunk = std::min(kFrameChunk, cfg.frames - frame);
        std::vector<FrameResult> results(chunk);
        if (workers <= 1 || chunk == 1) {
            for (std::size_t i = 0; i < chunk; ++i) results[i] = run_frame(ctx, frame + i);
        } else {
            const unsigned nw = static_cast<unsigned>(std::min<std::size_t>(workers, chunk));
            std::vector<std::thread> pool;
            pool.reserve(nw);
            for (unsigned w = 0; w < nw; ++w) {
                pool.emplace_back([&, w] {
                    for (std::size_t i = w; i < chunk; i += nw)
                        results[i] = run_frame(ctx, frame + i);
                });
            }
            for (auto& t : pool) t.join();
        }
        // Merge in frame order; the stop decision happens only at chunk
        // boundaries so it cannot depend on scheduling.
        for (std::size_t i = 0; i < chunk; ++i) {
            rec.bit_errors += results[i].bit_errors;
            rec.bits += cfg.bits_per_frame;
            rec.frames += 1;
            if (results[i].frame_error) ++rec.frame_errors;
        }
        frame += chunk;
        if (rec.bit_errors >= cfg.target_bit_errors && rec.bits >= cfg.min_bits) break;
    }

    rec.ber = rec.bits ? static_cast<double>(rec.bit_errors) / static_cast<double>(rec.bits) : 0.0;
    rec.fer = rec.frames ? static_cast<double>(rec.frame_errors) / static_cast<double>(rec.frames)
                         : 0.0;
    return rec;
}

std::vector<BerRecord> run_sweep(const SimConfig& cfg, const std::string& csv_path) {
    {
        const auto errs = cfg.validate();
        if (!errs.empty()) {
            std::string all = "run_sweep: invalid config:";
            for (const auto& e : errs) all += " " + e + ";";
            throw std::invalid_argument(all);
        }
    }
    std::vector<BerRecord> records;
    records.reserve(cfg.snr_db.size());
    for (double snr : cfg.snr_db) records.push_back(run_point(cfg, snr));
    if (!csv_path.empty()) write_csv(csv_path, records);
    return records;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace

std::string csv_header() {
    return "detector,k,n_r,n_t,mod,code,zeta_r,zeta_t,arith,snr_db,bits,bit_errors,ber,"
           "frames,frame_errors,fer,mults,latency_cycles";
}

std::string csv_line(const BerRecord& r) {
    std::ostringstream os;
    os << r.detector << ',' << r.k << ',' << r.n_r << ',' << r.n_t << ',' << r.mod << ','
       << r.code << ',' << fmt_double(r.zeta_r) << ',' << fmt_double(r.zeta_t) << ','
       << r.arith << ',' << fmt_double(r.snr_db) << ',' << r.bits << ',' << r.bit_errors
       << ',' << fmt_double(r.ber) << ',' << r.frames << ',' << r.frame_errors << ','
       << fmt_double(r.fer) << ',' << r.cost.complex_mults << ',' << r.cost.latency_cycles;
    return os.str();
}

void write_csv(const std::string& path, const std::vector<BerRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    out << csv_header() << '\n';
    for (const auto& r : records) out << csv_line(r) << '\n';
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

void write_gnuplot(const std::string& path, const std::vector<BerRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_gnuplot: cannot open " + path);
    std::vector<std::string> seen;
    for (const auto& r : records) {
        const std::string key = r.detector + " k=" + std::to_string(r.k) + " " + r.arith;
        bool found = false;
        for (const auto& s : seen) found = found || s == key;
        if (found) continue;
        seen.push_back(key);
        out << "# " << key << "\n";
        for (const auto& q : records) {
            if (q.detector == r.detector && q.k == r.k && q.arith == r.arith)
                out << fmt_double(q.snr_db) << ' ' << fmt_double(q.ber) << ' '
                    << fmt_double(q.fer) << '\n';
        }
        out << "\n\n";
    }
    if (!out) throw std::runtime_error("write_gnuplot: write failed for " + path);
}

SimConfig config_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SimConfig cfg;
    if (j.contains("n_r")) cfg.n_r = j.at("n_r").get<std::size_t>();
    if (j.contains("n_t")) cfg.n_t = j.at("n_t").get<std::size_t>();
    if (j.contains("modulation")) cfg.mod_bits = modulation_bits(j.at("modulation"));
    if (j.contains("code")) cfg.code = j.at("code").get<std::string>();
    if (j.contains("detector")) cfg.detector = detector_from_string(j.at("detector"));
    if (j.contains("k")) cfg.k = j.at("k").get<unsigned>();
    if (j.contains("snr_db")) cfg.snr_db = j.at("snr_db").get<std::vector<double>>();
    if (j.contains("zeta_r") || j.contains("zeta_t")) {
        KroneckerSpec ks;
        ks.zeta_r = j.value("zeta_r", 0.0);
        ks.zeta_t = j.value("zeta_t", 0.0);
        cfg.kronecker = ks;
    }
    if (j.contains("frames")) cfg.frames = j.at("frames").get<std::size_t>();
    if (j.contains("bits_per_frame")) cfg.bits_per_frame = j.at("bits_per_frame").get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("arithmetic")) cfg.arith = arithmetic_from_string(j.at("arithmetic"));
    if (j.contains("target_bit_errors"))
        cfg.target_bit_errors = j.at("target_bit_errors").get<std::size_t>();
    if (j.contains("min_bits")) cfg.min_bits = j.at("min_bits").get<std::size_t>();
    if (j.contains("workers")) cfg.workers = j.at("workers").get<unsigned>();
    return cfg;
}

SimConfig config_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config_from_json_file: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

std::string config_to_json(const SimConfig& cfg) {
    nlohmann::json j;
    j["n_r"] = cfg.n_r;
    j["n_t"] = cfg.n_t;
    j["modulation"] = modulation_name(cfg.mod_bits);
    j["code"] = cfg.code;
    j["detector"] = to_string(cfg.detector);
    j["k"] = cfg.k;
    j["snr_db"] = cfg.snr_db;
    if (cfg.kronecker) {
        j["zeta_r"] = cfg.kronecker->zeta_r;
        j["zeta_t"] = cfg.kronecker->zeta_t;
    }
    j["frames"] = cfg.frames;
    j["bits_per_frame"] = cfg.bits_per_frame;
    j["seed"] = cfg.seed;
    j["arithmetic"] = to_string(cfg.arith);
    j["target_bit_errors"] = cfg.target_bit_errors;
    j["min_bits"] = cfg.min_bits;
    j["workers"] = cfg.workers;
    return j.dump(2);
}

namespace {

SimConfig preset_base(std::size_t n_r, std::size_t n_t, std::vector<double> snr,
                      bool paper_scale) {
    SimConfig c;
    c.n_r = n_r;
    c.n_t = n_t;
    c.mod_bits = 6;
    c.code = "k7";
    c.snr_db = std::move(snr);
    c.bits_per_frame = 1024;
    c.seed = 20260810;
    c.min_bits = paper_scale ? 10'000'000 : 100'000;
    c.target_bit_errors = paper_scale ? 2000 : 200;
    c.frames = paper_scale ? 2'000'000 : 20'000;
    return c;
}

SimConfig with(SimConfig c, Detector d, unsigned k) {
    c.detector = d;
    c.k = k;
    return c;
}

} // namespace

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig4", "fig14"}; }

std::vector<SimConfig> preset(const std::string& name, bool paper_scale) {
    std::vector<SimConfig> runs;
    if (name == "fig1") {
        // 128 x 16, IGS vs the Neumann baseline under the K_NSE = K_GS + 2
        // fairness rule, plus the exact-MMSE floor.
        const SimConfig base = preset_base(128, 16, {6, 7, 8, 9, 10, 11}, paper_scale);
        runs.push_back(with(base, Detector::mmse_exact, 0));
        runs.push_back(with(base, Detector::igs, 1));
        runs.push_back(with(base, Detector::igs, 2));
        runs.push_back(with(base, Detector::nse, 3));
        runs.push_back(with(base, Detector::nse, 4));
    } else if (name == "fig2") {
        const SimConfig base = preset_base(64, 16, {8, 10, 12, 14, 16, 18}, paper_scale);
        runs.push_back(with(base, Detector::mmse_exact, 0));
        runs.push_back(with(base, Detector::igs, 1));
        runs.push_back(with(base, Detector::igs, 2));
        runs.push_back(with(base, Detector::nse, 3));
        runs.push_back(with(base, Detector::nse, 4));
    } else if (name == "fig3") {
        // 64 x 8 initialization study: zero, diagonal and 2-term NSE starts.
        const SimConfig base = preset_base(64, 8, {8, 9, 10, 11, 12, 13}, paper_scale);
        runs.push_back(with(base, Detector::mmse_exact, 0));
        runs.push_back(with(base, Detector::gs_zero, 1));
        runs.push_back(with(base, Detector::gs_zero, 2));
        runs.push_back(with(base, Detector::gs_diag, 1));
        runs.push_back(with(base, Detector::igs, 1));
        runs.push_back(with(base, Detector::igs, 2));
    } else if (name == "fig4") {
        // Correlated channels, zeta_r = 0.4 at the base station.
        for (double zt : {0.2, 0.5}) {
            SimConfig base = preset_base(128, 16, {8, 10, 12, 14, 16}, paper_scale);
            base.kronecker = KroneckerSpec{0.4, zt};
            runs.push_back(with(base, Detector::mmse_exact, 0));
            runs.push_back(with(base, Detector::igs, 2));
            runs.push_back(with(base, Detector::igs, 3));
            runs.push_back(with(base, Detector::nse, 3));
        }
    } else if (name == "fig14") {
        // Fixed-point vs floating-point IGS.
        for (std::size_t n_r : {std::size_t{128}, std::size_t{64}}) {
            SimConfig base = preset_base(n_r, 8, {8, 9, 10, 11, 12, 13}, paper_scale);
            runs.push_back(with(base, Detector::mmse_exact, 0));
            runs.push_back(with(base, Detector::igs, 1));
            SimConfig fx = with(base, Detector::igs, 1);
            fx.arith = Arithmetic::fixed;
            runs.push_back(fx);
        }
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    return runs;
}

} // namespace gsdet
