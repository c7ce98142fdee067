// SPDX-License-Identifier: Apache-2.0
//
// gsdet: soft-output Gauss-Seidel detection lab for massive MIMO uplink.
// Copyright (C) 2026 The gsdet authors

#ifndef GSDET_HARNESS_HPP
#define GSDET_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsdet/channel.hpp"
#include "gsdet/fxp.hpp"
#include "gsdet/hwmodel.hpp"

namespace gsdet {

enum class Detector { igs, gs_zero, gs_diag, nse, mmse_exact };
enum class Arithmetic { floating, fixed };

std::string to_string(Detector d);
std::string to_string(Arithmetic a);
Detector detector_from_string(const std::string& s);
Arithmetic arithmetic_from_string(const std::string& s);
std::string modulation_name(unsigned bits);
unsigned modulation_bits(const std::string& name);

/// One Monte Carlo experiment. A frame is one codeword under block fading:
/// a single channel draw, the coded bits spread over consecutive
/// n_t-symbol channel uses. `k` is the GS iteration count, or the number of
/// Neumann terms when detector = nse.
struct SimConfig {
    std::size_t n_r = 128;
    std::size_t n_t = 8;
    unsigned mod_bits = 6;
    std::string code = "k7"; // "k7" (133,171 zero-tail) or "uncoded"
    Detector detector = Detector::igs;
    unsigned k = 1;
    std::vector<double> snr_db;
    std::optional<KroneckerSpec> kronecker;
    std::size_t frames = 2000; // frame budget per point
    std::size_t bits_per_frame = 1024;
    std::uint64_t seed = 1;
    Arithmetic arith = Arithmetic::floating;
    std::size_t target_bit_errors = 200; // early-stop threshold
    std::size_t min_bits = 0;            // floor before early stop applies
    unsigned workers = 1;                // frame-level worker pool

    /// Empty when the configuration is usable; else one message per problem.
    std::vector<std::string> validate() const;
};

struct BerRecord {
    std::string detector;
    unsigned k = 0;
    std::size_t n_r = 0, n_t = 0;
    std::string mod, code;
    double zeta_r = 0.0, zeta_t = 0.0;
    std::string arith;
    double snr_db = 0.0;
    std::uint64_t bits = 0, bit_errors = 0;
    std::uint64_t frames = 0, frame_errors = 0;
    double ber = 0.0, fer = 0.0;
    CostReport cost; // populated for the modeled (IGS) pipeline, zero otherwise
};

/// Simulates one SNR point. Frame i draws its stream from
/// derive_seed(seed, hash(snr_db), i), so results do not depend on the
/// worker count or on the position of the point inside a sweep.
BerRecord run_point(const SimConfig& cfg, double snr_db);

/// One record per SNR point; writes the CSV artifact when csv_path is given.
std::vector<BerRecord> run_sweep(const SimConfig& cfg, const std::string& csv_path = "");

std::string csv_header();
std::string csv_line(const BerRecord& r);
void write_csv(const std::string& path, const std::vector<BerRecord>& records);

/// Gnuplot-friendly companion: one index block per (detector, k, arith)
/// curve with "snr ber fer" rows.
void write_gnuplot(const std::string& path, const std::vector<BerRecord>& records);

/// Flat JSON key/value document mirroring SimConfig.
SimConfig config_from_json(const std::string& text);
SimConfig config_from_json_file(const std::string& path);
std::string config_to_json(const SimConfig& cfg);

/// Named reproduction batches ("fig1", "fig2", "fig3", "fig4", "fig14").
/// paper_scale raises the per-point bit floor from 1e5 to 1e7.
std::vector<SimConfig> preset(const std::string& name, bool paper_scale = false);
std::vector<std::string> preset_names();

} // namespace gsdet

#endif
