// SPDX-License-Identifier: Apache-2.0
//
// gsdet: soft-output Gauss-Seidel detection lab for massive MIMO uplink.
// Copyright (C) 2026 The gsdet authors
//
// Command-line front end: `sweep` runs one Monte Carlo configuration,
// `presets` reproduces a named figure batch, `cost` queries the hardware
// cost model.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gsdet/harness.hpp"

namespace {

int cmd_sweep(const std::string& config_path, gsdet::SimConfig cfg,
              const std::string& out_csv, const std::string& out_gnuplot, bool echo_config) {
    if (!config_path.empty()) cfg = gsdet::config_from_json_file(config_path);
    const auto errs = cfg.validate();
    if (!errs.empty()) {
        for (const auto& e : errs) std::cerr << "config error: " << e << "\n";
        return 2;
    }
    if (echo_config) std::cout << gsdet::config_to_json(cfg) << "\n";

    const auto records = gsdet::run_sweep(cfg, out_csv);
    if (!out_gnuplot.empty()) gsdet::write_gnuplot(out_gnuplot, records);

    std::cout << gsdet::csv_header() << "\n";
    for (const auto& r : records) std::cout << gsdet::csv_line(r) << "\n";
    return 0;
}

int cmd_presets(const std::string& name, const std::string& out_dir, bool paper_scale,
                unsigned workers) {
    std::vector<std::string> names;
    if (name == "all")
        names = gsdet::preset_names();
    else
        names.push_back(name);

    for (const auto& nm : names) {
        std::vector<gsdet::BerRecord> all;
        for (gsdet::SimConfig cfg : gsdet::preset(nm, paper_scale)) {
            if (workers > 0) cfg.workers = workers;
            std::cerr << "[" << nm << "] " << gsdet::to_string(cfg.detector) << " k=" << cfg.k
                      << " " << gsdet::to_string(cfg.arith) << " ...\n";
            const auto recs = gsdet::run_sweep(cfg);
            all.insert(all.end(), recs.begin(), recs.end());
        }
        const std::string csv = out_dir + "/" + nm + ".csv";
        const std::string dat = out_dir + "/" + nm + ".dat";
        gsdet::write_csv(csv, all);
        gsdet::write_gnuplot(dat, all);
        std::cout << "wrote " << csv << " and " << dat << "\n";
    }
    return 0;
}

int cmd_cost(std::size_t n_r, std::size_t n_t, unsigned k, const std::string& schedule) {
    const gsdet::Schedule sched =
        schedule == "baseline" ? gsdet::Schedule::baseline : gsdet::Schedule::rescheduled;
    const gsdet::CostReport r = gsdet::latency_estimate(n_r, n_t, k, sched);
    std::printf("n_r=%zu n_t=%zu k=%u schedule=%s\n", n_r, n_t, k, schedule.c_str());
    std::printf("complex multiplications (core): %llu\n",
                static_cast<unsigned long long>(r.complex_mults));
    std::printf("gain multiplications:           %llu\n",
                static_cast<unsigned long long>(r.gain_mults));
    std::printf("latency [cycles]:               %llu\n",
                static_cast<unsigned long long>(r.latency_cycles));
    for (const auto& [stage, cycles] : r.per_stage)
        std::printf("  %-14s %llu\n", stage.c_str(), static_cast<unsigned long long>(cycles));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gsdet - soft-output Gauss-Seidel massive MIMO detection lab"};
    app.require_subcommand(1);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Run a Monte Carlo BER/FER sweep");
    std::string config_path, out_csv, out_gnuplot;
    std::string detector = "igs", mod = "64qam", code = "k7", arith = "float";
    std::string snr_list;
    gsdet::SimConfig cfg;
    bool echo_config = false;
    double zeta_r = -1.0, zeta_t = -1.0;
    sweep->add_option("-c,--config", config_path, "JSON config file (flat key/value)");
    sweep->add_option("--nr", cfg.n_r, "receive antennas");
    sweep->add_option("--nt", cfg.n_t, "user streams");
    sweep->add_option("--mod", mod, "qpsk|16qam|64qam");
    sweep->add_option("--code", code, "k7|uncoded");
    sweep->add_option("--detector", detector, "igs|gs_zero|gs_diag|nse|mmse_exact");
    sweep->add_option("-k,--iterations", cfg.k, "GS iterations / NSE terms");
    sweep->add_option("--snr", snr_list, "comma-separated SNR list in dB");
    sweep->add_option("--frames", cfg.frames, "frame budget per point");
    sweep->add_option("--bits-per-frame", cfg.bits_per_frame, "info bits per frame");
    sweep->add_option("--seed", cfg.seed, "base seed");
    sweep->add_option("--arith", arith, "float|fixed");
    sweep->add_option("--target-errors", cfg.target_bit_errors, "early-stop bit-error target");
    sweep->add_option("--min-bits", cfg.min_bits, "bit floor before early stop");
    sweep->add_option("--workers", cfg.workers, "worker threads (0 = hardware)");
    sweep->add_option("--zeta-r", zeta_r, "Kronecker factor, receive side");
    sweep->add_option("--zeta-t", zeta_t, "Kronecker factor, transmit side");
    sweep->add_option("-o,--out", out_csv, "CSV output path");
    sweep->add_option("--gnuplot", out_gnuplot, "gnuplot data output path");
    sweep->add_flag("--echo-config", echo_config, "print the effective config as JSON");

    // presets
    auto* presets = app.add_subcommand("presets", "Reproduce a named figure batch");
    std::string preset_name = "fig1", out_dir = ".";
    bool paper_scale = false;
    unsigned preset_workers = 0;
    std::string avail;
    for (const auto& n : gsdet::preset_names()) avail += n + "|";
    presets->add_option("-n,--name", preset_name, avail + "all")->required();
    presets->add_option("-d,--out-dir", out_dir, "output directory");
    presets->add_flag("--paper-scale", paper_scale, "raise the bit floor to 1e7 per point");
    presets->add_option("--workers", preset_workers, "worker threads override");

    // cost
    auto* cost = app.add_subcommand("cost", "Query the hardware cost model");
    std::size_t c_nr = 128, c_nt = 8;
    unsigned c_k = 1;
    std::string schedule = "rescheduled";
    cost->add_option("--nr", c_nr, "receive antennas");
    cost->add_option("--nt", c_nt, "user streams");
    cost->add_option("-k,--iterations", c_k, "GS iterations");
    cost->add_option("--schedule", schedule, "baseline|rescheduled");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) {
            if (config_path.empty()) {
                cfg.mod_bits = gsdet::modulation_bits(mod);
                cfg.code = code;
                cfg.detector = gsdet::detector_from_string(detector);
                cfg.arith = gsdet::arithmetic_from_string(arith);
                if (zeta_r >= 0.0 || zeta_t >= 0.0)
                    cfg.kronecker = gsdet::KroneckerSpec{std::max(zeta_r, 0.0),
                                                         std::max(zeta_t, 0.0)};
                std::stringstream ss(snr_list);
                std::string tok;
                cfg.snr_db.clear();
                while (std::getline(ss, tok, ',')) {
                    if (!tok.empty()) cfg.snr_db.push_back(std::stod(tok));
                }
            }
            return cmd_sweep(config_path, cfg, out_csv, out_gnuplot, echo_config);
        }
        if (presets->parsed())
            return cmd_presets(preset_name, out_dir, paper_scale, preset_workers);
        if (cost->parsed()) return cmd_cost(c_nr, c_nt, c_k, schedule);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
