// srsense command-line front end. Talks to the library exclusively through
// the C API in srsense.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "srsense.h"

namespace {

struct ConfigDeleter {
    void operator()(srs_config* c) const { srs_config_destroy(c); }
};
struct ResultDeleter {
    void operator()(srs_result* r) const { srs_result_destroy(r); }
};
using ConfigPtr = std::unique_ptr<srs_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<srs_result, ResultDeleter>;

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::string seed;    // kept as text; empty = no override
    std::string trials;
    int threads = 0;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config_path, "experiment config file (key = value)");
    sub->add_option("--out", args.out_path, "output CSV path (default: config 'out' or stdout)");
    sub->add_option("--seed", args.seed, "master seed override");
    sub->add_option("--trials", args.trials, "Monte Carlo trials override");
    sub->add_option("--threads", args.threads,
                    "worker threads (0 = SRSENSE_THREADS env or hardware)");
}

int fail(srs_status status) {
    std::cerr << "srsense: " << srs_status_name(status) << ": " << srs_last_error()
              << "\n";
    return (status == SRS_ERR_CONFIG || status == SRS_ERR_INVALID_ARGUMENT) ? 1 : 2;
}

int run_kind(const std::string& kind, const CommonArgs& args) {
    ConfigPtr cfg;
    {
        srs_config* raw = nullptr;
        srs_status st;
        if (!args.config_path.empty())
            st = srs_config_load(args.config_path.c_str(), &raw);
        else
            st = srs_config_create(&raw);
        if (st != SRS_OK)
            return fail(st);
        cfg.reset(raw);
    }

    srs_status st = srs_config_set(cfg.get(), "kind", kind.c_str());
    if (st == SRS_OK && !args.seed.empty())
        st = srs_config_set(cfg.get(), "seed", args.seed.c_str());
    if (st == SRS_OK && !args.trials.empty())
        st = srs_config_set(cfg.get(), "trials", args.trials.c_str());
    if (st != SRS_OK)
        return fail(st);

    ResultPtr result;
    {
        srs_result* raw = nullptr;
        st = srs_run(cfg.get(), args.threads, &raw);
        if (st != SRS_OK)
            return fail(st);
        result.reset(raw);
    }

    std::string out_path = args.out_path;
    if (out_path.empty()) {
        const char* from_cfg = srs_config_get(cfg.get(), "out");
        if (from_cfg)
            out_path = from_cfg;
    }
    const char* csv = srs_result_csv(result.get());
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "srsense: cannot write '" << out_path << "'\n";
            return 2;
        }
        out << csv;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(srs_version()) +
                 " - stochastic-resonance spectrum sensing experiments"};
    app.require_subcommand(1);
    app.footer(
        "Experiments read a flat `key = value` config; every value has a default,\n"
        "so a bare subcommand runs the canonical setting (10 Hz tone, amplitude 0.3,\n"
        "fs 1000 Hz, a = b = 1, FFT 256). Common keys: seed, trials, tone.freq_hz,\n"
        "tone.amplitude, sample_rate_hz, nfft, sr.a, sr.b, sr.step_h,\n"
        "sr.substeps_per_sample, sr.added_noise_d, sr.discard_transient, out.\n"
        "Per kind: psd: noise_d, samples_per_trial; gainsweep: d_lo, d_hi, d_points;\n"
        "tune: d_lo, d_hi, budget; roc: snr_db (list), sensing_window_samples,\n"
        "pfa_points, detectors (plain,sr,dual); pdwindow: sensing_windows (list),\n"
        "snr_db, target_pfa, detectors; seqdelay: snr_db, horizon_windows, pfa_grid,\n"
        "e0_trials, e0_margin. The SR branch discards sr.discard_transient output\n"
        "samples (one FFT window by default); sensing windows are counted after\n"
        "the discard. The CSV header echoes the full effective configuration.");

    static const struct {
        const char* name;
        const char* help;
    } kinds[] = {
        {"psd", "input vs SR-output power spectral density at one noise level"},
        {"gainsweep", "narrowband SNR gain across a grid of noise intensities"},
        {"tune", "search for the noise intensity with maximum SNR gain"},
        {"roc", "block-detector ROC curves (plain / SR / dual) per SNR"},
        {"pdwindow", "detection probability vs sensing-window length"},
        {"seqdelay", "sequential detection delay vs false-alarm rate"},
    };

    CommonArgs args[std::size(kinds)];
    for (std::size_t i = 0; i < std::size(kinds); ++i) {
        CLI::App* sub = app.add_subcommand(kinds[i].name, kinds[i].help);
        add_common(sub, args[i]);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the usage error
        return code == 0 ? 0 : 1;
    }

    for (std::size_t i = 0; i < std::size(kinds); ++i) {
        if (app.got_subcommand(kinds[i].name))
            return run_kind(kinds[i].name, args[i]);
    }
    std::cerr << app.help();
    return 1;
}
