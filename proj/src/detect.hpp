#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "spectral.hpp"
#include "srfilter.hpp"

namespace srsense {

// Optional bistable pre-treatment in front of a detector.
struct PretreatConfig {
    SRParams params;
    IntegratorConfig integrator;
};

struct BlockDetectorConfig {
    std::size_t nfft = 256;
    std::size_t sensing_window_samples = 512;  // multiple of nfft
    std::optional<PretreatConfig> pretreat;
};

struct Threshold {
    double gamma = 0.0;
    double target_pfa = 0.1;
    std::size_t calibration_trials = 0;
    double achieved_pfa = 0.0;  // on the calibration sample
};

// Running CUSUM-style statistic m(n) with reference level e0.
struct SequentialState {
    double m = 0.0;
    double e0 = 0.0;
    double gamma = 0.0;
    std::size_t windows_seen = 0;
};

// OR-combination of a plain and an SR-pretreated branch, each calibrated to
// half the combined false-alarm budget.
struct DualConfig {
    Threshold plain_threshold;
    Threshold sr_threshold;
};

// Peak periodogram power of one FFT window: max over the one-sided bins,
// DC excluded. The building block of both detectors.
double window_peak_energy(std::span<const double> block, std::size_t nfft, double fs);

// Block decision metric: mean over the K = window/nfft consecutive FFT
// blocks of the per-block peak energy. With pretreatment enabled the stream
// must also cover the integrator's transient discard.
double block_metric(const SampleStream& stream, const BlockDetectorConfig& cfg);

// gamma = empirical (1 - target_pfa) quantile of the metric over `trials`
// independent H0 simulations. `threads` = 0 means automatic.
Threshold calibrate_threshold(const BlockDetectorConfig& cfg, const NoiseSpec& noise,
                              double fs, double target_pfa, std::size_t trials,
                              const SeedPath& seed, std::size_t threads = 0);

// H1 iff metric strictly exceeds gamma.
Hypothesis block_decide(double metric, const Threshold& th);

// Reference level E0 = mean + margin_factor * std of the per-window peak
// energy over `trials` independent H0 windows.
double estimate_e0(const BlockDetectorConfig& cfg, const NoiseSpec& noise, double fs,
                   std::size_t trials, double margin_factor, const SeedPath& seed,
                   std::size_t threads = 0);

// m <- max(m + e_n - e0, 0); alarm when m exceeds gamma.
std::pair<SequentialState, bool> seq_update(SequentialState state, double e_n);

struct SeqRunResult {
    std::optional<std::size_t> alarm_window;  // 1-based FFT-window index
    std::vector<double> trajectory;           // m(n) per window
};

// Feeds the stream (optionally pretreated) window by window through
// seq_update and reports the first alarm.
SeqRunResult seq_run(const SampleStream& stream, const BlockDetectorConfig& cfg,
                     double e0, double gamma);

// OR rule over the two calibrated branches. The plain branch reads the
// stream after the SR branch's transient-discard prefix so both branches
// see the same observation segment.
Hypothesis dual_decide(const SampleStream& stream, const DualConfig& dual,
                       const BlockDetectorConfig& plain_cfg,
                       const BlockDetectorConfig& sr_cfg);

}  // namespace srsense
