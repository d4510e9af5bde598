#include "detect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel.hpp"

namespace srsense {

namespace {

void validate_cfg(const BlockDetectorConfig& cfg) {
    if (cfg.nfft == 0 || cfg.sensing_window_samples == 0 ||
        cfg.sensing_window_samples % cfg.nfft != 0)
        throw std::invalid_argument(
            "detect: sensing window must be a nonzero multiple of nfft");
}

// Applies the optional pretreatment and hands back the samples the detector
// operates on. For the plain detector the stream is used as-is.
SampleStream detector_input(const SampleStream& stream, const BlockDetectorConfig& cfg) {
    if (!cfg.pretreat)
        return stream;
    return filter_stream(stream, cfg.pretreat->params, cfg.pretreat->integrator);
}

// One H0 stream long enough for the detector (transient included).
SampleStream h0_stream(const BlockDetectorConfig& cfg, const NoiseSpec& noise, double fs,
                       std::size_t min_samples) {
    std::size_t len = min_samples;
    if (cfg.pretreat)
        len += cfg.pretreat->integrator.discard_transient;
    return gen_awgn(noise, len, fs);
}

double quantile_gamma(std::vector<double> values, double target_pfa) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    const double pos = std::ceil((1.0 - target_pfa) * static_cast<double>(n));
    const std::size_t idx =
        std::min(n, std::max<std::size_t>(1, static_cast<std::size_t>(pos)));
    return values[idx - 1];
}

// Per-trial copy of the detector config with its own injected-noise stream.
// Seed roles follow the bench convention: child 1 = integrator, 2 = channel.
BlockDetectorConfig trial_cfg(const BlockDetectorConfig& cfg, const SeedPath& trial_seed) {
    BlockDetectorConfig out = cfg;
    if (out.pretreat)
        out.pretreat->integrator.seed = trial_seed.child(1);
    return out;
}

}  // namespace

double window_peak_energy(std::span<const double> block, std::size_t nfft, double fs) {
    const Periodogram p = periodogram(block, nfft, fs);
    double peak = 0.0;
    for (std::size_t t = 1; t < p.power.size(); ++t)
        peak = std::max(peak, p.power[t]);
    return peak;
}

double block_metric(const SampleStream& stream, const BlockDetectorConfig& cfg) {
    validate_cfg(cfg);
    const SampleStream input = detector_input(stream, cfg);
    if (input.size() < cfg.sensing_window_samples)
        throw std::invalid_argument("block_metric: stream shorter than the sensing window");
    const std::size_t k = cfg.sensing_window_samples / cfg.nfft;
    double acc = 0.0;
    for (std::size_t b = 0; b < k; ++b) {
        acc += window_peak_energy(
            std::span<const double>(input.samples.data() + b * cfg.nfft, cfg.nfft),
            cfg.nfft, input.sample_rate_hz);
    }
    return acc / static_cast<double>(k);
}

Threshold calibrate_threshold(const BlockDetectorConfig& cfg, const NoiseSpec& noise,
                              double fs, double target_pfa, std::size_t trials,
                              const SeedPath& seed, std::size_t threads) {
    validate_cfg(cfg);
    if (trials < 100)
        throw std::invalid_argument("calibrate_threshold: need at least 100 trials");
    if (!(target_pfa > 0.0 && target_pfa < 1.0))
        throw std::invalid_argument("calibrate_threshold: target_pfa must be in (0,1)");

    std::vector<double> metrics(trials);
    parallel_for(trials, threads, [&](std::size_t t) {
        const SeedPath trial_seed = seed.child(t);
        NoiseSpec trial_noise{noise.variance, trial_seed.child(2)};
        const SampleStream y =
            h0_stream(cfg, trial_noise, fs, cfg.sensing_window_samples);
        metrics[t] = block_metric(y, trial_cfg(cfg, trial_seed));
    });

    Threshold th;
    th.gamma = quantile_gamma(metrics, target_pfa);
    th.target_pfa = target_pfa;
    th.calibration_trials = trials;
    std::size_t above = 0;
    for (double m : metrics)
        above += (m > th.gamma);
    th.achieved_pfa = static_cast<double>(above) / static_cast<double>(trials);
    return th;
}

Hypothesis block_decide(double metric, const Threshold& th) {
    return metric > th.gamma ? Hypothesis::H1 : Hypothesis::H0;
}

double estimate_e0(const BlockDetectorConfig& cfg, const NoiseSpec& noise, double fs,
                   std::size_t trials, double margin_factor, const SeedPath& seed,
                   std::size_t threads) {
    validate_cfg(cfg);
    if (trials < 100)
        throw std::invalid_argument("estimate_e0: need at least 100 trials");

    std::vector<double> energies(trials);
    parallel_for(trials, threads, [&](std::size_t t) {
        const SeedPath trial_seed = seed.child(t);
        NoiseSpec trial_noise{noise.variance, trial_seed.child(2)};
        const SampleStream y = h0_stream(cfg, trial_noise, fs, cfg.nfft);
        const SampleStream input = detector_input(y, trial_cfg(cfg, trial_seed));
        energies[t] = window_peak_energy(
            std::span<const double>(input.samples.data(), cfg.nfft), cfg.nfft,
            input.sample_rate_hz);
    });
    double mean = 0.0;
    for (double e : energies)
        mean += e;
    mean /= static_cast<double>(trials);
    double var = 0.0;
    for (double e : energies)
        var += (e - mean) * (e - mean);
    var /= static_cast<double>(trials);
    return mean + margin_factor * std::sqrt(var);
}

std::pair<SequentialState, bool> seq_update(SequentialState state, double e_n) {
    state.m = std::max(state.m + e_n - state.e0, 0.0);
    state.windows_seen += 1;
    return {state, state.m > state.gamma};
}

SeqRunResult seq_run(const SampleStream& stream, const BlockDetectorConfig& cfg,
                     double e0, double gamma) {
    validate_cfg(cfg);
    const SampleStream input = detector_input(stream, cfg);
    if (input.size() < cfg.nfft)
        throw std::invalid_argument("seq_run: stream shorter than one FFT window");

    SeqRunResult result;
    SequentialState state;
    state.e0 = e0;
    state.gamma = gamma;
    const std::size_t windows = input.size() / cfg.nfft;
    result.trajectory.reserve(windows);
    for (std::size_t n = 0; n < windows; ++n) {
        const double e_n = window_peak_energy(
            std::span<const double>(input.samples.data() + n * cfg.nfft, cfg.nfft),
            cfg.nfft, input.sample_rate_hz);
        bool alarm = false;
        std::tie(state, alarm) = seq_update(state, e_n);
        result.trajectory.push_back(state.m);
        if (alarm && !result.alarm_window)
            result.alarm_window = n + 1;
    }
    return result;
}

Hypothesis dual_decide(const SampleStream& stream, const DualConfig& dual,
                       const BlockDetectorConfig& plain_cfg,
                       const BlockDetectorConfig& sr_cfg) {
    if (!sr_cfg.pretreat)
        throw std::invalid_argument("dual_decide: SR branch has no pretreatment configured");
    const std::size_t skip = sr_cfg.pretreat->integrator.discard_transient;
    if (stream.size() < skip + plain_cfg.sensing_window_samples)
        throw std::invalid_argument("dual_decide: stream too short for both branches");
    SampleStream tail{std::vector<double>(stream.samples.begin() + skip,
                                          stream.samples.end()),
                      stream.sample_rate_hz};
    const double m_plain = block_metric(tail, plain_cfg);
    const double m_sr = block_metric(stream, sr_cfg);
    const bool h1 = block_decide(m_plain, dual.plain_threshold) == Hypothesis::H1 ||
                    block_decide(m_sr, dual.sr_threshold) == Hypothesis::H1;
    return h1 ? Hypothesis::H1 : Hypothesis::H0;
}

}  // namespace srsense
