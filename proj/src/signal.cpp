#include "signal.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

namespace srsense {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;

void require(bool ok, const std::string& msg) {
    if (!ok)
        throw std::invalid_argument(msg);
}
}  // namespace

SampleStream gen_sinusoid(const ToneSpec& tone, std::size_t n, double fs) {
    require(fs > 0.0, "gen_sinusoid: sample rate must be positive");
    require(n >= 1, "gen_sinusoid: need at least one sample");
    require(tone.amplitude >= 0.0, "gen_sinusoid: amplitude must be nonnegative");
    if (tone.amplitude == 0.0)
        return SampleStream{std::vector<double>(n, 0.0), fs};
    require(tone.freq_hz > 0.0 && tone.freq_hz < fs / 2.0,
            "gen_sinusoid: tone frequency must lie below Nyquist");

    SampleStream out{std::vector<double>(n), fs};
    const double cycles_per_sample = tone.freq_hz / fs;
    for (std::size_t k = 0; k < n; ++k) {
        // Reduce the phase argument in cycles; keeps sin() accurate for
        // multi-million-sample streams at RF-scale frequencies.
        const double cyc = std::fmod(cycles_per_sample * static_cast<double>(k), 1.0);
        out.samples[k] = tone.amplitude * std::sin(kTwoPi * cyc + tone.phase_rad);
    }
    return out;
}

SampleStream gen_awgn(const NoiseSpec& noise, std::size_t n, double fs) {
    require(fs > 0.0, "gen_awgn: sample rate must be positive");
    require(n >= 1, "gen_awgn: need at least one sample");
    require(noise.variance >= 0.0, "gen_awgn: variance must be nonnegative");

    SampleStream out{std::vector<double>(n), fs};
    const double sigma = std::sqrt(noise.variance);
    Rng rng(noise.seed);
    for (auto& s : out.samples)
        s = sigma * rng.gaussian();
    return out;
}

SampleStream synth_observation(Hypothesis hyp, const ToneSpec& tone,
                               const NoiseSpec& noise, std::size_t n, double fs) {
    SampleStream out = gen_awgn(noise, n, fs);
    if (hyp == Hypothesis::H1) {
        const SampleStream s = gen_sinusoid(tone, n, fs);
        for (std::size_t k = 0; k < n; ++k)
            out.samples[k] += s.samples[k];
    }
    return out;
}

double input_snr_db(double amplitude, double variance) {
    if (variance <= 0.0)
        throw std::invalid_argument("input_snr_db: undefined for zero noise variance");
    return 10.0 * std::log10((amplitude * amplitude / 2.0) / variance);
}

double input_snr_db(const ToneSpec& tone, const NoiseSpec& noise) {
    return input_snr_db(tone.amplitude, noise.variance);
}

double noise_variance_for_snr_db(double amplitude, double snr_db) {
    require(amplitude > 0.0, "noise_variance_for_snr_db: amplitude must be positive");
    return (amplitude * amplitude / 2.0) * std::pow(10.0, -snr_db / 10.0);
}

std::vector<double> design_lowpass(const LowpassSpec& spec, double fs) {
    require(fs > 0.0, "design_lowpass: sample rate must be positive");
    require(spec.num_taps >= 3 && spec.num_taps % 2 == 1,
            "design_lowpass: tap count must be odd and >= 3");
    require(spec.cutoff_hz > 0.0 && spec.cutoff_hz < fs / 2.0,
            "design_lowpass: cutoff must lie below Nyquist");
    require(spec.decimation >= 1, "design_lowpass: decimation must be positive");

    const int taps = spec.num_taps;
    const int mid = taps / 2;
    const double fc = spec.cutoff_hz / fs;  // cycles per sample
    std::vector<double> h(taps);
    double sum = 0.0;
    for (int i = 0; i < taps; ++i) {
        const int k = i - mid;
        const double sinc = (k == 0) ? 2.0 * fc : std::sin(kTwoPi * fc * k) / (M_PI * k);
        const double window = 0.54 - 0.46 * std::cos(kTwoPi * i / (taps - 1));
        h[i] = sinc * window;
        sum += h[i];
    }
    for (auto& v : h)
        v /= sum;
    return h;
}

std::string to_csv(const SampleStream& stream) {
    std::ostringstream out;
    out << "index,value\n";
    char buf[40];
    for (std::size_t k = 0; k < stream.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%zu,%.10g\n", k, stream.samples[k]);
        out << buf;
    }
    return out.str();
}

SampleStream mix_and_decimate(const SampleStream& in, double mixer_freq_hz,
                              const LowpassSpec& lpf) {
    const double fs = in.sample_rate_hz;
    require(fs > 0.0, "mix_and_decimate: input stream has no sample rate");
    require(mixer_freq_hz >= 0.0, "mix_and_decimate: mixer frequency must be nonnegative");
    require(in.size() >= 2 * static_cast<std::size_t>(lpf.num_taps),
            "mix_and_decimate: stream too short for filter warm-up");
    const double out_rate = fs / lpf.decimation;
    // Everything the filter passes must be representable after decimation.
    require(lpf.cutoff_hz < out_rate / 2.0,
            "mix_and_decimate: cutoff would alias at the decimated rate");

    const std::vector<double> taps = design_lowpass(lpf, fs);
    const std::size_t n = in.size();
    std::vector<double> mixed(n);
    const double cycles_per_sample = mixer_freq_hz / fs;
    for (std::size_t k = 0; k < n; ++k) {
        const double cyc = std::fmod(cycles_per_sample * static_cast<double>(k), 1.0);
        mixed[k] = in.samples[k] * std::cos(kTwoPi * cyc);
    }

    // Only emit outputs where the full kernel fits (no edge transients).
    const std::size_t tap_count = taps.size();
    const std::size_t out_len = (n - tap_count) / static_cast<std::size_t>(lpf.decimation) + 1;
    SampleStream out{std::vector<double>(out_len), out_rate};
    for (std::size_t m = 0; m < out_len; ++m) {
        const std::size_t pos = m * static_cast<std::size_t>(lpf.decimation);
        double acc = 0.0;
        for (std::size_t j = 0; j < tap_count; ++j)
            acc += taps[j] * mixed[pos + j];
        out.samples[m] = acc;
    }
    return out;
}

}  // namespace srsense
