#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rng.hpp"

namespace srsense {

// Uniformly sampled real-valued waveform. The universal carrier between the
// generators, the SR filter and the detectors.
struct SampleStream {
    std::vector<double> samples;
    double sample_rate_hz = 0.0;

    std::size_t size() const { return samples.size(); }
};

struct ToneSpec {
    double freq_hz = 10.0;
    double amplitude = 0.3;
    double phase_rad = 0.0;
};

struct NoiseSpec {
    double variance = 1.0;  // per-sample variance
    SeedPath seed;
};

struct LowpassSpec {
    double cutoff_hz = 0.0;
    int num_taps = 0;  // odd
    int decimation = 1;
};

enum class Hypothesis { H0, H1 };

// samples[k] = A * sin(2*pi*f*k/fs + phase). Rejects f >= fs/2 unless A == 0.
SampleStream gen_sinusoid(const ToneSpec& tone, std::size_t n, double fs);

// i.i.d. zero-mean gaussian samples, deterministic given the seed path.
SampleStream gen_awgn(const NoiseSpec& noise, std::size_t n, double fs);

// H0: noise only. H1: tone + noise, elementwise, same noise stream as
// gen_awgn with the same seed path.
SampleStream synth_observation(Hypothesis hyp, const ToneSpec& tone,
                               const NoiseSpec& noise, std::size_t n, double fs);

// 10*log10((A^2/2) / variance). Rejects variance <= 0.
double input_snr_db(const ToneSpec& tone, const NoiseSpec& noise);
double input_snr_db(double amplitude, double variance);

// Inverse of input_snr_db: per-sample variance that puts a tone of the given
// amplitude at the requested SNR.
double noise_variance_for_snr_db(double amplitude, double snr_db);

// Linear-phase windowed-sinc FIR (Hamming), normalized to unit DC gain.
std::vector<double> design_lowpass(const LowpassSpec& spec, double fs);

// Multiplies the stream by cos(2*pi*f_mix*t), low-pass filters and keeps
// every decimation-th sample. A tone at f_in lands at |f_in - f_mix| in the
// decimated output; the sum image is removed by the filter.
SampleStream mix_and_decimate(const SampleStream& in, double mixer_freq_hz,
                              const LowpassSpec& lpf);

// Debug dump, one `index,value` row per sample.
std::string to_csv(const SampleStream& stream);

}  // namespace srsense
