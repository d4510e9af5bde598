#include "doctest.h"

#include <cmath>

#include "signal.hpp"
#include "spectral.hpp"

using namespace srsense;

TEST_CASE("gen_sinusoid closed form") {
    const ToneSpec tone{10.0, 0.3, 0.0};
    const SampleStream s = gen_sinusoid(tone, 16, 100.0);
    CHECK(s.samples[0] == 0.0);
    // 0.3 sin(2 pi * 10 * 2 / 100) = 0.3 sin(0.4 pi)
    CHECK(s.samples[2] == doctest::Approx(0.285316954888546).epsilon(1e-12));
    CHECK(s.sample_rate_hz == 100.0);
}

TEST_CASE("gen_sinusoid zero amplitude and Nyquist rejection") {
    const SampleStream z = gen_sinusoid(ToneSpec{77.0, 0.0, 1.0}, 8, 100.0);
    for (double v : z.samples)
        CHECK(v == 0.0);
    CHECK_THROWS_AS(gen_sinusoid(ToneSpec{50.0, 1.0, 0.0}, 8, 100.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(gen_sinusoid(ToneSpec{10.0, 1.0, 0.0}, 0, 100.0),
                    std::invalid_argument);
}

TEST_CASE("gen_awgn determinism and degenerate variance") {
    const SeedPath seed = SeedPath::root(5).child(1);
    const SampleStream a = gen_awgn(NoiseSpec{1.0, seed}, 256, 100.0);
    const SampleStream b = gen_awgn(NoiseSpec{1.0, seed}, 256, 100.0);
    CHECK(a.samples == b.samples);
    const SampleStream z = gen_awgn(NoiseSpec{0.0, seed}, 64, 100.0);
    for (double v : z.samples)
        CHECK(v == 0.0);
}

TEST_CASE("gen_awgn sample variance concentrates") {
    const SampleStream s =
        gen_awgn(NoiseSpec{1.0, SeedPath::root(9)}, 100000, 100.0);
    double m2 = 0.0;
    for (double v : s.samples)
        m2 += v * v;
    m2 /= static_cast<double>(s.size());
    CHECK(m2 == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("synth_observation additivity") {
    const ToneSpec tone{10.0, 0.3, 0.7};
    const NoiseSpec noise{2.0, SeedPath::root(13)};
    const SampleStream h0 = synth_observation(Hypothesis::H0, tone, noise, 128, 100.0);
    const SampleStream h1 = synth_observation(Hypothesis::H1, tone, noise, 128, 100.0);
    const SampleStream sine = gen_sinusoid(tone, 128, 100.0);
    const SampleStream w = gen_awgn(noise, 128, 100.0);
    for (std::size_t k = 0; k < 128; ++k) {
        CHECK(h0.samples[k] == w.samples[k]);
        CHECK(h1.samples[k] == doctest::Approx(sine.samples[k] + w.samples[k]).epsilon(1e-15));
    }
    // zero-noise H1 equals the pure tone
    const SampleStream pure =
        synth_observation(Hypothesis::H1, tone, NoiseSpec{0.0, SeedPath::root(1)}, 64, 100.0);
    const SampleStream tone_only = gen_sinusoid(tone, 64, 100.0);
    CHECK(pure.samples == tone_only.samples);
}

TEST_CASE("input_snr_db values and scaling law") {
    CHECK(input_snr_db(std::sqrt(2.0), 1.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(input_snr_db(0.3, 0.045) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(input_snr_db(0.3, 4.5) == doctest::Approx(-20.0).epsilon(1e-12));
    CHECK_THROWS_AS(input_snr_db(0.3, 0.0), std::invalid_argument);
    Rng rng(21);
    for (int i = 0; i < 50; ++i) {
        const double a = 0.1 + rng.uniform01();
        const double v = 0.1 + rng.uniform01();
        const double c = 0.05 + 4.0 * rng.uniform01();
        CHECK(input_snr_db(a * std::sqrt(c), v) ==
              doctest::Approx(input_snr_db(a, v) + 10.0 * std::log10(c)).epsilon(1e-9));
    }
    // inverse
    const double var = noise_variance_for_snr_db(0.3, -20.0);
    CHECK(var == doctest::Approx(4.5).epsilon(1e-12));
}

TEST_CASE("design_lowpass DC gain and tap validation") {
    const LowpassSpec spec{100.0, 101, 1};
    const auto taps = design_lowpass(spec, 1000.0);
    double sum = 0.0;
    for (double t : taps)
        sum += t;
    CHECK(std::abs(sum - 1.0) <= 1e-9);
    CHECK_THROWS_AS(design_lowpass(LowpassSpec{100.0, 100, 1}, 1000.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(design_lowpass(LowpassSpec{600.0, 101, 1}, 1000.0),
                    std::invalid_argument);
}

static double steady_amplitude(const SampleStream& s) {
    double peak = 0.0;
    // skip the edges, measure the middle
    for (std::size_t k = s.size() / 4; k < 3 * s.size() / 4; ++k)
        peak = std::max(peak, std::abs(s.samples[k]));
    return peak;
}

TEST_CASE("lowpass stopband and passband") {
    const double fs = 1000.0;
    const LowpassSpec lpf{250.0, 255, 1};
    // tone near Nyquist is rejected to < 1%
    SampleStream hi = gen_sinusoid(ToneSpec{499.0, 1.0, 0.0}, 4096, fs);
    const SampleStream hi_out = mix_and_decimate(hi, 0.0, lpf);
    CHECK(steady_amplitude(hi_out) < 0.01);
    // tone at cutoff/10 passes within 2%
    SampleStream lo = gen_sinusoid(ToneSpec{25.0, 1.0, 0.0}, 4096, fs);
    const SampleStream lo_out = mix_and_decimate(lo, 0.0, lpf);
    CHECK(steady_amplitude(lo_out) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("stream and spectrum debug dumps") {
    SampleStream s{{0.5, -1.25}, 100.0};
    CHECK(to_csv(s) == "index,value\n0,0.5\n1,-1.25\n");
    std::vector<double> zeros(8, 0.0);
    const std::string psd = to_csv(periodogram(zeros, 8, 80.0));
    CHECK(psd.rfind("freq_hz,power\n0,0\n10,0\n", 0) == 0);
}

TEST_CASE("mix_and_decimate frequency arithmetic") {
    const double fs = 10000.0;
    const LowpassSpec lpf{40.0, 601, 100};  // out rate 100 Hz
    SampleStream tone = gen_sinusoid(ToneSpec{1009.0, 1.0, 0.3}, 40000, fs);
    const SampleStream out = mix_and_decimate(tone, 1000.0, lpf);
    CHECK(out.sample_rate_hz == doctest::Approx(100.0));
    REQUIRE(out.size() >= 256);
    const Periodogram p = periodogram(
        std::span<const double>(out.samples.data(), 256), 256, out.sample_rate_hz);
    // dominant bin within one bin of |1009 - 1000| = 9 Hz
    std::size_t best = 0;
    for (std::size_t t = 1; t < p.power.size(); ++t)
        if (p.power[t] > p.power[best])
            best = t;
    CHECK(std::abs(static_cast<double>(best) * p.bin_width_hz - 9.0) <= p.bin_width_hz);

    // mixer equal to the tone frequency puts the energy at DC
    SampleStream dc_case = gen_sinusoid(ToneSpec{1000.0, 1.0, 1.0}, 40000, fs);
    const SampleStream dc_out = mix_and_decimate(dc_case, 1000.0, lpf);
    const Periodogram pdc = periodogram(
        std::span<const double>(dc_out.samples.data(), 256), 256, dc_out.sample_rate_hz);
    std::size_t best_dc = 0;
    for (std::size_t t = 1; t < pdc.power.size(); ++t)
        if (pdc.power[t] > pdc.power[best_dc])
            best_dc = t;
    CHECK(best_dc == 0);

    // cutoff that cannot survive the decimated rate is rejected
    CHECK_THROWS_AS(mix_and_decimate(tone, 1000.0, LowpassSpec{80.0, 601, 100}),
                    std::invalid_argument);
    // warm-up precondition
    SampleStream tiny = gen_sinusoid(ToneSpec{1009.0, 1.0, 0.0}, 100, fs);
    CHECK_THROWS_AS(mix_and_decimate(tiny, 1000.0, lpf), std::invalid_argument);
}
