#include "doctest.h"

#include <cmath>

#include "detect.hpp"

using namespace srsense;

namespace {

IntegratorConfig default_integrator() {
    IntegratorConfig cfg;
    cfg.step_h = 0.05;
    cfg.substeps_per_sample = 10;
    cfg.discard_transient = 256;
    return cfg;
}

BlockDetectorConfig sr_detector(std::size_t window) {
    return BlockDetectorConfig{256, window,
                               PretreatConfig{SRParams{1.0, 1.0}, default_integrator()}};
}

}  // namespace

TEST_CASE("block_metric on degenerate streams") {
    const BlockDetectorConfig cfg{256, 512, std::nullopt};
    SampleStream zeros{std::vector<double>(512, 0.0), 1000.0};
    CHECK(block_metric(zeros, cfg) == 0.0);

    // K = 1 equals the single block's peak
    const BlockDetectorConfig k1{256, 256, std::nullopt};
    const SampleStream tone =
        gen_sinusoid(ToneSpec{16.0 * 1000.0 / 256.0, 1.0, 0.0}, 256, 1000.0);
    const double m = block_metric(tone, k1);
    CHECK(m == doctest::Approx(window_peak_energy(tone.samples, 256, 1000.0)));

    // on-bin unit tone, K = 2: both blocks identical, M equals the peak (0.5)
    const SampleStream tone2 =
        gen_sinusoid(ToneSpec{16.0 * 1000.0 / 256.0, 1.0, 0.0}, 512, 1000.0);
    CHECK(block_metric(tone2, cfg) == doctest::Approx(0.5).epsilon(1e-9));

    SampleStream sh{std::vector<double>(100, 0.0), 1000.0};
    CHECK_THROWS_AS(block_metric(sh, cfg), std::invalid_argument);
    CHECK_THROWS_AS(block_metric(zeros, BlockDetectorConfig{256, 300, std::nullopt}),
                    std::invalid_argument);
}

TEST_CASE("block_decide boundary is strict") {
    Threshold th;
    th.gamma = 1.0;
    CHECK(block_decide(1.0, th) == Hypothesis::H0);
    CHECK(block_decide(1.0 + 1e-12, th) == Hypothesis::H1);
    CHECK(block_decide(0.0, th) == Hypothesis::H0);
}

TEST_CASE("calibrate_threshold hits the target on the calibration sample") {
    const BlockDetectorConfig cfg{256, 512, std::nullopt};
    const NoiseSpec noise{1.0, SeedPath{}};
    const SeedPath seed = SeedPath::root(40);
    const Threshold th = calibrate_threshold(cfg, noise, 1000.0, 0.1, 400, seed);
    CHECK(th.achieved_pfa == doctest::Approx(0.1).epsilon(0.05));
    CHECK(th.calibration_trials == 400);

    // recalibration with the same seed path is identical
    const Threshold th2 = calibrate_threshold(cfg, noise, 1000.0, 0.1, 400, seed);
    CHECK(th.gamma == th2.gamma);

    // gamma is non-increasing in the target pfa (same seed, same metrics)
    const Threshold t05 = calibrate_threshold(cfg, noise, 1000.0, 0.05, 400, seed);
    const Threshold t20 = calibrate_threshold(cfg, noise, 1000.0, 0.2, 400, seed);
    CHECK(t05.gamma >= th.gamma);
    CHECK(th.gamma >= t20.gamma);

    CHECK_THROWS_AS(calibrate_threshold(cfg, noise, 1000.0, 0.1, 50, seed),
                    std::invalid_argument);
    CHECK_THROWS_AS(calibrate_threshold(cfg, noise, 1000.0, 1.5, 400, seed),
                    std::invalid_argument);
}

TEST_CASE("estimate_e0") {
    const BlockDetectorConfig cfg{256, 256, std::nullopt};
    // zero noise: every window energy is zero, E0 = 0 for any margin
    CHECK(estimate_e0(cfg, NoiseSpec{0.0, SeedPath{}}, 1000.0, 200, 0.0,
                      SeedPath::root(1)) == 0.0);
    CHECK(estimate_e0(cfg, NoiseSpec{0.0, SeedPath{}}, 1000.0, 200, 0.5,
                      SeedPath::root(1)) == 0.0);
    // reproducible across reruns, stable across seeds within a few percent
    const double a = estimate_e0(cfg, NoiseSpec{1.0, SeedPath{}}, 1000.0, 1000, 0.5,
                                 SeedPath::root(2));
    const double b = estimate_e0(cfg, NoiseSpec{1.0, SeedPath{}}, 1000.0, 1000, 0.5,
                                 SeedPath::root(3));
    CHECK(a == doctest::Approx(b).epsilon(0.02));
    // margin 0 gives the plain mean, which is below the margin-0.5 level
    const double m0 = estimate_e0(cfg, NoiseSpec{1.0, SeedPath{}}, 1000.0, 1000, 0.0,
                                  SeedPath::root(2));
    CHECK(m0 < a);
}

TEST_CASE("seq_update arithmetic and clamping") {
    SequentialState s;
    s.e0 = 1.0;
    s.gamma = 5.0;

    // e_n equal to the reference: m pinned at zero, no alarm
    for (int i = 0; i < 10; ++i) {
        auto [next, alarm] = seq_update(s, 1.0);
        s = next;
        CHECK(s.m == 0.0);
        CHECK(!alarm);
    }
    CHECK(s.windows_seen == 10);

    // +1 drift per window with gamma 5: alarm on window 6
    s = SequentialState{};
    s.e0 = 1.0;
    s.gamma = 5.0;
    int alarm_at = 0;
    for (int n = 1; n <= 10 && alarm_at == 0; ++n) {
        auto [next, alarm] = seq_update(s, 2.0);
        s = next;
        if (alarm)
            alarm_at = n;
    }
    CHECK(alarm_at == 6);

    // clamp at zero after a dip
    s = SequentialState{};
    s.e0 = 1.0;
    auto [next, alarm] = seq_update(s, -3.0);
    CHECK(next.m == 0.0);
    CHECK(!alarm);
}

TEST_CASE("m(n) stays nonnegative under adversarial inputs") {
    Rng rng(99);
    SequentialState s;
    s.e0 = 0.5;
    s.gamma = 1e9;
    for (int i = 0; i < 10000; ++i) {
        double e = 0.0;
        switch (rng.next_u64() % 4) {
            case 0: e = -1e12 * rng.uniform01(); break;
            case 1: e = 1e12 * rng.uniform01(); break;
            case 2: e = rng.gaussian(); break;
            default: e = 0.0; break;
        }
        auto [next, alarm] = seq_update(s, e);
        s = next;
        CHECK(s.m >= 0.0);
    }
}

TEST_CASE("seq_run minimal window") {
    const BlockDetectorConfig cfg{256, 256, std::nullopt};
    SampleStream zeros{std::vector<double>(256, 0.0), 1000.0};
    const SeqRunResult r = seq_run(zeros, cfg, 1.0, 5.0);
    CHECK(!r.alarm_window.has_value());
    REQUIRE(r.trajectory.size() == 1);
    CHECK(r.trajectory[0] == 0.0);

    SampleStream tiny{std::vector<double>(100, 0.0), 1000.0};
    CHECK_THROWS_AS(seq_run(tiny, cfg, 1.0, 5.0), std::invalid_argument);
}

TEST_CASE("seq_run alarms fast on a strong tone") {
    const BlockDetectorConfig cfg{256, 256, std::nullopt};
    const double fs = 1000.0;
    // strong on-bin tone (peak energy 0.5/window) against e0 = 0.01
    const SampleStream tone =
        gen_sinusoid(ToneSpec{16.0 * fs / 256.0, 1.0, 0.0}, 256 * 10, fs);
    const SeqRunResult r = seq_run(tone, cfg, 0.01, 1.0);
    REQUIRE(r.alarm_window.has_value());
    CHECK(*r.alarm_window <= 3);
}

TEST_CASE("dual_decide OR rule") {
    const double fs = 1000.0;
    const BlockDetectorConfig plain_cfg{256, 512, std::nullopt};
    const BlockDetectorConfig sr_cfg = sr_detector(512);

    DualConfig dual;
    dual.plain_threshold.gamma = 1e9;  // plain branch never fires
    dual.sr_threshold.gamma = 1e9;     // SR branch never fires

    const SampleStream noise =
        gen_awgn(NoiseSpec{1.0, SeedPath::root(12)}, 768, fs);
    CHECK(dual_decide(noise, dual, plain_cfg, sr_cfg) == Hypothesis::H0);

    dual.sr_threshold.gamma = -1.0;  // SR branch always fires
    CHECK(dual_decide(noise, dual, plain_cfg, sr_cfg) == Hypothesis::H1);

    dual.sr_threshold.gamma = 1e9;
    dual.plain_threshold.gamma = -1.0;
    CHECK(dual_decide(noise, dual, plain_cfg, sr_cfg) == Hypothesis::H1);

    SampleStream tiny{std::vector<double>(300, 0.0), fs};
    CHECK_THROWS_AS(dual_decide(tiny, dual, plain_cfg, sr_cfg), std::invalid_argument);
}

TEST_CASE("sequential drift sign: down under H0, up under detectable H1") {
    const BlockDetectorConfig cfg{256, 256, std::nullopt};
    const double fs = 1000.0;
    const NoiseSpec noise{1.0, SeedPath{}};
    const double e0 =
        estimate_e0(cfg, noise, fs, 1000, 0.5, SeedPath::root(80));
    double h0_mean = 0.0, h1_mean = 0.0;
    const int trials = 600;
    const SeedPath root = SeedPath::root(81);
    for (int t = 0; t < trials; ++t) {
        const SeedPath sp = root.child(t);
        const ToneSpec tone{10.0, std::sqrt(2.0), 0.3};  // 0 dB, easily detectable
        const SampleStream w = gen_awgn(NoiseSpec{1.0, sp.child(2)}, 256, fs);
        SampleStream y = synth_observation(Hypothesis::H1, tone,
                                           NoiseSpec{1.0, sp.child(2)}, 256, fs);
        h0_mean += window_peak_energy(w.samples, 256, fs);
        h1_mean += window_peak_energy(y.samples, 256, fs);
    }
    h0_mean /= trials;
    h1_mean /= trials;
    CHECK(h0_mean - e0 < 0.0);
    CHECK(h1_mean - e0 > 0.0);
}

TEST_CASE("metric mean grows with the H1 signal strength") {
    // plain detector, unit noise, tone amplitude set from the SNR: E[M]
    // cannot decrease as the tone strengthens (within Monte Carlo noise)
    const BlockDetectorConfig cfg{256, 512, std::nullopt};
    const double fs = 1000.0;
    const SeedPath root = SeedPath::root(60);
    const int trials = 600;
    std::vector<double> means;
    for (double snr : {-25.0, -20.0, -15.0, -10.0}) {
        const double amplitude = std::sqrt(2.0 * std::pow(10.0, snr / 10.0));
        double acc = 0.0;
        for (int t = 0; t < trials; ++t) {
            const SeedPath sp = root.child(t);  // common random numbers across SNRs
            Rng phase_rng(sp.child(0));
            const ToneSpec tone{10.0, amplitude, 2.0 * M_PI * phase_rng.uniform01()};
            const SampleStream y = synth_observation(
                Hypothesis::H1, tone, NoiseSpec{1.0, sp.child(2)}, 512, fs);
            acc += block_metric(y, cfg);
        }
        means.push_back(acc / trials);
    }
    for (std::size_t i = 1; i < means.size(); ++i)
        CHECK(means[i] >= means[i - 1] * 0.99);
}
