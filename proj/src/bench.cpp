#include "bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "detect.hpp"
#include "parallel.hpp"
#include "tuning.hpp"

namespace srsense {

namespace {

constexpr const char* kVersion = "srsense 0.1.0";

// seed-path roles inside one trial
constexpr std::uint64_t kRolePhase = 0;
constexpr std::uint64_t kRoleIntegrator = 1;
constexpr std::uint64_t kRoleChannel = 2;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string fmt_sz(std::size_t v) {
    return std::to_string(v);
}

// Everything the experiments share: signal geometry, well shape, integrator.
struct CommonSettings {
    std::uint64_t master_seed = 1;
    double fs = 1000.0;
    std::size_t nfft = 256;
    ToneSpec tone{10.0, 0.3, 0.0};
    bool bin_aligned = false;
    SRParams params;
    IntegratorConfig integrator;
    std::size_t threads = 0;

    std::map<std::string, std::string> echo;  // resolved values for the header
};

void echo_val(CommonSettings& c, const std::string& key, const std::string& v) {
    c.echo[key] = v;
}

CommonSettings parse_common(const Config& cfg, const RunOptions& opts) {
    CommonSettings c;
    c.master_seed = cfg.get_u64("seed", 1);
    c.fs = cfg.get_double("sample_rate_hz", 1000.0);
    c.nfft = cfg.get_size("nfft", 256);
    c.tone.freq_hz = cfg.get_double("tone.freq_hz", 10.0);
    c.tone.amplitude = cfg.get_double("tone.amplitude", 0.3);
    c.bin_aligned = cfg.get_bool("bin_aligned", false);
    if (c.fs <= 0.0)
        throw ConfigError("config: sample_rate_hz must be positive");
    if (c.nfft < 8 || (c.nfft & (c.nfft - 1)) != 0)
        throw ConfigError("config: nfft must be a power of two, >= 8");
    if (c.bin_aligned) {
        const double bw = c.fs / static_cast<double>(c.nfft);
        c.tone.freq_hz = std::max(1.0, std::round(c.tone.freq_hz / bw)) * bw;
    }
    c.params.a = cfg.get_double("sr.a", 1.0);
    c.params.b = cfg.get_double("sr.b", 1.0);
    c.integrator.step_h = cfg.get_double("sr.step_h", 0.05);
    c.integrator.substeps_per_sample =
        static_cast<int>(cfg.get_size("sr.substeps_per_sample", 10));
    c.integrator.added_noise_d = cfg.get_double("sr.added_noise_d", 0.0);
    c.integrator.discard_transient = cfg.get_size("sr.discard_transient", c.nfft);
    if (cfg.has("sr.initial_x")) {
        c.integrator.initial_x = cfg.get_double("sr.initial_x", 0.0);
        echo_val(c, "sr.initial_x", fmt(*c.integrator.initial_x));
    }
    c.threads = opts.threads;

    echo_val(c, "seed", std::to_string(c.master_seed));
    echo_val(c, "sample_rate_hz", fmt(c.fs));
    echo_val(c, "nfft", fmt_sz(c.nfft));
    echo_val(c, "tone.freq_hz", fmt(c.tone.freq_hz));
    echo_val(c, "tone.amplitude", fmt(c.tone.amplitude));
    echo_val(c, "bin_aligned", c.bin_aligned ? "true" : "false");
    echo_val(c, "sr.a", fmt(c.params.a));
    echo_val(c, "sr.b", fmt(c.params.b));
    echo_val(c, "sr.step_h", fmt(c.integrator.step_h));
    echo_val(c, "sr.substeps_per_sample", std::to_string(c.integrator.substeps_per_sample));
    echo_val(c, "sr.added_noise_d", fmt(c.integrator.added_noise_d));
    echo_val(c, "sr.discard_transient", fmt_sz(c.integrator.discard_transient));
    return c;
}

std::vector<std::string> make_header(const std::string& kind, const CommonSettings& c) {
    std::vector<std::string> h;
    h.push_back(kVersion);
    h.push_back("kind = " + kind);
    for (const auto& [k, v] : c.echo)
        if (k != "kind")
            h.push_back(k + " = " + v);
    return h;
}

SweepSettings sweep_settings(const Config& cfg, const CommonSettings& c,
                             std::size_t default_trials) {
    SweepSettings s;
    s.tone = c.tone;
    s.sample_rate_hz = c.fs;
    s.nfft = c.nfft;
    s.samples_per_trial = cfg.get_size("samples_per_trial", 4096);
    s.trials = cfg.get_size("trials", default_trials);
    s.params = c.params;
    s.integrator = c.integrator;
    s.threads = c.threads;
    return s;
}

double quantile_gamma(std::vector<double> values, double target_pfa) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    const double pos = std::ceil((1.0 - target_pfa) * static_cast<double>(n));
    const std::size_t idx =
        std::min(n, std::max<std::size_t>(1, static_cast<std::size_t>(pos)));
    return values[idx - 1];
}

double frac_above(const std::vector<double>& values, double gamma) {
    std::size_t c = 0;
    for (double v : values)
        c += (v > gamma);
    return static_cast<double>(c) / static_cast<double>(values.size());
}

// Per-trial detector metrics on one shared observation. The plain branch
// reads the stream after the SR transient-discard prefix so both branches
// judge the same segment.
struct TrialMetrics {
    double plain = 0.0;
    double sr = 0.0;
};

TrialMetrics block_metrics_for_stream(const SampleStream& y, const CommonSettings& c,
                                      std::size_t window, const SeedPath& trial_seed) {
    TrialMetrics m;
    const std::size_t skip = c.integrator.discard_transient;
    BlockDetectorConfig plain_cfg{c.nfft, window, std::nullopt};
    SampleStream tail{std::vector<double>(y.samples.begin() + skip, y.samples.end()),
                      y.sample_rate_hz};
    m.plain = block_metric(tail, plain_cfg);

    IntegratorConfig integ = c.integrator;
    integ.seed = trial_seed.child(kRoleIntegrator);
    BlockDetectorConfig sr_cfg{c.nfft, window, PretreatConfig{c.params, integ}};
    m.sr = block_metric(y, sr_cfg);
    return m;
}

SampleStream observation(Hypothesis hyp, const CommonSettings& c, double variance,
                         std::size_t n, const SeedPath& trial_seed) {
    ToneSpec tone = c.tone;
    Rng phase_rng(trial_seed.child(kRolePhase));
    tone.phase_rad = 2.0 * M_PI * phase_rng.uniform01();
    const NoiseSpec noise{variance, trial_seed.child(kRoleChannel)};
    return synth_observation(hyp, tone, noise, n, c.fs);
}

// Noise variance for one experiment grid point. A zero-amplitude tone cannot
// anchor an SNR, so the H1-identical-to-H0 sanity case runs at unit variance.
double variance_for(const CommonSettings& c, double snr_db) {
    if (c.tone.amplitude <= 0.0)
        return 1.0;
    return noise_variance_for_snr_db(c.tone.amplitude, snr_db);
}

std::vector<std::string> detector_list(const Config& cfg) {
    const auto d = cfg.get_string_list("detectors", {"plain", "sr"});
    for (const auto& name : d)
        if (name != "plain" && name != "sr" && name != "dual")
            throw ConfigError("config: unknown detector '" + name +
                              "' (expected plain, sr or dual)");
    return d;
}

enum KindId : std::uint64_t {
    kPsd = 1,
    kGainSweep = 2,
    kTune = 3,
    kRoc = 4,
    kPdWindow = 5,
    kSeqDelay = 6,
};

}  // namespace

const char* version_string() {
    return kVersion;
}

std::string ResultTable::to_csv() const {
    std::ostringstream out;
    for (const auto& line : header)
        out << "# " << line << "\n";
    out << columns << "\n";
    for (const auto& row : rows)
        out << row << "\n";
    return out.str();
}

ResultTable run_psd_demo(const Config& cfg, const RunOptions& opts) {
    CommonSettings c = parse_common(cfg, opts);
    const double noise_d = cfg.get_double("noise_d", 0.43);
    const std::size_t trials = cfg.get_size("trials", 8);
    const std::size_t samples = cfg.get_size("samples_per_trial", 16384);
    if (noise_d < 0.0)
        throw ConfigError("config: noise_d must be nonnegative");
    if (samples <= c.integrator.discard_transient + c.nfft)
        throw ConfigError("config: samples_per_trial too short for transient + one window");
    echo_val(c, "noise_d", fmt(noise_d));
    echo_val(c, "trials", fmt_sz(trials));
    echo_val(c, "samples_per_trial", fmt_sz(samples));

    const SeedPath root = SeedPath::root(c.master_seed).child(kPsd);
    const std::size_t nbins = c.nfft / 2 + 1;
    std::vector<std::vector<double>> in_acc(trials), out_acc(trials);
    parallel_for(trials, c.threads, [&](std::size_t t) {
        const SeedPath trial = root.child(t);
        ToneSpec tone = c.tone;
        Rng phase_rng(trial.child(kRolePhase));
        tone.phase_rad = 2.0 * M_PI * phase_rng.uniform01();
        IntegratorConfig integ = c.integrator;
        integ.seed = trial.child(kRoleIntegrator);
        const NoiseSpec noise{2.0 * noise_d, trial.child(kRoleChannel)};
        const SampleStream drive =
            synth_observation(Hypothesis::H1, tone, noise, samples, c.fs);
        const SampleStream out = filter_stream(drive, c.params, integ);
        SampleStream drive_tail{
            std::vector<double>(drive.samples.begin() + integ.discard_transient,
                                drive.samples.end()),
            c.fs};
        in_acc[t] = welch_psd(drive_tail, c.nfft, 0.0).power;
        out_acc[t] = welch_psd(out, c.nfft, 0.0).power;
    });

    PsdEstimate in_psd, out_psd;
    in_psd.nfft = out_psd.nfft = c.nfft;
    in_psd.bin_width_hz = out_psd.bin_width_hz = c.fs / static_cast<double>(c.nfft);
    in_psd.segments = out_psd.segments = trials;
    in_psd.power.assign(nbins, 0.0);
    out_psd.power.assign(nbins, 0.0);
    for (std::size_t t = 0; t < trials; ++t)
        for (std::size_t i = 0; i < nbins; ++i) {
            in_psd.power[i] += in_acc[t][i] / static_cast<double>(trials);
            out_psd.power[i] += out_acc[t][i] / static_cast<double>(trials);
        }

    const double pk_in = peak_power_near(in_psd, c.tone.freq_hz, 2).power;
    const double pk_out = peak_power_near(out_psd, c.tone.freq_hz, 2).power;

    ResultTable table;
    table.header = make_header("psd", c);
    table.header.push_back("input_peak_at_f = " + fmt(pk_in));
    table.header.push_back("output_peak_at_f = " + fmt(pk_out));
    table.header.push_back("peak_power_ratio = " + fmt(pk_in > 0 ? pk_out / pk_in : 0.0));
    table.columns = "series,freq_hz,power";
    for (std::size_t i = 0; i < nbins; ++i)
        table.rows.push_back("input," + fmt(i * in_psd.bin_width_hz) + "," +
                             fmt(in_psd.power[i]));
    for (std::size_t i = 0; i < nbins; ++i)
        table.rows.push_back("output," + fmt(i * out_psd.bin_width_hz) + "," +
                             fmt(out_psd.power[i]));
    return table;
}

ResultTable run_gain_sweep(const Config& cfg, const RunOptions& opts) {
    CommonSettings c = parse_common(cfg, opts);
    const double d_lo = cfg.get_double("d_lo", 0.05);
    const double d_hi = cfg.get_double("d_hi", 1.5);
    const std::size_t d_points = cfg.get_size("d_points", 15);
    if (!(d_lo > 0.0 && d_lo < d_hi) || d_points < 2)
        throw ConfigError("config: need 0 < d_lo < d_hi and d_points >= 2");
    SweepSettings s = sweep_settings(cfg, c, 20);
    echo_val(c, "d_lo", fmt(d_lo));
    echo_val(c, "d_hi", fmt(d_hi));
    echo_val(c, "d_points", fmt_sz(d_points));
    echo_val(c, "trials", fmt_sz(s.trials));
    echo_val(c, "samples_per_trial", fmt_sz(s.samples_per_trial));

    std::vector<double> grid(d_points);
    for (std::size_t i = 0; i < d_points; ++i)
        grid[i] = d_lo + (d_hi - d_lo) * static_cast<double>(i) /
                             static_cast<double>(d_points - 1);
    const GainCurve curve =
        sweep_noise(s, grid, SeedPath::root(c.master_seed).child(kGainSweep));

    std::size_t best = 0;
    for (std::size_t i = 1; i < curve.points.size(); ++i)
        if (curve.points[i].gain_db > curve.points[best].gain_db)
            best = i;

    ResultTable table;
    table.header = make_header("gainsweep", c);
    table.header.push_back("d_opt = " + fmt(curve.points[best].noise_d));
    table.header.push_back("gain_at_opt_db = " + fmt(curve.points[best].gain_db));
    table.columns = "noise_d,input_snr_db,output_snr_db,gain_db";
    for (const auto& p : curve.points)
        table.rows.push_back(fmt(p.noise_d) + "," + fmt(p.input_snr_db) + "," +
                             fmt(p.output_snr_db) + "," + fmt(p.gain_db));
    return table;
}

ResultTable run_tune(const Config& cfg, const RunOptions& opts) {
    CommonSettings c = parse_common(cfg, opts);
    const double d_lo = cfg.get_double("d_lo", 0.05);
    const double d_hi = cfg.get_double("d_hi", 1.5);
    const std::size_t budget = cfg.get_size("budget", 24);
    SweepSettings s = sweep_settings(cfg, c, 20);
    echo_val(c, "d_lo", fmt(d_lo));
    echo_val(c, "d_hi", fmt(d_hi));
    echo_val(c, "budget", fmt_sz(budget));
    echo_val(c, "trials", fmt_sz(s.trials));
    echo_val(c, "samples_per_trial", fmt_sz(s.samples_per_trial));

    TuneResult result;
    if (cfg.has("surrogate_d_opt")) {
        // analytic objective used by tests to validate the search itself
        const double peak = cfg.get_double("surrogate_d_opt", 0.4);
        echo_val(c, "surrogate_d_opt", fmt(peak));
        result = optimize_noise_objective(
            [peak](double d) { return -(d - peak) * (d - peak); }, d_lo, d_hi, budget);
    } else {
        result = optimize_noise(s, d_lo, d_hi, budget,
                                SeedPath::root(c.master_seed).child(kTune));
    }

    ResultTable table;
    table.header = make_header("tune", c);
    table.header.push_back("d_opt = " + fmt(result.d_opt));
    table.header.push_back("gain_at_opt_db = " + fmt(result.gain_at_opt_db));
    table.columns = "noise_d,input_snr_db,output_snr_db,gain_db";
    for (const auto& p : result.curve.points)
        table.rows.push_back(fmt(p.noise_d) + "," + fmt(p.input_snr_db) + "," +
                             fmt(p.output_snr_db) + "," + fmt(p.gain_db));
    return table;
}

ResultTable run_roc(const Config& cfg, const RunOptions& opts) {
    CommonSettings c = parse_common(cfg, opts);
    const std::vector<double> snrs = cfg.get_list("snr_db", {-25.0, -20.0, -15.0, -10.0});
    const std::size_t trials = cfg.get_size("trials", 1000);
    const std::size_t window = cfg.get_size("sensing_window_samples", 512);
    const std::size_t pfa_points = cfg.get_size("pfa_points", 19);
    const auto detectors = detector_list(cfg);
    if (trials < 10)
        throw ConfigError("config: roc needs at least 10 trials");
    if (window % c.nfft != 0)
        throw ConfigError("config: sensing_window_samples must be a multiple of nfft");
    if (pfa_points < 1 || pfa_points > trials)
        throw ConfigError("config: pfa_points must be in [1, trials]");
    echo_val(c, "trials", fmt_sz(trials));
    echo_val(c, "sensing_window_samples", fmt_sz(window));
    echo_val(c, "pfa_points", fmt_sz(pfa_points));
    {
        std::string s;
        for (std::size_t i = 0; i < snrs.size(); ++i)
            s += (i ? "," : "") + fmt(snrs[i]);
        echo_val(c, "snr_db", s);
        std::string d;
        for (std::size_t i = 0; i < detectors.size(); ++i)
            d += (i ? "," : "") + detectors[i];
        echo_val(c, "detectors", d);
    }

    const SeedPath root = SeedPath::root(c.master_seed).child(kRoc);
    const std::size_t len = window + c.integrator.discard_transient;

    ResultTable table;
    table.header = make_header("roc", c);
    table.columns = "detector,snr_db,pfa,pd,trials,se_pd";

    for (std::size_t g = 0; g < snrs.size(); ++g) {
        const double variance = variance_for(c, snrs[g]);
        std::vector<TrialMetrics> h0(trials), h1(trials);
        parallel_for(2 * trials, c.threads, [&](std::size_t i) {
            const std::size_t t = i / 2;
            const Hypothesis hyp = (i % 2) ? Hypothesis::H1 : Hypothesis::H0;
            const SeedPath trial_seed = root.child(g).child(i % 2).child(t);
            const SampleStream y = observation(hyp, c, variance, len, trial_seed);
            const TrialMetrics m = block_metrics_for_stream(y, c, window, trial_seed);
            ((i % 2) ? h1 : h0)[t] = m;
        });

        auto column = [&](const std::vector<TrialMetrics>& v, bool sr) {
            std::vector<double> out(v.size());
            for (std::size_t t = 0; t < v.size(); ++t)
                out[t] = sr ? v[t].sr : v[t].plain;
            return out;
        };
        const std::vector<double> h0_plain = column(h0, false), h1_plain = column(h1, false);
        const std::vector<double> h0_sr = column(h0, true), h1_sr = column(h1, true);

        for (const auto& det : detectors) {
            for (std::size_t k = 1; k <= pfa_points; ++k) {
                const double target = static_cast<double>(k) /
                                      static_cast<double>(pfa_points + 1);
                double pfa = 0.0, pd = 0.0;
                if (det == "dual") {
                    const double gp = quantile_gamma(h0_plain, target / 2.0);
                    const double gs = quantile_gamma(h0_sr, target / 2.0);
                    std::size_t fa = 0, de = 0;
                    for (std::size_t t = 0; t < trials; ++t) {
                        fa += (h0[t].plain > gp || h0[t].sr > gs);
                        de += (h1[t].plain > gp || h1[t].sr > gs);
                    }
                    pfa = static_cast<double>(fa) / trials;
                    pd = static_cast<double>(de) / trials;
                } else {
                    const bool sr = (det == "sr");
                    const auto& h0v = sr ? h0_sr : h0_plain;
                    const auto& h1v = sr ? h1_sr : h1_plain;
                    const double gamma = quantile_gamma(h0v, target);
                    pfa = frac_above(h0v, gamma);
                    pd = frac_above(h1v, gamma);
                }
                const double se = std::sqrt(pd * (1.0 - pd) / static_cast<double>(trials));
                table.rows.push_back(det + "," + fmt(snrs[g]) + "," + fmt(pfa) + "," +
                                     fmt(pd) + "," + fmt_sz(trials) + "," + fmt(se));
            }
        }
    }
    return table;
}

ResultTable run_pd_vs_window(const Config& cfg, const RunOptions& opts) {
    CommonSettings c = parse_common(cfg, opts);
    const std::vector<double> windows_d =
        cfg.get_list("sensing_windows", {256, 512, 1024, 2048, 4096});
    const double snr_db = cfg.get_double("snr_db", -20.0);
    const double target_pfa = cfg.get_double("target_pfa", 0.1);
    const std::size_t trials = cfg.get_size("trials", 1000);
    const auto detectors = detector_list(cfg);
    if (!(target_pfa > 0.0 && target_pfa < 1.0))
        throw ConfigError("config: target_pfa must be in (0,1)");

    std::vector<std::size_t> windows;
    for (double w : windows_d) {
        const auto wi = static_cast<std::size_t>(w);
        if (wi == 0 || wi % c.nfft != 0)
            throw ConfigError("config: sensing_windows entries must be multiples of nfft");
        if (!windows.empty() && wi <= windows.back())
            throw ConfigError("config: sensing_windows must be increasing");
        windows.push_back(wi);
    }
    echo_val(c, "snr_db", fmt(snr_db));
    echo_val(c, "target_pfa", fmt(target_pfa));
    echo_val(c, "trials", fmt_sz(trials));
    {
        std::string s;
        for (std::size_t i = 0; i < windows.size(); ++i)
            s += (i ? "," : "") + fmt_sz(windows[i]);
        echo_val(c, "sensing_windows", s);
        std::string d;
        for (std::size_t i = 0; i < detectors.size(); ++i)
            d += (i ? "," : "") + detectors[i];
        echo_val(c, "detectors", d);
    }

    const double variance = variance_for(c, snr_db);
    const SeedPath root = SeedPath::root(c.master_seed).child(kPdWindow);

    ResultTable table;
    table.header = make_header("pdwindow", c);
    table.columns = "detector,window_samples,pd,pfa_achieved,trials";

    for (std::size_t g = 0; g < windows.size(); ++g) {
        const std::size_t window = windows[g];
        const std::size_t len = window + c.integrator.discard_transient;
        // phase 0: calibration H0, phase 1: H1, phase 2: fresh H0 validation
        std::vector<TrialMetrics> cal(trials), h1(trials), val(trials);
        parallel_for(3 * trials, c.threads, [&](std::size_t i) {
            const std::size_t phase = i / trials;
            const std::size_t t = i % trials;
            const SeedPath trial_seed = root.child(g).child(phase).child(t);
            const Hypothesis hyp = (phase == 1) ? Hypothesis::H1 : Hypothesis::H0;
            const SampleStream y = observation(hyp, c, variance, len, trial_seed);
            const TrialMetrics m = block_metrics_for_stream(y, c, window, trial_seed);
            (phase == 0 ? cal : phase == 1 ? h1 : val)[t] = m;
        });

        auto column = [&](const std::vector<TrialMetrics>& v, bool sr) {
            std::vector<double> out(v.size());
            for (std::size_t t = 0; t < v.size(); ++t)
                out[t] = sr ? v[t].sr : v[t].plain;
            return out;
        };

        for (const auto& det : detectors) {
            double pd = 0.0, pfa_achieved = 0.0;
            if (det == "dual") {
                const double gp = quantile_gamma(column(cal, false), target_pfa / 2.0);
                const double gs = quantile_gamma(column(cal, true), target_pfa / 2.0);
                std::size_t de = 0, fa = 0;
                for (std::size_t t = 0; t < trials; ++t) {
                    de += (h1[t].plain > gp || h1[t].sr > gs);
                    fa += (val[t].plain > gp || val[t].sr > gs);
                }
                pd = static_cast<double>(de) / trials;
                pfa_achieved = static_cast<double>(fa) / trials;
            } else {
                const bool sr = (det == "sr");
                const double gamma = quantile_gamma(column(cal, sr), target_pfa);
                pd = frac_above(column(h1, sr), gamma);
                pfa_achieved = frac_above(column(val, sr), gamma);
            }
            table.rows.push_back(det + "," + fmt_sz(window) + "," + fmt(pd) + "," +
                                 fmt(pfa_achieved) + "," + fmt_sz(trials));
        }
    }
    return table;
}

ResultTable run_seq_delay(const Config& cfg, const RunOptions& opts) {
    CommonSettings c = parse_common(cfg, opts);
    const double snr_db = cfg.get_double("snr_db", -20.0);
    const std::size_t horizon = cfg.get_size("horizon_windows", 200);
    const std::size_t trials = cfg.get_size("trials", 500);
    const std::size_t e0_trials = cfg.get_size("e0_trials", 600);
    const double e0_margin = cfg.get_double("e0_margin", 0.5);
    const std::vector<double> pfa_grid = cfg.get_list("pfa_grid", {0.05, 0.1, 0.2});
    auto detectors = detector_list(cfg);
    for (const auto& det : detectors)
        if (det == "dual")
            throw ConfigError("config: the sequential experiment supports plain and sr only");
    if (horizon < 1 || trials < 10)
        throw ConfigError("config: seqdelay needs horizon_windows >= 1 and trials >= 10");
    echo_val(c, "snr_db", fmt(snr_db));
    echo_val(c, "horizon_windows", fmt_sz(horizon));
    echo_val(c, "trials", fmt_sz(trials));
    echo_val(c, "e0_trials", fmt_sz(e0_trials));
    echo_val(c, "e0_margin", fmt(e0_margin));
    {
        std::string s;
        for (std::size_t i = 0; i < pfa_grid.size(); ++i)
            s += (i ? "," : "") + fmt(pfa_grid[i]);
        echo_val(c, "pfa_grid", s);
        std::string d;
        for (std::size_t i = 0; i < detectors.size(); ++i)
            d += (i ? "," : "") + detectors[i];
        echo_val(c, "detectors", d);
    }

    const double variance = variance_for(c, snr_db);
    const SeedPath root = SeedPath::root(c.master_seed).child(kSeqDelay);
    const std::size_t len = horizon * c.nfft + c.integrator.discard_transient;

    // reference levels, shared H0 streams across detectors
    std::map<std::string, double> e0;
    for (const auto& det : detectors) {
        BlockDetectorConfig dcfg{c.nfft, c.nfft, std::nullopt};
        if (det == "sr") {
            IntegratorConfig integ = c.integrator;
            dcfg.pretreat = PretreatConfig{c.params, integ};
        }
        // estimate_e0 derives per-trial seeds from this path; same path for
        // both detectors means both see the same noise realizations
        NoiseSpec noise{variance, SeedPath::root(c.master_seed)};
        e0[det] = estimate_e0(dcfg, noise, c.fs, e0_trials, e0_margin,
                              root.child(100), c.threads);
    }

    // trajectories of m(n) per run; index 0 = H0, 1 = H1
    std::map<std::string, std::vector<std::vector<double>>> traj[2];
    for (const auto& det : detectors) {
        traj[0][det].resize(trials);
        traj[1][det].resize(trials);
    }
    parallel_for(2 * trials, c.threads, [&](std::size_t i) {
        const std::size_t hyp = i % 2;
        const std::size_t t = i / 2;
        const SeedPath trial_seed = root.child(hyp).child(t);
        const SampleStream y = observation(hyp ? Hypothesis::H1 : Hypothesis::H0, c,
                                           variance, len, trial_seed);
        for (const auto& det : detectors) {
            BlockDetectorConfig dcfg{c.nfft, c.nfft, std::nullopt};
            SampleStream input{{}, c.fs};
            if (det == "sr") {
                IntegratorConfig integ = c.integrator;
                integ.seed = trial_seed.child(kRoleIntegrator);
                dcfg.pretreat = PretreatConfig{c.params, integ};
                input = y;
            } else {
                input.samples.assign(
                    y.samples.begin() + c.integrator.discard_transient, y.samples.end());
            }
            const SeqRunResult r =
                seq_run(input, dcfg, e0.at(det), std::numeric_limits<double>::infinity());
            traj[hyp].at(det)[t] = r.trajectory;
        }
    });

    ResultTable table;
    table.header = make_header("seqdelay", c);
    for (const auto& det : detectors)
        table.header.push_back("e0." + det + " = " + fmt(e0.at(det)));
    table.columns = "detector,gamma,pfa,mean_delay_windows,miss_rate,trials";

    for (const auto& det : detectors) {
        std::vector<double> maxm(trials);
        for (std::size_t t = 0; t < trials; ++t) {
            double mx = 0.0;
            for (double v : traj[0].at(det)[t])
                mx = std::max(mx, v);
            maxm[t] = mx;
        }
        for (double target : pfa_grid) {
            const double gamma = quantile_gamma(maxm, target);
            const double pfa = frac_above(maxm, gamma);
            double sum_delay = 0.0, sum_sq = 0.0;
            std::size_t miss = 0;
            for (std::size_t t = 0; t < trials; ++t) {
                std::size_t delay = horizon + 1;  // miss sentinel
                const auto& m = traj[1].at(det)[t];
                for (std::size_t n = 0; n < m.size(); ++n)
                    if (m[n] > gamma) {
                        delay = n + 1;
                        break;
                    }
                if (delay > horizon)
                    ++miss;
                sum_delay += static_cast<double>(delay);
                sum_sq += static_cast<double>(delay) * static_cast<double>(delay);
            }
            const double mean_delay = sum_delay / static_cast<double>(trials);
            const double var = std::max(sum_sq / static_cast<double>(trials) -
                                            mean_delay * mean_delay, 0.0);
            table.header.push_back("se_delay." + det + "." + fmt(target) + " = " +
                                   fmt(std::sqrt(var / static_cast<double>(trials))));
            table.rows.push_back(det + "," + fmt(gamma) + "," + fmt(pfa) + "," +
                                 fmt(mean_delay) + "," +
                                 fmt(static_cast<double>(miss) / trials) + "," +
                                 fmt_sz(trials));
        }
    }
    return table;
}

ResultTable run_experiment(const Config& cfg, const RunOptions& opts) {
    const std::string kind = cfg.get_string("kind", "");
    if (kind == "psd")
        return run_psd_demo(cfg, opts);
    if (kind == "gainsweep")
        return run_gain_sweep(cfg, opts);
    if (kind == "tune")
        return run_tune(cfg, opts);
    if (kind == "roc")
        return run_roc(cfg, opts);
    if (kind == "pdwindow")
        return run_pd_vs_window(cfg, opts);
    if (kind == "seqdelay")
        return run_seq_delay(cfg, opts);
    if (kind.empty())
        throw ConfigError("config: missing 'kind'");
    throw ConfigError("config: unknown kind '" + kind +
                      "' (expected psd, gainsweep, tune, roc, pdwindow or seqdelay)");
}

}  // namespace srsense
