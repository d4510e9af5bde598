#include "tuning.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"

namespace srsense {

namespace {

double to_db(double linear) {
    return 10.0 * std::log10(std::max(linear, 1e-300));
}

constexpr std::size_t kCoarseGridPoints = 8;

// Coarse grid + golden-section refinement over a cached objective. Returns
// every evaluated point; the best one ever seen wins, so enlarging the
// budget can only improve the result.
TuneResult run_search(const std::function<GainPoint(double)>& eval, double d_lo,
                      double d_hi, std::size_t budget) {
    if (!(d_lo > 0.0 && d_lo < d_hi))
        throw std::invalid_argument("optimize_noise: need 0 < d_lo < d_hi");
    if (budget < 8)
        throw std::invalid_argument("optimize_noise: budget must be at least 8");

    std::map<double, GainPoint> trace;
    std::size_t evals = 0;
    auto at = [&](double d) -> const GainPoint& {
        auto it = trace.find(d);
        if (it == trace.end()) {
            it = trace.emplace(d, eval(d)).first;
            ++evals;
        }
        return it->second;
    };

    const std::size_t grid_n = std::min(budget, kCoarseGridPoints);
    std::vector<double> grid(grid_n);
    for (std::size_t i = 0; i < grid_n; ++i)
        grid[i] = d_lo + (d_hi - d_lo) * static_cast<double>(i) /
                             static_cast<double>(grid_n - 1);

    std::size_t best_i = 0;
    for (std::size_t i = 0; i < grid_n; ++i)
        if (at(grid[i]).gain_db > at(grid[best_i]).gain_db)
            best_i = i;

    double lo = grid[best_i > 0 ? best_i - 1 : 0];
    double hi = grid[std::min(best_i + 1, grid_n - 1)];
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    while (evals + 2 <= budget && hi - lo > 1e-6) {
        const double f1 = at(x1).gain_db;
        const double f2 = at(x2).gain_db;
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            x1 = hi - invphi * (hi - lo);
        } else {
            lo = x1;
            x1 = x2;
            x2 = lo + invphi * (hi - lo);
        }
    }

    TuneResult result;
    double best_gain = -1e300;
    for (const auto& [d, p] : trace) {
        result.curve.points.push_back(p);
        if (p.gain_db > best_gain) {
            best_gain = p.gain_db;
            result.d_opt = d;
        }
    }
    result.gain_at_opt_db = best_gain;
    return result;
}

}  // namespace

GainPoint evaluate_gain(double noise_d, const SweepSettings& s, const SeedPath& seed) {
    if (noise_d <= 0.0)
        throw std::invalid_argument("evaluate_gain: noise intensity must be positive");
    if (s.trials < 1)
        throw std::invalid_argument("evaluate_gain: need at least one trial");
    if (s.samples_per_trial <= s.integrator.discard_transient + s.nfft)
        throw std::invalid_argument(
            "evaluate_gain: trial too short for transient + one FFT window");

    std::vector<double> in_lin(s.trials), out_lin(s.trials);
    parallel_for(s.trials, s.threads, [&](std::size_t t) {
        const SeedPath trial = seed.child(t);
        Rng phase_rng(trial.child(0));
        ToneSpec tone = s.tone;
        tone.phase_rad = 2.0 * M_PI * phase_rng.uniform01();
        IntegratorConfig cfg = s.integrator;
        cfg.seed = trial.child(1);
        const NoiseSpec noise{2.0 * noise_d, trial.child(2)};
        const SampleStream drive = synth_observation(Hypothesis::H1, tone, noise,
                                                     s.samples_per_trial, s.sample_rate_hz);
        const SampleStream out = filter_stream(drive, s.params, cfg);
        // measure the drive over the same post-transient span as the output
        SampleStream drive_tail{
            std::vector<double>(drive.samples.begin() + cfg.discard_transient,
                                drive.samples.end()),
            s.sample_rate_hz};
        const PsdEstimate pin = welch_psd(drive_tail, s.nfft, 0.0);
        const PsdEstimate pout = welch_psd(out, s.nfft, 0.0);
        in_lin[t] = narrowband_ratio(pin, tone.freq_hz, s.signal_halfwidth_bins, s.guard_bins);
        out_lin[t] = narrowband_ratio(pout, tone.freq_hz, s.signal_halfwidth_bins, s.guard_bins);
    });

    double in_mean = 0.0, out_mean = 0.0;
    for (std::size_t t = 0; t < s.trials; ++t) {
        in_mean += in_lin[t];
        out_mean += out_lin[t];
    }
    in_mean /= static_cast<double>(s.trials);
    out_mean /= static_cast<double>(s.trials);

    GainPoint p;
    p.noise_d = noise_d;
    p.input_snr_db = to_db(in_mean);
    p.output_snr_db = to_db(out_mean);
    p.gain_db = p.output_snr_db - p.input_snr_db;
    return p;
}

GainCurve sweep_noise(const SweepSettings& s, const std::vector<double>& d_grid,
                      const SeedPath& seed) {
    if (d_grid.empty())
        throw std::invalid_argument("sweep_noise: empty noise grid");
    for (std::size_t i = 1; i < d_grid.size(); ++i)
        if (d_grid[i] <= d_grid[i - 1])
            throw std::invalid_argument("sweep_noise: grid must be strictly increasing");

    GainCurve curve;
    curve.trials_per_point = s.trials;
    curve.points.resize(d_grid.size());
    // common random numbers: the same seed feeds every grid point
    for (std::size_t i = 0; i < d_grid.size(); ++i)
        curve.points[i] = evaluate_gain(d_grid[i], s, seed);
    return curve;
}

TuneResult optimize_noise(const SweepSettings& s, double d_lo, double d_hi,
                          std::size_t budget, const SeedPath& seed) {
    TuneResult result = run_search(
        [&](double d) { return evaluate_gain(d, s, seed); }, d_lo, d_hi, budget);
    result.curve.trials_per_point = s.trials;
    return result;
}

TuneResult optimize_noise_objective(const std::function<double(double)>& gain_db_of_d,
                                    double d_lo, double d_hi, std::size_t budget) {
    return run_search(
        [&](double d) {
            GainPoint p;
            p.noise_d = d;
            p.gain_db = gain_db_of_d(d);
            p.output_snr_db = p.gain_db;
            return p;
        },
        d_lo, d_hi, budget);
}

std::string to_csv(const GainCurve& curve) {
    std::ostringstream out;
    out << "noise_d,input_snr_db,output_snr_db,gain_db\n";
    char buf[120];
    for (const auto& p : curve.points) {
        std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g,%.10g\n", p.noise_d,
                      p.input_snr_db, p.output_snr_db, p.gain_db);
        out << buf;
    }
    return out.str();
}

}  // namespace srsense
