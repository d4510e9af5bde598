#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "spectral.hpp"
#include "srfilter.hpp"

namespace srsense {

struct GainPoint {
    double noise_d = 0.0;
    double input_snr_db = 0.0;
    double output_snr_db = 0.0;
    double gain_db = 0.0;
};

struct GainCurve {
    std::vector<GainPoint> points;  // sorted by noise_d
    std::size_t trials_per_point = 0;
};

struct TuneResult {
    double d_opt = 0.0;
    double gain_at_opt_db = 0.0;
    GainCurve curve;  // every evaluation, sorted by noise_d
};

// Measurement recipe for one gain evaluation. A drive of `samples_per_trial`
// samples is synthesized as tone + white noise of per-sample variance 2*D
// (noise amplitude sqrt(2D) -- the discrete "noise of power D" convention),
// pushed through the bistable filter, and the narrowband SNR at the tone
// frequency is measured on both sides with snr_at_frequency. Trials use
// common random numbers across D so the sweep is smooth in D.
struct SweepSettings {
    ToneSpec tone{10.0, 0.3, 0.0};
    double sample_rate_hz = 1000.0;
    std::size_t samples_per_trial = 4096;
    std::size_t nfft = 256;
    std::size_t trials = 20;
    SRParams params;
    IntegratorConfig integrator;
    std::size_t signal_halfwidth_bins = 1;
    std::size_t guard_bins = 2;
    std::size_t threads = 0;
};

// Mean linear narrowband ratios over the trials at one noise level.
// Used by sweep_noise and optimize_noise; exposed for the bench layer.
GainPoint evaluate_gain(double noise_d, const SweepSettings& s, const SeedPath& seed);

// One GainPoint per grid value. Grid must be nonempty and strictly increasing.
GainCurve sweep_noise(const SweepSettings& s, const std::vector<double>& d_grid,
                      const SeedPath& seed);

// Coarse grid over [d_lo, d_hi] followed by golden-section refinement around
// the best grid point, all on the common-random-number Monte Carlo objective.
// `budget` counts gain evaluations; the best point ever evaluated wins.
TuneResult optimize_noise(const SweepSettings& s, double d_lo, double d_hi,
                          std::size_t budget, const SeedPath& seed);

// Same search driven by an arbitrary objective (testing hook; also backs the
// surrogate mode of the bench tune experiment).
TuneResult optimize_noise_objective(const std::function<double(double)>& gain_db_of_d,
                                    double d_lo, double d_hi, std::size_t budget);

// `noise_d,input_snr_db,output_snr_db,gain_db` rows.
std::string to_csv(const GainCurve& curve);

}  // namespace srsense
