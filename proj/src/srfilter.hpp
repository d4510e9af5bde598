#pragma once

#include <cstddef>
#include <optional>

#include "signal.hpp"

namespace srsense {

// Double-well shape: V(x) = -(a/2) x^2 + (b/4) x^4.
struct SRParams {
    double a = 1.0;
    double b = 1.0;
};

// Euler-Maruyama discretization controls for the bistable filter
//
//   dx/dt = a x - b x^3 + u(t) + eta(t),   <eta(t) eta(s)> = 2 D delta(t-s).
//
// The filter runs on its own clock: consecutive input samples are
// step_h * substeps_per_sample time units apart (zero-order hold across the
// substeps), independent of the stream's nominal sample rate. That spacing
// sets where the drive lands relative to the well-hopping band: with the
// defaults, a tone at one tenth of the sample rate has period 5 time units,
// inside the hopping band of the unit double well, which is what makes the
// resonance usable for sampled inputs far above the well relaxation rate.
struct IntegratorConfig {
    double step_h = 0.05;
    int substeps_per_sample = 10;
    double added_noise_d = 0.0;              // internally injected eta intensity
    std::optional<double> initial_x;         // default: +sqrt(a/b)
    std::size_t discard_transient = 256;     // output samples dropped up front
    SeedPath seed;

    double sample_spacing() const { return step_h * substeps_per_sample; }
};

struct SRState {
    double x = 0.0;
    double t = 0.0;
};

double potential(double x, const SRParams& p);

struct StablePoints {
    double x_minus = 0.0;
    double x_plus = 0.0;
    double x_barrier = 0.0;
};

// (-sqrt(a/b), +sqrt(a/b), 0).
StablePoints stable_points(const SRParams& p);

// Barrier height a^2 / (4 b).
double barrier_height(const SRParams& p);

// Noise-driven well-switching rate (a / (sqrt(2) pi)) exp(-barrier / D).
double kramers_rate(const SRParams& p, double noise_d);

// One Euler-Maruyama substep with the external input held constant. Throws
// on divergence (|x| > 1e6, step too large).
SRState step(const SRState& state, double input_u, const SRParams& p,
             const IntegratorConfig& cfg, Rng& rng);

// Runs the bistable system over the whole stream, emitting x once per input
// sample and dropping the first discard_transient outputs. Output rate equals
// the input rate.
SampleStream filter_stream(const SampleStream& input, const SRParams& p,
                           const IntegratorConfig& cfg);

// Mapping between a per-sample noise variance on the filter input and the
// equivalent eta intensity seen by the dynamics. A zero-order-held white
// sequence of variance sigma^2 at spacing dt acts like eta of intensity
// sigma^2 * dt / 2.
double noise_intensity_from_variance(double variance, const IntegratorConfig& cfg);
double variance_from_noise_intensity(double noise_d, const IntegratorConfig& cfg);

}  // namespace srsense
