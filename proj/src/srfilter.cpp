#include "srfilter.hpp"

#include <cmath>
#include <stdexcept>

namespace srsense {

namespace {
constexpr double kDivergenceBound = 1e6;

void validate(const SRParams& p, const IntegratorConfig& cfg) {
    if (p.a <= 0.0 || p.b <= 0.0)
        throw std::invalid_argument("srfilter: a and b must be positive for bistability");
    if (cfg.step_h <= 0.0)
        throw std::invalid_argument("srfilter: step size must be positive");
    if (cfg.substeps_per_sample < 1)
        throw std::invalid_argument("srfilter: need at least one substep per sample");
    if (cfg.added_noise_d < 0.0)
        throw std::invalid_argument("srfilter: injected noise intensity must be nonnegative");
}
}  // namespace

double potential(double x, const SRParams& p) {
    return -0.5 * p.a * x * x + 0.25 * p.b * x * x * x * x;
}

StablePoints stable_points(const SRParams& p) {
    if (p.a <= 0.0 || p.b <= 0.0)
        throw std::invalid_argument("stable_points: a and b must be positive");
    const double xm = std::sqrt(p.a / p.b);
    return StablePoints{-xm, xm, 0.0};
}

double barrier_height(const SRParams& p) {
    return p.a * p.a / (4.0 * p.b);
}

double kramers_rate(const SRParams& p, double noise_d) {
    if (noise_d <= 0.0)
        throw std::invalid_argument("kramers_rate: noise intensity must be positive");
    return p.a / (std::sqrt(2.0) * M_PI) * std::exp(-barrier_height(p) / noise_d);
}

SRState step(const SRState& state, double input_u, const SRParams& p,
             const IntegratorConfig& cfg, Rng& rng) {
    const double h = cfg.step_h;
    const double drift = p.a * state.x - p.b * state.x * state.x * state.x + input_u;
    double x = state.x + h * drift;
    if (cfg.added_noise_d > 0.0)
        x += std::sqrt(2.0 * cfg.added_noise_d * h) * rng.gaussian();
    if (!(std::abs(x) < kDivergenceBound))
        throw std::runtime_error("srfilter: trajectory diverged (step too large?)");
    return SRState{x, state.t + h};
}

SampleStream filter_stream(const SampleStream& input, const SRParams& p,
                           const IntegratorConfig& cfg) {
    validate(p, cfg);
    if (input.samples.empty())
        throw std::invalid_argument("filter_stream: input stream is empty");
    if (cfg.discard_transient >= input.size())
        throw std::invalid_argument("filter_stream: transient discard consumes the whole stream");

    Rng rng(cfg.seed);
    SRState state;
    state.x = cfg.initial_x.value_or(stable_points(p).x_plus);
    state.t = 0.0;

    SampleStream out{std::vector<double>(), input.sample_rate_hz};
    out.samples.reserve(input.size() - cfg.discard_transient);
    for (std::size_t k = 0; k < input.size(); ++k) {
        const double u = input.samples[k];
        for (int s = 0; s < cfg.substeps_per_sample; ++s)
            state = step(state, u, p, cfg, rng);
        if (k >= cfg.discard_transient)
            out.samples.push_back(state.x);
    }
    return out;
}

double noise_intensity_from_variance(double variance, const IntegratorConfig& cfg) {
    return variance * cfg.sample_spacing() / 2.0;
}

double variance_from_noise_intensity(double noise_d, const IntegratorConfig& cfg) {
    return 2.0 * noise_d / cfg.sample_spacing();
}

}  // namespace srsense
