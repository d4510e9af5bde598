#include "srsense.h"

#include <cmath>
#include <cstring>
#include <string>

#include "bench.hpp"
#include "config.hpp"
#include "detect.hpp"
#include "srfilter.hpp"

namespace {

thread_local std::string g_last_error;

srs_status to_status(const std::exception& e) {
    g_last_error = e.what();
    if (dynamic_cast<const srsense::ConfigError*>(&e))
        return SRS_ERR_CONFIG;
    if (dynamic_cast<const std::invalid_argument*>(&e))
        return SRS_ERR_INVALID_ARGUMENT;
    return SRS_ERR_RUNTIME;
}

template <typename Fn>
srs_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return SRS_OK;
    } catch (const std::exception& e) {
        return to_status(e);
    } catch (...) {
        g_last_error = "unknown error";
        return SRS_ERR_RUNTIME;
    }
}

srs_status invalid(const char* msg) {
    g_last_error = msg;
    return SRS_ERR_INVALID_ARGUMENT;
}

}  // namespace

struct srs_config {
    srsense::Config impl;
    mutable std::string get_buffer;
};

struct srs_result {
    std::string csv;
    size_t rows = 0;
};

extern "C" {

const char* srs_version(void) {
    return srsense::version_string();
}

const char* srs_status_name(srs_status status) {
    switch (status) {
        case SRS_OK: return "ok";
        case SRS_ERR_INVALID_ARGUMENT: return "invalid argument";
        case SRS_ERR_CONFIG: return "config error";
        case SRS_ERR_RUNTIME: return "runtime error";
    }
    return "unknown";
}

const char* srs_last_error(void) {
    return g_last_error.c_str();
}

double srs_potential(double x, double a, double b) {
    return srsense::potential(x, srsense::SRParams{a, b});
}

srs_status srs_stable_points(double a, double b, double* x_minus, double* x_plus,
                             double* x_barrier) {
    if (!x_minus || !x_plus || !x_barrier)
        return invalid("srs_stable_points: null output pointer");
    return guarded([&] {
        const auto pts = srsense::stable_points(srsense::SRParams{a, b});
        *x_minus = pts.x_minus;
        *x_plus = pts.x_plus;
        *x_barrier = pts.x_barrier;
    });
}

srs_status srs_barrier_height(double a, double b, double* out) {
    if (!out)
        return invalid("srs_barrier_height: null output pointer");
    return guarded([&] {
        if (a <= 0.0 || b <= 0.0)
            throw std::invalid_argument("srs_barrier_height: a and b must be positive");
        *out = srsense::barrier_height(srsense::SRParams{a, b});
    });
}

srs_status srs_kramers_rate(double a, double b, double noise_intensity, double* out) {
    if (!out)
        return invalid("srs_kramers_rate: null output pointer");
    return guarded([&] {
        if (a <= 0.0 || b <= 0.0)
            throw std::invalid_argument("srs_kramers_rate: a and b must be positive");
        *out = srsense::kramers_rate(srsense::SRParams{a, b}, noise_intensity);
    });
}

srs_status srs_input_snr_db(double amplitude, double noise_variance, double* out) {
    if (!out)
        return invalid("srs_input_snr_db: null output pointer");
    return guarded([&] { *out = srsense::input_snr_db(amplitude, noise_variance); });
}

srs_status srs_sr_filter(const double* input, size_t n, double a, double b,
                         double step_h, int substeps_per_sample, double added_noise_d,
                         double initial_x, size_t discard_transient, uint64_t seed,
                         double* output) {
    if (!input || !output)
        return invalid("srs_sr_filter: null buffer");
    return guarded([&] {
        srsense::SampleStream stream;
        stream.sample_rate_hz = 1.0;  // the filter runs on its own clock
        stream.samples.assign(input, input + n);
        srsense::IntegratorConfig cfg;
        cfg.step_h = step_h;
        cfg.substeps_per_sample = substeps_per_sample;
        cfg.added_noise_d = added_noise_d;
        if (!std::isnan(initial_x))
            cfg.initial_x = initial_x;
        cfg.discard_transient = discard_transient;
        cfg.seed = srsense::SeedPath::root(seed);
        const srsense::SampleStream out =
            srsense::filter_stream(stream, srsense::SRParams{a, b}, cfg);
        std::memcpy(output, out.samples.data(), out.samples.size() * sizeof(double));
    });
}

srs_status srs_periodogram(const double* block, size_t nfft, double sample_rate_hz,
                           double* power) {
    if (!block || !power)
        return invalid("srs_periodogram: null buffer");
    return guarded([&] {
        const srsense::Periodogram p = srsense::periodogram(
            std::span<const double>(block, nfft), nfft, sample_rate_hz);
        std::memcpy(power, p.power.data(), p.power.size() * sizeof(double));
    });
}

srs_status srs_config_create(srs_config** out) {
    if (!out)
        return invalid("srs_config_create: null output pointer");
    return guarded([&] { *out = new srs_config(); });
}

srs_status srs_config_load(const char* path, srs_config** out) {
    if (!path || !out)
        return invalid("srs_config_load: null argument");
    return guarded([&] {
        auto cfg = new srs_config();
        try {
            cfg->impl = srsense::Config::parse_file(path);
        } catch (...) {
            delete cfg;
            throw;
        }
        *out = cfg;
    });
}

srs_status srs_config_parse(const char* text, srs_config** out) {
    if (!text || !out)
        return invalid("srs_config_parse: null argument");
    return guarded([&] {
        auto cfg = new srs_config();
        try {
            cfg->impl = srsense::Config::parse_text(text);
        } catch (...) {
            delete cfg;
            throw;
        }
        *out = cfg;
    });
}

srs_status srs_config_set(srs_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value)
        return invalid("srs_config_set: null argument");
    return guarded([&] { cfg->impl.set(key, value); });
}

const char* srs_config_get(const srs_config* cfg, const char* key) {
    if (!cfg || !key)
        return nullptr;
    const auto v = cfg->impl.get(key);
    if (!v)
        return nullptr;
    cfg->get_buffer = *v;
    return cfg->get_buffer.c_str();
}

void srs_config_destroy(srs_config* cfg) {
    delete cfg;
}

srs_status srs_run(const srs_config* cfg, int threads, srs_result** out) {
    if (!cfg || !out)
        return invalid("srs_run: null argument");
    if (threads < 0)
        return invalid("srs_run: negative thread count");
    return guarded([&] {
        srsense::RunOptions opts;
        opts.threads = static_cast<size_t>(threads);
        const srsense::ResultTable table = srsense::run_experiment(cfg->impl, opts);
        auto res = new srs_result();
        res->csv = table.to_csv();
        res->rows = table.rows.size();
        *out = res;
    });
}

const char* srs_result_csv(const srs_result* result) {
    return result ? result->csv.c_str() : nullptr;
}

size_t srs_result_rows(const srs_result* result) {
    return result ? result->rows : 0;
}

void srs_result_destroy(srs_result* result) {
    delete result;
}

}  // extern "C"
