/*
 * srsense - stochastic-resonance pre-treated spectrum sensing, C API.
 *
 * The library simulates weak-tone detection in white gaussian noise with an
 * optional bistable (double-well) pre-filter in front of an FFT energy
 * detector, and runs seeded Monte Carlo experiments (PSD comparison, noise
 * tuning, ROC curves, detection-probability-vs-window and sequential
 * detection delay) that emit CSV tables.
 *
 * All functions returning srs_status leave a human-readable message for the
 * calling thread in srs_last_error() on failure. Handles are opaque; every
 * *_create/_load has a matching *_destroy.
 */

#ifndef SRSENSE_H
#define SRSENSE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SRSENSE_API __declspec(dllexport)
#else
#define SRSENSE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum srs_status {
    SRS_OK = 0,
    SRS_ERR_INVALID_ARGUMENT = 1, /* bad parameter or precondition */
    SRS_ERR_CONFIG = 2,           /* unreadable or malformed configuration */
    SRS_ERR_RUNTIME = 3           /* failure while running (e.g. divergence) */
} srs_status;

SRSENSE_API const char* srs_version(void);
SRSENSE_API const char* srs_status_name(srs_status status);
/* Message for the most recent failure on this thread; empty string if none. */
SRSENSE_API const char* srs_last_error(void);

/* ---- closed-form double-well diagnostics ------------------------------- */

/* V(x) = -(a/2) x^2 + (b/4) x^4 */
SRSENSE_API double srs_potential(double x, double a, double b);
SRSENSE_API srs_status srs_stable_points(double a, double b, double* x_minus,
                                         double* x_plus, double* x_barrier);
SRSENSE_API srs_status srs_barrier_height(double a, double b, double* out);
/* (a / (sqrt(2) pi)) exp(-barrier / noise_intensity) */
SRSENSE_API srs_status srs_kramers_rate(double a, double b, double noise_intensity,
                                        double* out);
/* 10 log10((amplitude^2/2) / noise_variance) */
SRSENSE_API srs_status srs_input_snr_db(double amplitude, double noise_variance,
                                        double* out);

/* ---- streaming building blocks ----------------------------------------- */

/*
 * Runs the bistable filter dx/dt = a x - b x^3 + u + eta over the input
 * samples (held constant across substeps_per_sample Euler-Maruyama substeps
 * of size step_h) and writes n - discard_transient output samples. Pass
 * initial_x = NAN to start at the +sqrt(a/b) stable point. `seed` drives the
 * internally injected noise of intensity added_noise_d.
 */
SRSENSE_API srs_status srs_sr_filter(const double* input, size_t n, double a, double b,
                                     double step_h, int substeps_per_sample,
                                     double added_noise_d, double initial_x,
                                     size_t discard_transient, uint64_t seed,
                                     double* output);

/*
 * One-sided periodogram of a power-of-two block: nfft/2 + 1 entries such
 * that their sum equals the mean square of the block.
 */
SRSENSE_API srs_status srs_periodogram(const double* block, size_t nfft,
                                       double sample_rate_hz, double* power);

/* ---- experiments -------------------------------------------------------- */

typedef struct srs_config srs_config;
typedef struct srs_result srs_result;

SRSENSE_API srs_status srs_config_create(srs_config** out);
SRSENSE_API srs_status srs_config_load(const char* path, srs_config** out);
SRSENSE_API srs_status srs_config_parse(const char* text, srs_config** out);
SRSENSE_API srs_status srs_config_set(srs_config* cfg, const char* key,
                                      const char* value);
/* NULL when the key is absent. The pointer is valid until the next set/destroy. */
SRSENSE_API const char* srs_config_get(const srs_config* cfg, const char* key);
SRSENSE_API void srs_config_destroy(srs_config* cfg);

/*
 * Runs the experiment selected by the config's `kind` key. `threads` caps
 * worker parallelism (0 = SRSENSE_THREADS env var or hardware default); the
 * emitted CSV is byte-identical for every thread count.
 */
SRSENSE_API srs_status srs_run(const srs_config* cfg, int threads, srs_result** out);
SRSENSE_API const char* srs_result_csv(const srs_result* result);
SRSENSE_API size_t srs_result_rows(const srs_result* result);
SRSENSE_API void srs_result_destroy(srs_result* result);

#ifdef __cplusplus
}
#endif

#endif /* SRSENSE_H */
