/* C interface to the interfero phase retrieval library. */
#ifndef INTERFERO_H
#define INTERFERO_H

#include <stddef.h>
#include <stdint.h>

#if defined(INTERFERO_BUILDING_LIBRARY)
#define INTERFERO_API __attribute__((visibility("default")))
#else
#define INTERFERO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; the nonzero values are also the CLI exit codes. */
typedef enum interfero_status {
    INTERFERO_OK = 0,
    INTERFERO_ERR_USAGE = 1,
    INTERFERO_ERR_MALFORMED = 2,
    INTERFERO_ERR_ADMISSIBILITY = 3,
    INTERFERO_ERR_NUMERICAL = 4
} interfero_status;

typedef struct interfero_signal interfero_signal;
typedef struct interfero_measurement interfero_measurement;

/* Message of the last failed call on this thread ("" if none). */
INTERFERO_API const char* interfero_last_error(void);
INTERFERO_API const char* interfero_version(void);

/* Strings returned through char** are owned by the caller. */
INTERFERO_API void interfero_string_free(char* s);

/* Signals ----------------------------------------------------------------- */

INTERFERO_API interfero_status interfero_signal_create(int offset, const double* re, const double* im,
                                                       size_t n, interfero_signal** out);
INTERFERO_API interfero_status interfero_signal_from_json(const char* text, interfero_signal** out);
INTERFERO_API interfero_status interfero_signal_to_json(const interfero_signal* x, char** out);
INTERFERO_API void interfero_signal_free(interfero_signal* x);

INTERFERO_API int interfero_signal_offset(const interfero_signal* x);
INTERFERO_API size_t interfero_signal_length(const interfero_signal* x);
/* Copies min(length, cap) coefficients. */
INTERFERO_API interfero_status interfero_signal_coeffs(const interfero_signal* x, double* re, double* im,
                                                       size_t cap);

/* Complex Gaussian coefficients, endpoints of magnitude >= 0.1. */
INTERFERO_API interfero_status interfero_random_signal(int n, uint64_t seed, int offset_range,
                                                       interfero_signal** out);

/* Measurements ------------------------------------------------------------ */

INTERFERO_API interfero_status interfero_measurement_from_json(const char* text,
                                                               interfero_measurement** out);
INTERFERO_API interfero_status interfero_measurement_to_json(const interfero_measurement* m, char** out);
INTERFERO_API void interfero_measurement_free(interfero_measurement* m);

INTERFERO_API size_t interfero_measurement_value_count(const interfero_measurement* m);
INTERFERO_API size_t interfero_measurement_grid_size(const interfero_measurement* m);
INTERFERO_API size_t interfero_measurement_channel_count(const interfero_measurement* m);

typedef struct interfero_sim_config {
    const char* mode; /* polarization | two-rotation | known-ref | unknown-ref */
    int k_channels;
    double alpha1;
    double alpha2;
    double mu; /* 0 selects the default modulation */
    double noise;
    uint64_t seed;
    const interfero_signal* reference; /* required by the reference modes */
} interfero_sim_config;

INTERFERO_API void interfero_sim_config_default(interfero_sim_config* cfg);
INTERFERO_API interfero_status interfero_simulate(const interfero_signal* x, const interfero_sim_config* cfg,
                                                  interfero_measurement** out);

/* Reconstruction ---------------------------------------------------------- */

/* mode may be NULL to infer it from the measurement set. window is the
 * support window for known-reference recovery (0: grid-derived bound).
 * tolerances is a "key=value,..." override on top of INTERFERO_TOL, or NULL.
 * truth may be NULL; when given, the report compares against it.
 * On success *result holds {"mode", "signals": [...], "pairs": [...],
 * "report": {...}}. */
INTERFERO_API interfero_status interfero_reconstruct(const interfero_measurement* m, const char* mode,
                                                     int window, const char* tolerances,
                                                     const interfero_signal* truth, char** result);

/* input_json is a signal record or {"intensity": ...}. */
INTERFERO_API interfero_status interfero_enumerate(const char* input_json, int max_n, const char* tolerances,
                                                   char** result);

typedef struct interfero_report {
    int success;
    double rotation;
    double max_err;
    int n0;
    interfero_status status; /* pipeline error class, INTERFERO_OK if none */
    size_t values_consumed;
    char message[256];
} interfero_report;

/* simulate -> reconstruct -> compare. Pipeline failures are reported in
 * *out; the return value is nonzero only for invalid arguments. */
INTERFERO_API interfero_status interfero_roundtrip(const interfero_signal* x, const interfero_sim_config* cfg,
                                                   int window, const char* tolerances,
                                                   interfero_report* out);

/* True iff dist(q mu / 2pi, Z) > tol for q = 1..n-1. */
INTERFERO_API int interfero_check_mu(double mu, int n, double tol);
INTERFERO_API double interfero_default_mu(void);

#ifdef __cplusplus
}
#endif

#endif
