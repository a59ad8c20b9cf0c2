/*
   Copyright 2026 rasense developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef RASENSE_RASENSE_H
#define RASENSE_RASENSE_H

/*
 * C interface to the rasense library. Every function returns a status code;
 * results come back through out-parameters. After a non-OK status,
 * rasense_last_error_message() describes the failure for the calling thread.
 * Strings returned by the library are released with rasense_string_free().
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RASENSE_BUILDING_LIBRARY)
#    define RASENSE_API __declspec(dllexport)
#  else
#    define RASENSE_API __declspec(dllimport)
#  endif
#else
#  define RASENSE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rasense_status {
    RASENSE_OK = 0,
    RASENSE_ERR_DOMAIN = 1,
    RASENSE_ERR_CONFIG = 2,
    RASENSE_ERR_NUMERIC = 3,
    RASENSE_ERR_IO = 4,
    RASENSE_ERR_INVALID_ARGUMENT = 5,
    RASENSE_ERR_INTERNAL = 6
} rasense_status;

typedef enum rasense_scheme_kind {
    RASENSE_NONCOOP = 0,
    RASENSE_COOP = 1,
    RASENSE_SWITCHING = 2,
    RASENSE_SELECTION = 3
} rasense_scheme_kind;

typedef enum rasense_hypothesis { RASENSE_H0 = 0, RASENSE_H1 = 1 } rasense_hypothesis;

typedef enum rasense_mode {
    RASENSE_MODE_ANALYTIC = 0,
    RASENSE_MODE_MC = 1,
    RASENSE_MODE_BOTH = 2
} rasense_mode;

typedef struct rasense_estimate {
    double value;
    double ci_halfwidth;
    uint64_t trials;
    uint64_t events;
    uint64_t seed;
} rasense_estimate;

typedef struct rasense_scheme rasense_scheme;     /* opaque */
typedef struct rasense_scenario rasense_scenario; /* opaque */

RASENSE_API const char* rasense_version(void);
RASENSE_API const char* rasense_last_error_message(void);
RASENSE_API const char* rasense_status_string(rasense_status status);
RASENSE_API void rasense_string_free(char* str);
/* Monte Carlo worker threads; 0 selects the hardware concurrency. */
RASENSE_API void rasense_set_threads(unsigned count);

/* Special functions */
RASENSE_API rasense_status rasense_reg_upper_gamma(double s, double x, double* out);
RASENSE_API rasense_status rasense_reg_lower_gamma(double s, double x, double* out);
RASENSE_API rasense_status rasense_inv_reg_upper_gamma(double s, double p, double* out);
RASENSE_API rasense_status rasense_bessel_k(unsigned order, double x, double* out);
RASENSE_API rasense_status rasense_harmonic(unsigned q, double* out);

/* Single-user detector */
RASENSE_API rasense_status rasense_calibrate_lambda(unsigned samples, double alpha, double* out);
RASENSE_API rasense_status rasense_pf_single(unsigned samples, double threshold, double* out);
RASENSE_API rasense_status rasense_pd_single(unsigned samples, double threshold, double gamma,
                                             double* out);
RASENSE_API rasense_status rasense_avg_pd_closed(unsigned samples, double threshold,
                                                 double avg_snr, double* out);
RASENSE_API rasense_status rasense_avg_pd_numeric(unsigned samples, double threshold,
                                                  double avg_snr, double* out);

/* Cooperative fusion */
RASENSE_API rasense_status rasense_local_pf_for_global(unsigned users, unsigned votes,
                                                       double alpha, double* out);
RASENSE_API rasense_status rasense_global_pf_from_local(unsigned users, unsigned votes,
                                                        double local_pf, double* out);

/* Reconfigurable antenna */
RASENSE_API rasense_status rasense_allocate_samples(unsigned samples, unsigned states,
                                                    unsigned* alloc_out, size_t alloc_len);
RASENSE_API rasense_status rasense_selection_gain_db(unsigned states, double* out);
RASENSE_API rasense_status rasense_reduced_samples(unsigned samples, unsigned states,
                                                   unsigned* out);

/* Schemes: calibrated at construction to P_F = alpha. `users` and `votes`
 * are used by RASENSE_COOP, `states` by the reconfigurable schemes. */
RASENSE_API rasense_status rasense_scheme_create(rasense_scheme_kind kind, unsigned users,
                                                 unsigned votes, unsigned samples,
                                                 unsigned states, double alpha,
                                                 rasense_scheme** out);
RASENSE_API void rasense_scheme_destroy(rasense_scheme* scheme);
RASENSE_API rasense_status rasense_scheme_threshold(const rasense_scheme* scheme, double* out);
RASENSE_API rasense_status rasense_scheme_analytic_pf(const rasense_scheme* scheme, double* out);
RASENSE_API rasense_status rasense_scheme_analytic_pmd(const rasense_scheme* scheme,
                                                       double avg_snr_db, double* out);
RASENSE_API rasense_status rasense_scheme_estimate(const rasense_scheme* scheme,
                                                   rasense_hypothesis hypothesis,
                                                   double avg_snr_db, uint64_t trials,
                                                   uint64_t seed, rasense_estimate* out);

/* Scenarios */
RASENSE_API rasense_status rasense_scenario_load(const char* path, rasense_scenario** out);
RASENSE_API rasense_status rasense_scenario_parse(const char* text, rasense_scenario** out);
RASENSE_API rasense_status rasense_scenario_default(rasense_scenario** out);
RASENSE_API void rasense_scenario_destroy(rasense_scenario* scenario);
RASENSE_API rasense_status rasense_scenario_set_seed(rasense_scenario* scenario, uint64_t seed);
RASENSE_API rasense_status rasense_scenario_set_trials(rasense_scenario* scenario,
                                                       uint64_t trials);
RASENSE_API rasense_status rasense_scenario_set_mode(rasense_scenario* scenario,
                                                     rasense_mode mode);
RASENSE_API rasense_status rasense_scenario_set_grid(rasense_scenario* scenario, double start_db,
                                                     double stop_db, double step_db);
/* Output path from the scenario file, or NULL when none was given. */
RASENSE_API const char* rasense_scenario_output(const rasense_scenario* scenario);

/* Commands. Reports are newly allocated strings; CSV goes to `out_path`. */
RASENSE_API rasense_status rasense_run_calibrate(const rasense_scenario* scenario, char** report);
RASENSE_API rasense_status rasense_run_calibrate_figure(const char* which, uint64_t seed,
                                                        char** report);
RASENSE_API rasense_status rasense_run_sweep(const rasense_scenario* scenario,
                                             const char* out_path);
RASENSE_API rasense_status rasense_run_figure(const rasense_scenario* settings, const char* which,
                                              const char* out_path);
RASENSE_API rasense_status rasense_run_slope(const rasense_scenario* scenario, char** report);

#ifdef __cplusplus
}
#endif

#endif /* RASENSE_RASENSE_H */
