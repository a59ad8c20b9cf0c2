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

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "rasense/rasense.h"

static int failures = 0;

#define EXPECT(cond)                                                          \
    do {                                                                      \
        if (!(cond)) {                                                        \
            fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                       \
        }                                                                     \
    } while (0)

#define EXPECT_OK(call) EXPECT((call) == RASENSE_OK)

static int near(double a, double b, double rel) { return fabs(a - b) <= rel * fabs(b); }

static void test_functions(void) {
    double v = 0.0;
    unsigned u = 0;
    unsigned alloc[3] = {0, 0, 0};

    EXPECT(strcmp(rasense_version(), "0.1.0") == 0);
    EXPECT(strcmp(rasense_status_string(RASENSE_ERR_NUMERIC), "numerical failure") == 0);

    EXPECT_OK(rasense_reg_upper_gamma(3.0, 1.0, &v));
    EXPECT(near(v, 0.919698602928605624, 1e-14));
    EXPECT_OK(rasense_reg_lower_gamma(3.0, 1.0, &v));
    EXPECT(near(v, 0.0803013970713941960, 1e-13));
    EXPECT_OK(rasense_inv_reg_upper_gamma(3.0, 0.919698602928605624, &v));
    EXPECT(near(v, 1.0, 1e-12));
    EXPECT_OK(rasense_bessel_k(1, 1.0, &v));
    EXPECT(near(v, 0.601907230197234575, 1e-13));
    EXPECT_OK(rasense_harmonic(10, &v));
    EXPECT(near(v, 2.92896825396825397, 1e-15));

    EXPECT_OK(rasense_calibrate_lambda(10, 0.05, &v));
    double pf = 0.0;
    EXPECT_OK(rasense_pf_single(10, v, &pf));
    EXPECT(near(pf, 0.05, 1e-10));
    double closed = 0.0, numeric = 0.0;
    EXPECT_OK(rasense_avg_pd_closed(10, v, 1e4, &closed));
    EXPECT_OK(rasense_avg_pd_numeric(10, v, 1e4, &numeric));
    EXPECT(near(closed, numeric, 1e-3));
    EXPECT_OK(rasense_pd_single(10, v, 0.0, &numeric));
    EXPECT(near(numeric, 0.05, 1e-10));

    EXPECT_OK(rasense_local_pf_for_global(10, 1, 0.05, &v));
    EXPECT_OK(rasense_global_pf_from_local(10, 1, v, &pf));
    EXPECT(near(pf, 0.05, 1e-12));

    EXPECT_OK(rasense_allocate_samples(7, 3, alloc, 3));
    EXPECT(alloc[0] == 3 && alloc[1] == 2 && alloc[2] == 2);
    EXPECT(rasense_allocate_samples(7, 3, alloc, 2) == RASENSE_ERR_INVALID_ARGUMENT);
    EXPECT_OK(rasense_selection_gain_db(10, &v));
    EXPECT(near(v, 4.667, 1e-3));
    EXPECT_OK(rasense_reduced_samples(100, 10, &u));
    EXPECT(u == 35);
}

static void test_errors(void) {
    double v = 0.0;
    EXPECT(rasense_reg_upper_gamma(-1.0, 1.0, &v) == RASENSE_ERR_DOMAIN);
    EXPECT(strlen(rasense_last_error_message()) > 0);
    EXPECT(rasense_calibrate_lambda(10, 1.5, &v) == RASENSE_ERR_DOMAIN);
    EXPECT(rasense_harmonic(3, NULL) == RASENSE_ERR_INVALID_ARGUMENT);
    EXPECT(rasense_reduced_samples(3, 5, (unsigned*)&v) == RASENSE_ERR_DOMAIN);
}

static void test_scheme(void) {
    rasense_scheme* s = NULL;
    rasense_estimate a, b;
    double v = 0.0;

    EXPECT(rasense_scheme_create(RASENSE_COOP, 2, 3, 4, 1, 0.05, &s) == RASENSE_ERR_DOMAIN);
    EXPECT(s == NULL);
    EXPECT(rasense_scheme_create((rasense_scheme_kind)9, 1, 1, 4, 1, 0.05, &s) ==
           RASENSE_ERR_INVALID_ARGUMENT);

    EXPECT_OK(rasense_scheme_create(RASENSE_SELECTION, 0, 0, 20, 4, 0.05, &s));
    EXPECT_OK(rasense_scheme_threshold(s, &v));
    EXPECT(v > 0.0);
    EXPECT_OK(rasense_scheme_analytic_pf(s, &v));
    EXPECT(near(v, 0.05, 1e-9));
    EXPECT_OK(rasense_scheme_analytic_pmd(s, 5.0, &v));
    EXPECT(v > 0.0 && v < 1.0);

    rasense_set_threads(1);
    EXPECT_OK(rasense_scheme_estimate(s, RASENSE_H1, 5.0, 50000, 7, &a));
    rasense_set_threads(4);
    EXPECT_OK(rasense_scheme_estimate(s, RASENSE_H1, 5.0, 50000, 7, &b));
    rasense_set_threads(0);
    EXPECT(a.events == b.events && a.trials == 50000 && a.seed == 7);
    EXPECT(fabs(a.value - v) <= 4.0 * sqrt(v * (1 - v) / 50000.0));
    EXPECT(rasense_scheme_estimate(s, RASENSE_H1, 5.0, 10, 7, &a) == RASENSE_ERR_DOMAIN);
    EXPECT(rasense_scheme_threshold(NULL, &v) == RASENSE_ERR_INVALID_ARGUMENT);
    rasense_scheme_destroy(s);
    rasense_scheme_destroy(NULL);
}

static void test_scenario(const char* dir) {
    rasense_scenario* sc = NULL;
    char* report = NULL;
    char path[1024];
    FILE* f;
    long size;

    EXPECT(rasense_scenario_parse("schema = rasense-scenario/1\n", &sc) == RASENSE_ERR_CONFIG);
    EXPECT(rasense_scenario_load("/nonexistent/rasense.txt", &sc) == RASENSE_ERR_IO);

    EXPECT_OK(rasense_scenario_parse("schema = rasense-scenario/1\nscheme = noncoop\nM = 10\n"
                                     "output = x.csv\n",
                                     &sc));
    EXPECT(strcmp(rasense_scenario_output(sc), "x.csv") == 0);
    EXPECT_OK(rasense_scenario_set_grid(sc, 0.0, 40.0, 2.0));
    EXPECT(rasense_scenario_set_grid(sc, 0.0, 40.0, -2.0) == RASENSE_ERR_CONFIG);
    EXPECT_OK(rasense_scenario_set_mode(sc, RASENSE_MODE_ANALYTIC));
    EXPECT_OK(rasense_scenario_set_trials(sc, 5000));
    EXPECT(rasense_scenario_set_trials(sc, 10) == RASENSE_ERR_CONFIG);
    EXPECT_OK(rasense_scenario_set_seed(sc, 3));

    EXPECT_OK(rasense_run_slope(sc, &report));
    EXPECT(report != NULL && strstr(report, "noncoop_M10") != NULL);
    rasense_string_free(report);

    snprintf(path, sizeof path, "%s/capi_sweep.csv", dir);
    EXPECT_OK(rasense_run_sweep(sc, path));
    f = fopen(path, "r");
    EXPECT(f != NULL);
    if (f) {
        fseek(f, 0, SEEK_END);
        size = ftell(f);
        fclose(f);
        EXPECT(size > 100);
        remove(path);
    }
    EXPECT(rasense_run_sweep(sc, "/nonexistent/dir/out.csv") == RASENSE_ERR_IO);

    EXPECT_OK(rasense_scenario_set_grid(sc, -20.0, -10.0, 1.0));
    EXPECT(rasense_run_slope(sc, &report) == RASENSE_ERR_NUMERIC);
    EXPECT(rasense_run_figure(sc, "fig9", path) == RASENSE_ERR_CONFIG);
    rasense_scenario_destroy(sc);

    EXPECT_OK(rasense_scenario_default(&sc));
    EXPECT(rasense_scenario_output(sc) == NULL);
    rasense_scenario_destroy(sc);
}

int main(int argc, char** argv) {
    test_functions();
    test_errors();
    test_scheme();
    test_scenario(argc > 1 ? argv[1] : ".");
    if (failures != 0) {
        fprintf(stderr, "%d C API expectation(s) failed\n", failures);
        return EXIT_FAILURE;
    }
    printf("C API: all expectations met\n");
    return EXIT_SUCCESS;
}
