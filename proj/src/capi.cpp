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

#include "rasense/rasense.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "rasense/error.hpp"
#include "rasense/experiment.hpp"
#include "rasense/scenario.hpp"
#include "rasense/simkit.hpp"
#include "rasense/specfun.hpp"

struct rasense_scheme {
    rasense::simkit::SchemeConfig config;
};

struct rasense_scenario {
    rasense::scenario::Scenario value;
};

namespace {

thread_local std::string g_last_error;

rasense_status fail(rasense_status status, const char* message) {
    g_last_error = message;
    return status;
}

// Runs `body`, mapping library exceptions onto status codes.
template <typename F>
rasense_status guarded(F&& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const rasense::DomainError& e) {
        return fail(RASENSE_ERR_DOMAIN, e.what());
    } catch (const rasense::ConfigError& e) {
        return fail(RASENSE_ERR_CONFIG, e.what());
    } catch (const rasense::NumericalError& e) {
        return fail(RASENSE_ERR_NUMERIC, e.what());
    } catch (const rasense::IoError& e) {
        return fail(RASENSE_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(RASENSE_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(RASENSE_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(RASENSE_ERR_INTERNAL, "unknown error");
    }
}

#define RASENSE_REQUIRE(ptr)                                                                  \
    do {                                                                                      \
        if ((ptr) == nullptr) return fail(RASENSE_ERR_INVALID_ARGUMENT, #ptr " is NULL");    \
    } while (0)

char* duplicate(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void write_file(const char* path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw rasense::IoError(std::string("cannot open '") + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw rasense::IoError(std::string("write to '") + path + "' failed");
}

template <typename F>
rasense_status scalar(double* out, F&& f) {
    RASENSE_REQUIRE(out);
    return guarded([&] {
        *out = f();
        return RASENSE_OK;
    });
}

} // namespace

extern "C" {

const char* rasense_version(void) { return "0.1.0"; }

void rasense_set_threads(unsigned count) { rasense::simkit::set_worker_threads(count); }

const char* rasense_last_error_message(void) { return g_last_error.c_str(); }

const char* rasense_status_string(rasense_status status) {
    switch (status) {
    case RASENSE_OK: return "ok";
    case RASENSE_ERR_DOMAIN: return "domain error";
    case RASENSE_ERR_CONFIG: return "configuration error";
    case RASENSE_ERR_NUMERIC: return "numerical failure";
    case RASENSE_ERR_IO: return "I/O error";
    case RASENSE_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RASENSE_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void rasense_string_free(char* str) { std::free(str); }

rasense_status rasense_reg_upper_gamma(double s, double x, double* out) {
    return scalar(out, [&] { return rasense::specfun::reg_upper_gamma(s, x); });
}

rasense_status rasense_reg_lower_gamma(double s, double x, double* out) {
    return scalar(out, [&] { return rasense::specfun::reg_lower_gamma(s, x); });
}

rasense_status rasense_inv_reg_upper_gamma(double s, double p, double* out) {
    return scalar(out, [&] { return rasense::specfun::inv_reg_upper_gamma(s, p); });
}

rasense_status rasense_bessel_k(unsigned order, double x, double* out) {
    return scalar(out, [&] { return rasense::specfun::bessel_k_int(static_cast<int>(order), x); });
}

rasense_status rasense_harmonic(unsigned q, double* out) {
    return scalar(out, [&] { return rasense::specfun::harmonic(q); });
}

rasense_status rasense_calibrate_lambda(unsigned samples, double alpha, double* out) {
    return scalar(out, [&] { return rasense::detector::calibrate_lambda(samples, alpha); });
}

rasense_status rasense_pf_single(unsigned samples, double threshold, double* out) {
    return scalar(out, [&] { return rasense::detector::pf_single(samples, threshold); });
}

rasense_status rasense_pd_single(unsigned samples, double threshold, double gamma, double* out) {
    return scalar(out, [&] { return rasense::detector::pd_single(samples, threshold, gamma); });
}

rasense_status rasense_avg_pd_closed(unsigned samples, double threshold, double avg_snr,
                                     double* out) {
    return scalar(out, [&] {
        return rasense::detector::avg_pd_closed(samples, threshold,
                                                rasense::channel::AvgSnr(avg_snr));
    });
}

rasense_status rasense_avg_pd_numeric(unsigned samples, double threshold, double avg_snr,
                                      double* out) {
    return scalar(out, [&] {
        return rasense::detector::avg_pd_numeric(samples, threshold,
                                                 rasense::channel::AvgSnr(avg_snr));
    });
}

rasense_status rasense_local_pf_for_global(unsigned users, unsigned votes, double alpha,
                                           double* out) {
    return scalar(out, [&] { return rasense::fusion::local_pf_for_global(users, votes, alpha); });
}

rasense_status rasense_global_pf_from_local(unsigned users, unsigned votes, double local_pf,
                                            double* out) {
    return scalar(out,
                  [&] { return rasense::fusion::global_pf_from_local(users, votes, local_pf); });
}

rasense_status rasense_allocate_samples(unsigned samples, unsigned states, unsigned* alloc_out,
                                        size_t alloc_len) {
    RASENSE_REQUIRE(alloc_out);
    return guarded([&] {
        const auto alloc = rasense::reconfig::allocate_samples(samples, states);
        if (alloc.size() > alloc_len)
            return fail(RASENSE_ERR_INVALID_ARGUMENT, "allocation buffer too small");
        for (std::size_t i = 0; i < alloc_len; ++i) alloc_out[i] = i < alloc.size() ? alloc[i] : 0;
        return RASENSE_OK;
    });
}

rasense_status rasense_selection_gain_db(unsigned states, double* out) {
    return scalar(out, [&] { return rasense::reconfig::selection_gain(states).db; });
}

rasense_status rasense_reduced_samples(unsigned samples, unsigned states, unsigned* out) {
    RASENSE_REQUIRE(out);
    return guarded([&] {
        *out = rasense::reconfig::reduced_samples(samples, states);
        return RASENSE_OK;
    });
}

rasense_status rasense_scheme_create(rasense_scheme_kind kind, unsigned users, unsigned votes,
                                     unsigned samples, unsigned states, double alpha,
                                     rasense_scheme** out) {
    RASENSE_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        using namespace rasense;
        const channel::AvgSnr avg{1.0};
        simkit::SchemeConfig config{detector::DetectorParams{}, avg};
        switch (kind) {
        case RASENSE_NONCOOP:
            config.payload = detector::DetectorParams::calibrated(samples, alpha);
            break;
        case RASENSE_COOP:
            config.payload = fusion::FusionParams::calibrated(users, votes, samples, alpha);
            break;
        case RASENSE_SWITCHING:
            config.payload = reconfig::ReconfigParams::calibrated(states, samples, alpha,
                                                                  reconfig::CsiMode::switching);
            break;
        case RASENSE_SELECTION:
            config.payload = reconfig::ReconfigParams::calibrated(states, samples, alpha,
                                                                  reconfig::CsiMode::selection);
            break;
        default: return fail(RASENSE_ERR_INVALID_ARGUMENT, "unknown scheme kind");
        }
        *out = new rasense_scheme{std::move(config)};
        return RASENSE_OK;
    });
}

void rasense_scheme_destroy(rasense_scheme* scheme) { delete scheme; }

rasense_status rasense_scheme_threshold(const rasense_scheme* scheme, double* out) {
    RASENSE_REQUIRE(scheme);
    return scalar(out, [&] {
        return std::visit(
            [](const auto& p) -> double {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, rasense::fusion::FusionParams>)
                    return p.per_user.threshold;
                else
                    return p.threshold;
            },
            scheme->config.payload);
    });
}

rasense_status rasense_scheme_analytic_pf(const rasense_scheme* scheme, double* out) {
    RASENSE_REQUIRE(scheme);
    return scalar(out, [&] { return rasense::simkit::analytic_pf(scheme->config); });
}

rasense_status rasense_scheme_analytic_pmd(const rasense_scheme* scheme, double avg_snr_db,
                                           double* out) {
    RASENSE_REQUIRE(scheme);
    return scalar(out, [&] {
        return rasense::simkit::analytic_pmd(
            scheme->config.with_snr(rasense::channel::AvgSnr::from_db(avg_snr_db)));
    });
}

rasense_status rasense_scheme_estimate(const rasense_scheme* scheme, rasense_hypothesis hypothesis,
                                       double avg_snr_db, uint64_t trials, uint64_t seed,
                                       rasense_estimate* out) {
    RASENSE_REQUIRE(scheme);
    RASENSE_REQUIRE(out);
    return guarded([&] {
        using rasense::simkit::Hypothesis;
        const auto config = scheme->config.with_snr(rasense::channel::AvgSnr::from_db(avg_snr_db));
        const auto est = rasense::simkit::estimate_point(
            config, hypothesis == RASENSE_H0 ? Hypothesis::h0 : Hypothesis::h1, trials, seed);
        *out = {est.value, est.ci_halfwidth, est.trials, est.events, est.seed};
        return RASENSE_OK;
    });
}

rasense_status rasense_scenario_load(const char* path, rasense_scenario** out) {
    RASENSE_REQUIRE(path);
    RASENSE_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        *out = new rasense_scenario{rasense::scenario::load(path)};
        return RASENSE_OK;
    });
}

rasense_status rasense_scenario_parse(const char* text, rasense_scenario** out) {
    RASENSE_REQUIRE(text);
    RASENSE_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        *out = new rasense_scenario{rasense::scenario::parse(text)};
        return RASENSE_OK;
    });
}

rasense_status rasense_scenario_default(rasense_scenario** out) {
    RASENSE_REQUIRE(out);
    return guarded([&] {
        *out = new rasense_scenario{};
        return RASENSE_OK;
    });
}

void rasense_scenario_destroy(rasense_scenario* scenario) { delete scenario; }

rasense_status rasense_scenario_set_seed(rasense_scenario* scenario, uint64_t seed) {
    RASENSE_REQUIRE(scenario);
    scenario->value.seed = seed;
    return RASENSE_OK;
}

rasense_status rasense_scenario_set_trials(rasense_scenario* scenario, uint64_t trials) {
    RASENSE_REQUIRE(scenario);
    if (trials < 1000) return fail(RASENSE_ERR_CONFIG, "trials must be at least 1000");
    scenario->value.trials = trials;
    if (scenario->value.trial_cap < trials) scenario->value.trial_cap = trials;
    return RASENSE_OK;
}

rasense_status rasense_scenario_set_mode(rasense_scenario* scenario, rasense_mode mode) {
    RASENSE_REQUIRE(scenario);
    using rasense::scenario::RunMode;
    switch (mode) {
    case RASENSE_MODE_ANALYTIC: scenario->value.mode = RunMode::analytic; break;
    case RASENSE_MODE_MC: scenario->value.mode = RunMode::mc; break;
    case RASENSE_MODE_BOTH: scenario->value.mode = RunMode::both; break;
    default: return fail(RASENSE_ERR_INVALID_ARGUMENT, "unknown mode");
    }
    return RASENSE_OK;
}

rasense_status rasense_scenario_set_grid(rasense_scenario* scenario, double start_db,
                                         double stop_db, double step_db) {
    RASENSE_REQUIRE(scenario);
    return guarded([&] {
        auto copy = scenario->value;
        copy.snr_start_db = start_db;
        copy.snr_stop_db = stop_db;
        copy.snr_step_db = step_db;
        copy.validate();
        scenario->value = copy;
        return RASENSE_OK;
    });
}

const char* rasense_scenario_output(const rasense_scenario* scenario) {
    if (scenario == nullptr || scenario->value.output.empty()) return nullptr;
    return scenario->value.output.c_str();
}

rasense_status rasense_run_calibrate(const rasense_scenario* scenario, char** report) {
    RASENSE_REQUIRE(scenario);
    RASENSE_REQUIRE(report);
    *report = nullptr;
    return guarded([&] {
        const auto& sc = scenario->value;
        const auto row = rasense::experiment::calibrate(sc.scheme_config(),
                                                        rasense::experiment::kSmokeTrials, sc.seed);
        *report = duplicate(rasense::experiment::format_calibration({&row, 1}));
        if (!row.ok) return fail(RASENSE_ERR_NUMERIC, "calibration check failed");
        return RASENSE_OK;
    });
}

rasense_status rasense_run_calibrate_figure(const char* which, uint64_t seed, char** report) {
    RASENSE_REQUIRE(which);
    RASENSE_REQUIRE(report);
    *report = nullptr;
    return guarded([&] {
        namespace ex = rasense::experiment;
        std::vector<ex::CalibrationRow> rows;
        bool ok = true;
        for (const auto& config : ex::figure_configs(ex::parse_figure(which))) {
            rows.push_back(ex::calibrate(config, ex::kSmokeTrials, seed));
            ok = ok && rows.back().ok;
        }
        *report = duplicate(ex::format_calibration(rows));
        if (!ok) return fail(RASENSE_ERR_NUMERIC, "calibration check failed");
        return RASENSE_OK;
    });
}

rasense_status rasense_run_sweep(const rasense_scenario* scenario, const char* out_path) {
    RASENSE_REQUIRE(scenario);
    RASENSE_REQUIRE(out_path);
    return guarded([&] {
        write_file(out_path, rasense::experiment::sweep_csv(scenario->value));
        return RASENSE_OK;
    });
}

rasense_status rasense_run_figure(const rasense_scenario* settings, const char* which,
                                  const char* out_path) {
    RASENSE_REQUIRE(settings);
    RASENSE_REQUIRE(which);
    RASENSE_REQUIRE(out_path);
    return guarded([&] {
        namespace ex = rasense::experiment;
        write_file(out_path, ex::figure_csv(ex::parse_figure(which), settings->value));
        return RASENSE_OK;
    });
}

rasense_status rasense_run_slope(const rasense_scenario* scenario, char** report) {
    RASENSE_REQUIRE(scenario);
    RASENSE_REQUIRE(report);
    *report = nullptr;
    return guarded([&] {
        namespace ex = rasense::experiment;
        *report = duplicate(ex::format_slope(ex::slope(scenario->value)));
        return RASENSE_OK;
    });
}

} // extern "C"
