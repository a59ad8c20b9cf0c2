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

// Command-line front end. Talks to the library only through rasense.h.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rasense/rasense.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

int exit_code(rasense_status status) {
    switch (status) {
    case RASENSE_OK: return kExitOk;
    case RASENSE_ERR_NUMERIC: return kExitNumeric;
    case RASENSE_ERR_DOMAIN:
    case RASENSE_ERR_CONFIG:
    case RASENSE_ERR_IO:
    case RASENSE_ERR_INVALID_ARGUMENT: return kExitConfig;
    case RASENSE_ERR_INTERNAL: return kExitInternal;
    }
    return kExitInternal;
}

int report_failure(rasense_status status) {
    std::fprintf(stderr, "rasense: %s: %s\n", rasense_status_string(status),
                 rasense_last_error_message());
    return exit_code(status);
}

struct ScenarioHandle {
    rasense_scenario* ptr = nullptr;
    ~ScenarioHandle() { rasense_scenario_destroy(ptr); }
};

struct RunFlags {
    std::string scenario;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<std::string> mode;
    std::string which;
};

rasense_status open_scenario(const RunFlags& flags, bool required, ScenarioHandle& sc) {
    rasense_status st = RASENSE_OK;
    if (!flags.scenario.empty())
        st = rasense_scenario_load(flags.scenario.c_str(), &sc.ptr);
    else if (required)
        st = rasense_scenario_parse("", &sc.ptr);
    else
        st = rasense_scenario_default(&sc.ptr);
    if (st != RASENSE_OK) return st;
    if (flags.seed && (st = rasense_scenario_set_seed(sc.ptr, *flags.seed)) != RASENSE_OK) return st;
    if (flags.trials && (st = rasense_scenario_set_trials(sc.ptr, *flags.trials)) != RASENSE_OK)
        return st;
    if (flags.mode) {
        const rasense_mode mode = *flags.mode == "analytic" ? RASENSE_MODE_ANALYTIC
                                  : *flags.mode == "mc"     ? RASENSE_MODE_MC
                                                            : RASENSE_MODE_BOTH;
        st = rasense_scenario_set_mode(sc.ptr, mode);
    }
    return st;
}

int print_report(rasense_status st, char* report) {
    if (report != nullptr) {
        std::fputs(report, stdout);
        rasense_string_free(report);
    }
    return st == RASENSE_OK ? kExitOk : report_failure(st);
}

int cmd_calibrate(const RunFlags& flags) {
    char* report = nullptr;
    if (!flags.which.empty()) {
        const auto st =
            rasense_run_calibrate_figure(flags.which.c_str(), flags.seed.value_or(1), &report);
        return print_report(st, report);
    }
    ScenarioHandle sc;
    if (const auto st = open_scenario(flags, true, sc); st != RASENSE_OK) return report_failure(st);
    const auto st = rasense_run_calibrate(sc.ptr, &report);
    return print_report(st, report);
}

int cmd_figure(const RunFlags& flags) {
    ScenarioHandle sc;
    if (const auto st = open_scenario(flags, false, sc); st != RASENSE_OK) return report_failure(st);
    const std::string out = flags.out.empty() ? flags.which + ".csv" : flags.out;
    if (const auto st = rasense_run_figure(sc.ptr, flags.which.c_str(), out.c_str());
        st != RASENSE_OK)
        return report_failure(st);
    std::printf("wrote %s\n", out.c_str());
    return kExitOk;
}

int cmd_sweep(const RunFlags& flags) {
    ScenarioHandle sc;
    if (const auto st = open_scenario(flags, true, sc); st != RASENSE_OK) return report_failure(st);
    std::string out = flags.out;
    if (out.empty()) {
        const char* from_file = rasense_scenario_output(sc.ptr);
        out = from_file != nullptr ? from_file : "sweep.csv";
    }
    if (const auto st = rasense_run_sweep(sc.ptr, out.c_str()); st != RASENSE_OK)
        return report_failure(st);
    std::printf("wrote %s\n", out.c_str());
    return kExitOk;
}

int cmd_slope(const RunFlags& flags) {
    ScenarioHandle sc;
    if (const auto st = open_scenario(flags, true, sc); st != RASENSE_OK) return report_failure(st);
    char* report = nullptr;
    const auto st = rasense_run_slope(sc.ptr, &report);
    return print_report(st, report);
}

void add_run_flags(CLI::App* cmd, RunFlags& flags) {
    cmd->add_option("--seed", flags.seed, "Base seed of the Monte Carlo streams");
    cmd->add_option("--trials", flags.trials, "Trials per point before escalation")
        ->check(CLI::Range(std::uint64_t{1000}, std::uint64_t{1'000'000'000'000}));
    cmd->add_option("--mode", flags.mode, "Which columns to compute")
        ->check(CLI::IsMember({"analytic", "mc", "both"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectrum sensing with reconfigurable antennas: calibration, sweeps and slopes"};
    app.set_version_flag("--version", std::string(rasense_version()));
    app.require_subcommand(1);

    RunFlags flags;
    unsigned threads = 0;
    app.add_option("--threads", threads, "Monte Carlo worker threads (0: all cores)");

    auto* calibrate = app.add_subcommand("calibrate", "Print thresholds and check empirical P_F");
    calibrate->add_option("--scenario", flags.scenario, "Scenario file")->check(CLI::ExistingFile);
    calibrate->add_option("--which", flags.which, "Calibrate every scheme of a figure instead")
        ->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
    calibrate->add_option("--seed", flags.seed, "Seed of the smoke run");

    auto* figure = app.add_subcommand("figure", "Write the CSV of a figure");
    figure->add_option("--which", flags.which, "Figure to reproduce")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
    figure->add_option("--scenario", flags.scenario, "Scenario providing grid, trials, seed, mode")
        ->check(CLI::ExistingFile);
    figure->add_option("--out", flags.out, "Output CSV (default <which>.csv)");
    add_run_flags(figure, flags);

    auto* sweep = app.add_subcommand("sweep", "Sweep one scenario over its SNR grid");
    sweep->add_option("--scenario", flags.scenario, "Scenario file")
        ->required()
        ->check(CLI::ExistingFile);
    sweep->add_option("--out", flags.out, "Output CSV (default: scenario output, else sweep.csv)");
    add_run_flags(sweep, flags);

    auto* slope = app.add_subcommand("slope", "Fit the high-SNR diversity slope");
    slope->add_option("--scenario", flags.scenario, "Scenario file")
        ->required()
        ->check(CLI::ExistingFile);
    add_run_flags(slope, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    rasense_set_threads(threads);
    if (calibrate->parsed()) {
        if (flags.scenario.empty() && flags.which.empty()) {
            std::fprintf(stderr, "rasense: calibrate needs --scenario or --which\n");
            return kExitConfig;
        }
        return cmd_calibrate(flags);
    }
    if (figure->parsed()) return cmd_figure(flags);
    if (sweep->parsed()) return cmd_sweep(flags);
    return cmd_slope(flags);
}
