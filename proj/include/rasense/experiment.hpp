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

#pragma once

// Experiment drivers behind the command-line tool: calibration checks, the
// three figure sweeps, single-scenario sweeps and diversity-slope reports.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rasense/scenario.hpp"
#include "rasense/simkit.hpp"

namespace rasense::experiment {

enum class Figure { fig1, fig2, fig3 };

Figure parse_figure(std::string_view text);

/// NP level used by a figure: 0.01 for fig1, 0.05 otherwise.
double figure_alpha(Figure which) noexcept;

/// Calibrated configurations in CSV order.
std::vector<simkit::SchemeConfig> figure_configs(Figure which);

inline constexpr std::string_view kCsvHeader =
    "scheme,snr_db,pf_analytic,pmd_analytic,pf_mc,pf_ci,pmd_mc,pmd_ci,trials,seed";

/// Appends one row per grid point; columns that were not computed stay blank.
void append_csv(std::string& out, const simkit::SweepCurve& curve);
std::string to_csv(std::span<const simkit::SweepCurve> curves);

std::vector<simkit::SweepCurve> run_figure(Figure which, std::span<const double> grid_db,
                                           const simkit::SweepOptions& options);

/// Figure sweep using the grid, trials, seed and mode of `settings`.
std::string figure_csv(Figure which, const scenario::Scenario& settings);
std::string sweep_csv(const scenario::Scenario& sc);

struct CalibrationRow {
    std::string label;
    double alpha = 0.0;
    double threshold = 0.0;
    std::optional<double> local_pf; ///< per-user P_F for cooperation
    double pf_analytic = 0.0;
    simkit::McEstimate pf_mc;
    bool ok = false; ///< analytic P_F hits alpha and the smoke run agrees
};

inline constexpr std::uint64_t kSmokeTrials = 100'000;

CalibrationRow calibrate(const simkit::SchemeConfig& config, std::uint64_t smoke_trials,
                         std::uint64_t seed);
std::string format_calibration(std::span<const CalibrationRow> rows);

struct SlopeReport {
    std::string label;
    double analytic_diversity = 0.0;
    std::optional<simkit::SlopeFit> mc_fit;
    std::optional<simkit::SlopeFit> analytic_fit;
};

/// Sweeps the scenario and fits the slope where P_md lies in [1e-5, 1e-2].
SlopeReport slope(const scenario::Scenario& sc);
std::string format_slope(const SlopeReport& report);

} // namespace rasense::experiment
