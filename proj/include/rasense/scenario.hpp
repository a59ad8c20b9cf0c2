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

// Flat key = value scenario files (schema "rasense-scenario/1"). See
// docs/scenario-format.md for the key reference.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rasense/simkit.hpp"

namespace rasense::scenario {

inline constexpr std::string_view kSchema = "rasense-scenario/1";

enum class RunMode { analytic, mc, both };

const char* to_string(RunMode mode) noexcept;
RunMode parse_mode(std::string_view text);
simkit::Scheme parse_scheme(std::string_view text);

struct Scenario {
    simkit::Scheme scheme = simkit::Scheme::noncoop;
    unsigned users = 1;   // N
    unsigned votes = 1;   // n
    unsigned samples = 1; // M
    unsigned states = 1;  // Q
    double alpha = 0.05;
    double snr_start_db = -20.0;
    double snr_stop_db = 20.0;
    double snr_step_db = 1.0;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    std::string output;
    RunMode mode = RunMode::both;
    bool escalate = true;
    std::uint64_t trial_cap = 100'000'000;

    void validate() const;
    std::vector<double> grid() const;
    /// Calibrated scheme configuration at the first grid SNR.
    simkit::SchemeConfig scheme_config() const;
    simkit::SweepOptions sweep_options() const;
};

/// Throws ConfigError on unknown, duplicate or malformed keys and on a
/// missing schema or scheme.
Scenario parse(std::string_view text);
Scenario load(const std::filesystem::path& path);
std::string to_text(const Scenario& scenario);

} // namespace rasense::scenario
